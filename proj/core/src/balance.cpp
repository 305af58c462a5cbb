#include "qdb/balance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdb/error.hpp"

namespace qdb {

namespace {

void require_dim(const WeightedSpace& space, const ComplexMatrix& a) {
    if (a.rows() != space.dim() || a.cols() != space.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operator does not live in the weighted space");
    }
}

void require_dim(const WeightedSpace& space, const SuperOperator& op) {
    if (op.dim() != space.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "superoperator does not act on the weighted space");
    }
}

} // namespace

WeightedSpace::WeightedSpace(DensityMatrix sigma, double s) : sigma_(std::move(sigma)), s_(s) {
    if (!(s_ >= 0.0 && s_ <= 1.0)) {
        throw Error(ErrorKind::InvalidParameter, "s must lie in [0, 1]");
    }
    eig_ = herm_eig(sigma_.matrix(), DensityMatrix::kTol);
    if (!(eig_.values(0) > 1e-12)) {
        throw Error(ErrorKind::SingularWeight,
                    "reference state has eigenvalue " + std::to_string(eig_.values(0)));
    }
    weight_ = kron(sigma_power(1.0 - s_).transpose(), sigma_power(s_));
    weight_inverse_ = kron(sigma_power(s_ - 1.0).transpose(), sigma_power(-s_));
}

ComplexMatrix WeightedSpace::sigma_power(double p) const {
    RealVector f(eig_.values.size());
    for (Eigen::Index k = 0; k < f.size(); ++k) {
        f(k) = p == 0.0 ? 1.0 : std::pow(eig_.values(k), p);
    }
    return eig_.vectors * f.cast<Complex>().asDiagonal() * eig_.vectors.adjoint();
}

Complex inner(const WeightedSpace& space, const ComplexMatrix& a, const ComplexMatrix& b) {
    require_dim(space, a);
    require_dim(space, b);
    const double s = space.s();
    return (space.sigma_power(1.0 - s) * a.adjoint() * space.sigma_power(s) * b).trace();
}

SuperOperator adjoint(const WeightedSpace& space, const SuperOperator& op) {
    require_dim(space, op);
    return {space.weight_inverse() * op.matrix().adjoint() * space.weight(), op.picture()};
}

GeneratorParts decompose(const WeightedSpace& space, const SuperOperator& dual_generator) {
    const SuperOperator star = adjoint(space, dual_generator);
    return {Complex(0.5) * (dual_generator - star), Complex(0.5) * (dual_generator + star)};
}

QdbReport check_qdb1(const WeightedSpace& space, const SuperOperator& dual_generator,
                     const ComplexMatrix& hamiltonian, double tol) {
    require_dim(space, dual_generator);
    if (dual_generator.picture() != Picture::Heisenberg) {
        throw Error(ErrorKind::WrongPicture, "the first QDB condition needs the dual generator");
    }
    const SuperOperator star = adjoint(space, dual_generator);
    const SuperOperator comm = commutator_superop(hamiltonian, Picture::Heisenberg);
    const ComplexMatrix diff =
        dual_generator.matrix() - star.matrix() - 2.0 * kI * comm.matrix();
    const double scale = frobenius_norm(dual_generator.matrix());
    QdbReport report;
    report.residual = scale > 0.0 ? frobenius_norm(diff) / scale : frobenius_norm(diff);
    report.passes = report.residual < tol;
    return report;
}

QdbReport check_qdb1(const WeightedSpace& space, const LindbladGenerator& gen, double tol) {
    return check_qdb1(space, dual_superop(gen), gen.hamiltonian().matrix(), tol);
}

std::vector<QdbSweepEntry> check_qdb1_sweep(const DensityMatrix& sigma,
                                            const SuperOperator& dual_generator,
                                            const ComplexMatrix& hamiltonian,
                                            const std::vector<double>& s_grid, double tol) {
    std::vector<QdbSweepEntry> out;
    out.reserve(s_grid.size());
    for (double s : s_grid) {
        const WeightedSpace space(sigma, s);
        out.push_back({s, check_qdb1(space, dual_generator, hamiltonian, tol)});
    }
    return out;
}

double check_qdb1_invariance(const WeightedSpace& space, const SuperOperator& generator) {
    require_dim(space, generator);
    return frobenius_norm(generator.schrodinger()(space.sigma().matrix()));
}

double check_qdb1_invariance(const WeightedSpace& space, const LindbladGenerator& gen) {
    return check_qdb1_invariance(space, lindblad_superop(gen));
}

double fixed_point_residual(const DynamicalMap& map, const DensityMatrix& sigma) {
    const SuperOperator s = as_superop(map);
    if (s.dim() != sigma.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "map and state dimensions differ");
    }
    return frobenius_norm(s(sigma.matrix()) - sigma.matrix());
}

TimeReversal::TimeReversal(Kind kind, ComplexMatrix u) : kind_(kind), u_(std::move(u)) {}

namespace {

void require_unitary(const ComplexMatrix& u, const char* what) {
    require_square(u, what);
    if (max_abs(u.adjoint() * u - identity(u.rows())) > 1e-12) {
        throw Error(ErrorKind::InvalidTimeReversal, std::string(what) + " is not unitary");
    }
}

} // namespace

TimeReversal TimeReversal::conjugation(const ComplexMatrix& basis) {
    require_unitary(basis, "time-reversal basis");
    return {Kind::Conjugation, basis * basis.transpose()};
}

TimeReversal TimeReversal::conjugation(Eigen::Index d) {
    return conjugation(qdb::identity(d));
}

TimeReversal TimeReversal::spin_half(const ComplexMatrix& basis) {
    require_unitary(basis, "time-reversal basis");
    if (basis.rows() != 2) {
        throw Error(ErrorKind::DimensionMismatch, "spin-1/2 time reversal acts on a qubit");
    }
    return {Kind::SpinHalf, basis * (-kI * pauli::y()) * basis.transpose()};
}

TimeReversal TimeReversal::custom(const ComplexMatrix& unitary, const ComplexMatrix& basis) {
    require_unitary(unitary, "time-reversal unitary");
    const ComplexMatrix v = basis.size() == 0 ? qdb::identity(unitary.rows()) : basis;
    require_unitary(v, "time-reversal basis");
    if (v.rows() != unitary.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "basis and unitary dimensions differ");
    }
    const ComplexMatrix u = v * unitary * v.transpose();
    // Θ² = U Ū must be ±I for T∘T to be the identity map.
    const ComplexMatrix square = u * u.conjugate();
    const ComplexMatrix id = qdb::identity(u.rows());
    if (max_abs(square - id) > 1e-12 && max_abs(square + id) > 1e-12) {
        throw Error(ErrorKind::InvalidTimeReversal, "Θ² is not ±I");
    }
    return {Kind::Custom, u};
}

ComplexMatrix TimeReversal::operator()(const ComplexMatrix& a) const {
    if (a.rows() != dim() || a.cols() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "time reversal of an operator of wrong size");
    }
    return u_ * a.transpose() * u_.adjoint();
}

SuperOperator TimeReversal::superop() const {
    const Eigen::Index d = dim();
    return {kron(u_.conjugate(), u_) * transpose_permutation(d), Picture::Heisenberg};
}

QdbReport check_qdb2(const WeightedSpace& space, const SuperOperator& map_heis,
                     const TimeReversal& t, double tol) {
    require_dim(space, map_heis);
    if (map_heis.picture() != Picture::Heisenberg) {
        throw Error(ErrorKind::WrongPicture, "the second QDB condition needs a Heisenberg map");
    }
    if (t.dim() != space.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "time reversal and space dimensions differ");
    }
    const Eigen::Index d = space.dim();
    std::vector<ComplexMatrix> units;
    std::vector<ComplexMatrix> mapped;
    std::vector<ComplexMatrix> mapped_reversed;
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            ComplexMatrix e = matrix_unit(d, i, j);
            mapped.push_back(map_heis(e));
            mapped_reversed.push_back(map_heis(t(e)));
            units.push_back(std::move(e));
        }
    }
    QdbReport report;
    for (std::size_t a = 0; a < units.size(); ++a) {
        for (std::size_t b = 0; b < units.size(); ++b) {
            const Complex lhs = inner(space, units[a].adjoint(), mapped[b]);
            const Complex rhs = inner(space, t(units[b].adjoint()), mapped_reversed[a]);
            report.residual = std::max(report.residual, std::abs(lhs - rhs));
        }
    }
    report.passes = report.residual < tol;
    return report;
}

SuperOperator rs_map(const WeightedSpace& space, Picture picture) {
    const double s = space.s();
    return sandwich_superop(space.sigma_power(1.0 - 2.0 * s), space.sigma_power(2.0 * s - 1.0),
                            picture);
}

InvariantSubspaceReport check_lemma_invariant_subspace(const WeightedSpace& space,
                                                       const LindbladGenerator& gen,
                                                       const std::vector<double>& taus,
                                                       double tol) {
    if (gen.dim() != space.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "generator and space dimensions differ");
    }
    const Hamiltonian& h = gen.hamiltonian();
    const Eigen::Index d = h.dim();
    const SuperOperator dual = dual_superop(gen);
    const SuperOperator rs = rs_map(space);
    InvariantSubspaceReport report;
    for (double tau : taus) {
        const SuperOperator g = evolve(dual, tau);
        for (Eigen::Index m = 0; m < d; ++m) {
            for (Eigen::Index n = 0; n < d; ++n) {
                const ComplexMatrix input =
                    h.basis().col(m) * h.basis().col(n).adjoint();
                const ComplexMatrix out = h.to_eigenbasis(g(input));
                if (m == n) {
                    ComplexMatrix off = out;
                    off.diagonal().setZero();
                    report.diagonal_residual = std::max(report.diagonal_residual, max_abs(off));
                } else {
                    report.offdiagonal_residual =
                        std::max(report.offdiagonal_residual, out.diagonal().cwiseAbs().maxCoeff());
                }
            }
        }
        const ComplexMatrix comm = g.matrix() * rs.matrix() - rs.matrix() * g.matrix();
        report.rs_commutation_residual = std::max(report.rs_commutation_residual, max_abs(comm));
    }
    report.passes = report.diagonal_residual < tol && report.offdiagonal_residual < tol &&
                    report.rs_commutation_residual < tol;
    return report;
}

double lemma_self_adjoint_residual(const SuperOperator& k_heis, const Hamiltonian& h,
                                   double beta_f) {
    if (k_heis.picture() != Picture::Heisenberg) {
        throw Error(ErrorKind::WrongPicture, "expected a Heisenberg-picture map");
    }
    const RealVector w = boltzmann_weights(h, beta_f);
    const Eigen::Index d = h.dim();
    double worst = 0.0;
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            const Complex mn = h.to_eigenbasis(k_heis(h.projector(n)))(m, m);
            const Complex nm = h.to_eigenbasis(k_heis(h.projector(m)))(n, n);
            worst = std::max(worst, std::abs(w(m) * mn - w(n) * nm));
        }
    }
    return worst;
}

} // namespace qdb
