#include "qdb/dynamics.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "qdb/error.hpp"

namespace qdb {

namespace {

void require_same_shape(const SuperOperator& a, const SuperOperator& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "superoperators act on different spaces");
    }
    if (a.picture() != b.picture()) {
        throw Error(ErrorKind::WrongPicture, "superoperators are in different pictures");
    }
}

void require_operator_dim(const ComplexMatrix& x, Eigen::Index d) {
    if (x.rows() != d || x.cols() != d) {
        throw Error(ErrorKind::DimensionMismatch,
                    "expected a " + std::to_string(d) + "x" + std::to_string(d) + " operator");
    }
}

// Hermitian operator basis: Gell-Mann plus the normalized identity.
std::vector<ComplexMatrix> hermitian_basis(Eigen::Index d) {
    std::vector<ComplexMatrix> out = gell_mann_basis(d);
    out.push_back(identity(d) / std::sqrt(static_cast<double>(d)));
    return out;
}

} // namespace

SuperOperator::SuperOperator(ComplexMatrix matrix, Picture picture)
    : matrix_(std::move(matrix)), picture_(picture) {
    require_square(matrix_, "superoperator");
    dim_ = isqrt_exact(matrix_.rows());
    if (!all_finite(matrix_)) {
        throw Error(ErrorKind::NonFinite, "superoperator has non-finite entries");
    }
}

SuperOperator SuperOperator::identity(Eigen::Index d, Picture picture) {
    return {qdb::identity(d * d), picture};
}

ComplexMatrix SuperOperator::operator()(const ComplexMatrix& x) const {
    require_operator_dim(x, dim_);
    return unvec(matrix_ * vec(x), dim_, dim_);
}

SuperOperator SuperOperator::dual() const {
    const ComplexMatrix p = transpose_permutation(dim_);
    const Picture other =
        picture_ == Picture::Schrodinger ? Picture::Heisenberg : Picture::Schrodinger;
    return {p * matrix_.transpose() * p, other};
}

SuperOperator SuperOperator::schrodinger() const {
    return picture_ == Picture::Schrodinger ? *this : dual();
}

SuperOperator SuperOperator::heisenberg() const {
    return picture_ == Picture::Heisenberg ? *this : dual();
}

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b) {
    require_same_shape(a, b);
    return {a.matrix() + b.matrix(), a.picture()};
}

SuperOperator operator-(const SuperOperator& a, const SuperOperator& b) {
    require_same_shape(a, b);
    return {a.matrix() - b.matrix(), a.picture()};
}

SuperOperator operator*(Complex c, const SuperOperator& a) {
    return {c * a.matrix(), a.picture()};
}

SuperOperator compose(const SuperOperator& a, const SuperOperator& b) {
    require_same_shape(a, b);
    return {a.matrix() * b.matrix(), a.picture()};
}

SuperOperator commutator_superop(const ComplexMatrix& h, Picture picture) {
    require_square(h, "commutator operand");
    const ComplexMatrix id = identity(h.rows());
    return {kron(id, h) - kron(h.transpose(), id), picture};
}

SuperOperator sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right,
                               Picture picture) {
    require_square(left, "left factor");
    require_square(right, "right factor");
    return {kron(right.transpose(), left), picture};
}

std::vector<ComplexMatrix> gell_mann_basis(Eigen::Index d) {
    if (d < 1) {
        throw Error(ErrorKind::DimensionMismatch, "Gell-Mann basis needs d >= 1");
    }
    const double r2 = 1.0 / std::sqrt(2.0);
    std::vector<ComplexMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d * d - 1));
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            basis.push_back(r2 * (matrix_unit(d, j, k) + matrix_unit(d, k, j)));
        }
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = j + 1; k < d; ++k) {
            basis.push_back(-kI * r2 * (matrix_unit(d, j, k) - matrix_unit(d, k, j)));
        }
    }
    for (Eigen::Index l = 1; l < d; ++l) {
        ComplexMatrix f = ComplexMatrix::Zero(d, d);
        for (Eigen::Index m = 0; m < l; ++m) {
            f(m, m) = 1.0;
        }
        f(l, l) = -static_cast<double>(l);
        basis.push_back(f / std::sqrt(static_cast<double>(l * (l + 1))));
    }
    return basis;
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> ops, double tol) : ops_(std::move(ops)) {
    if (ops_.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "a channel needs at least one Kraus operator");
    }
    dim_ = ops_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& g : ops_) {
        require_operator_dim(g, dim_);
        if (!all_finite(g)) {
            throw Error(ErrorKind::NonFinite, "Kraus operator has non-finite entries");
        }
        sum += g.adjoint() * g;
    }
    const double residual = max_abs(sum - identity(dim_));
    if (residual > tol) {
        throw Error(ErrorKind::NotTracePreserving,
                    "sum of G^dagger G differs from I by " + std::to_string(residual));
    }
}

ComplexMatrix KrausChannel::operator()(const ComplexMatrix& rho) const {
    require_operator_dim(rho, dim_);
    ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& g : ops_) {
        out += g * rho * g.adjoint();
    }
    return out;
}

LindbladGenerator::LindbladGenerator(Hamiltonian hamiltonian, ComplexMatrix kossakowski,
                                     std::vector<ComplexMatrix> basis)
    : hamiltonian_(std::move(hamiltonian)),
      kossakowski_(std::move(kossakowski)),
      basis_(std::move(basis)) {
    const Eigen::Index d = hamiltonian_.dim();
    const auto n = static_cast<std::size_t>(d * d - 1);
    if (basis_.size() != n) {
        throw Error(ErrorKind::InvalidBasis,
                    "expected " + std::to_string(n) + " basis matrices, got " +
                        std::to_string(basis_.size()));
    }
    for (std::size_t k = 0; k < n; ++k) {
        require_operator_dim(basis_[k], d);
        if (std::abs(basis_[k].trace()) > 1e-12) {
            throw Error(ErrorKind::InvalidBasis, "basis matrix " + std::to_string(k) + " has a trace");
        }
        for (std::size_t l = 0; l <= k; ++l) {
            const Complex overlap = (basis_[k].adjoint() * basis_[l]).trace();
            const double expected = k == l ? 1.0 : 0.0;
            if (std::abs(overlap - expected) > 1e-12) {
                throw Error(ErrorKind::InvalidBasis, "basis is not orthonormal");
            }
        }
    }
    const auto nn = static_cast<Eigen::Index>(n);
    if (kossakowski_.rows() != nn || kossakowski_.cols() != nn) {
        throw Error(ErrorKind::DimensionMismatch,
                    "Kossakowski matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!all_finite(kossakowski_)) {
        throw Error(ErrorKind::NonFinite, "Kossakowski matrix has non-finite entries");
    }
    if (n == 0) {
        return;
    }
    const double asym = hermiticity_residual(kossakowski_);
    if (asym > 1e-10) {
        throw Error(ErrorKind::KossakowskiNotPSD,
                    "Kossakowski matrix is not Hermitian, residual " + std::to_string(asym));
    }
    kossakowski_ = hermitian_part(kossakowski_);
    const double min_eig = herm_eig(kossakowski_).values(0);
    if (min_eig < -1e-10) {
        throw Error(ErrorKind::KossakowskiNotPSD,
                    "Kossakowski matrix has eigenvalue " + std::to_string(min_eig));
    }
}

LindbladGenerator::LindbladGenerator(Hamiltonian hamiltonian, ComplexMatrix kossakowski)
    : LindbladGenerator(hamiltonian, std::move(kossakowski), gell_mann_basis(hamiltonian.dim())) {}

LindbladGenerator LindbladGenerator::from_jumps(const ComplexMatrix& hamiltonian,
                                                const std::vector<ComplexMatrix>& jumps) {
    require_square(hamiltonian, "Hamiltonian");
    const Eigen::Index d = hamiltonian.rows();
    const std::vector<ComplexMatrix> basis = gell_mann_basis(d);
    const auto n = static_cast<Eigen::Index>(basis.size());
    ComplexMatrix c = ComplexMatrix::Zero(n, n);
    ComplexMatrix h = hamiltonian;
    for (const auto& jump : jumps) {
        require_operator_dim(jump, d);
        ComplexVector a(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            a(k) = (basis[static_cast<std::size_t>(k)].adjoint() * jump).trace();
        }
        c += a * a.adjoint();
        const Complex shift = jump.trace() / static_cast<double>(d);
        const ComplexMatrix traceless = jump - shift * identity(d);
        h += 0.5 * kI * (std::conj(shift) * traceless - shift * traceless.adjoint());
    }
    return {Hamiltonian(hermitian_part(h)), c, basis};
}

SuperOperator lindblad_superop(const LindbladGenerator& gen) {
    const ComplexMatrix& h = gen.hamiltonian().matrix();
    const Eigen::Index d = gen.dim();
    const ComplexMatrix id = identity(d);
    ComplexMatrix m = -kI * (kron(id, h) - kron(h.transpose(), id));
    const auto& f = gen.basis();
    const ComplexMatrix& c = gen.kossakowski();
    for (Eigen::Index k = 0; k < c.rows(); ++k) {
        for (Eigen::Index l = 0; l < c.cols(); ++l) {
            const Complex ckl = c(k, l);
            if (ckl == Complex(0.0)) {
                continue;
            }
            const ComplexMatrix& fk = f[static_cast<std::size_t>(k)];
            const ComplexMatrix fl_dag = f[static_cast<std::size_t>(l)].adjoint();
            const ComplexMatrix prod = fl_dag * fk;
            m += ckl * (kron(fl_dag.transpose(), fk) - 0.5 * kron(id, prod) -
                        0.5 * kron(prod.transpose(), id));
        }
    }
    return {m, Picture::Schrodinger};
}

SuperOperator dual_superop(const LindbladGenerator& gen) {
    const ComplexMatrix& h = gen.hamiltonian().matrix();
    const Eigen::Index d = gen.dim();
    const ComplexMatrix id = identity(d);
    ComplexMatrix m = kI * (kron(id, h) - kron(h.transpose(), id));
    const auto& f = gen.basis();
    const ComplexMatrix& c = gen.kossakowski();
    for (Eigen::Index k = 0; k < c.rows(); ++k) {
        for (Eigen::Index l = 0; l < c.cols(); ++l) {
            const Complex ckl = c(k, l);
            if (ckl == Complex(0.0)) {
                continue;
            }
            const ComplexMatrix& fk = f[static_cast<std::size_t>(k)];
            const ComplexMatrix fl_dag = f[static_cast<std::size_t>(l)].adjoint();
            const ComplexMatrix prod = fl_dag * fk;
            m += ckl * (kron(fk.transpose(), fl_dag) - 0.5 * kron(id, prod) -
                        0.5 * kron(prod.transpose(), id));
        }
    }
    return {m, Picture::Heisenberg};
}

LindbladGenerator lindblad_from_superop(const SuperOperator& generator) {
    const SuperOperator s = generator.schrodinger();
    const Eigen::Index d = s.dim();
    std::vector<ComplexMatrix> full = gell_mann_basis(d);
    full.push_back(identity(d) / std::sqrt(static_cast<double>(d)));
    const auto n = static_cast<Eigen::Index>(full.size());

    // Process-matrix coefficients: L[ϱ] = Σ_ij χ_ij F_i ϱ F_j†.
    ComplexMatrix chi(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const ComplexMatrix element =
                kron(full[static_cast<std::size_t>(j)].conjugate(), full[static_cast<std::size_t>(i)]);
            chi(i, j) = (element.adjoint() * s.matrix()).trace();
        }
    }
    chi = hermitian_part(chi);

    const Eigen::Index last = n - 1;
    const double sqrt_d = std::sqrt(static_cast<double>(d));
    ComplexMatrix g = chi(last, last) / (2.0 * static_cast<double>(d)) * identity(d);
    for (Eigen::Index i = 0; i < last; ++i) {
        g += chi(i, last) / sqrt_d * full[static_cast<std::size_t>(i)];
    }
    ComplexMatrix h = (g.adjoint() - g) / (2.0 * kI);
    h -= h.trace() / static_cast<double>(d) * identity(d);
    full.pop_back();
    return {Hamiltonian(hermitian_part(h)), chi.topLeftCorner(last, last), full};
}

SuperOperator evolve(const SuperOperator& generator, double tau) {
    if (!(tau >= 0.0) || std::isinf(tau)) {
        throw Error(ErrorKind::InvalidParameter, "evolution time must be finite and >= 0");
    }
    return {expm(tau * generator.matrix()), generator.picture()};
}

ComplexMatrix choi_matrix(const SuperOperator& map) {
    const SuperOperator s = map.schrodinger();
    const Eigen::Index d = s.dim();
    ComplexMatrix choi(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index a = 0; a < d; ++a) {
                for (Eigen::Index b = 0; b < d; ++b) {
                    choi(i * d + a, j * d + b) = s.matrix()(b * d + a, j * d + i);
                }
            }
        }
    }
    return choi;
}

SuperOperator superop_from_channel(const KrausChannel& channel) {
    const Eigen::Index d = channel.dim();
    ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
    for (const auto& g : channel.ops()) {
        m += kron(g.conjugate(), g);
    }
    return {m, Picture::Schrodinger};
}

namespace {

double partial_trace_residual(const ComplexMatrix& choi, Eigen::Index d) {
    ComplexMatrix reduced = ComplexMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index a = 0; a < d; ++a) {
                reduced(i, j) += choi(i * d + a, j * d + a);
            }
        }
    }
    return frobenius_norm(reduced - identity(d));
}

} // namespace

KrausChannel channel_from_superop(const SuperOperator& map) {
    const Eigen::Index d = map.dim();
    const ComplexMatrix choi = choi_matrix(map);
    if (hermiticity_residual(choi) > 1e-8) {
        throw Error(ErrorKind::NotCP, "Choi matrix is not Hermitian");
    }
    const HermEig eig = herm_eig(choi, 1e-8);
    if (eig.values(0) < -1e-8) {
        throw Error(ErrorKind::NotCP, "Choi eigenvalue " + std::to_string(eig.values(0)));
    }
    const double tp = partial_trace_residual(choi, d);
    if (tp > 1e-8) {
        throw Error(ErrorKind::NotTP, "partial trace of Choi differs from I by " + std::to_string(tp));
    }
    std::vector<ComplexMatrix> ops;
    for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
        const double lambda = eig.values(k);
        if (lambda < -1e-12) {
            std::clog << "qdb: warning: clamping Choi eigenvalue " << lambda << " to 0\n";
        }
        if (lambda < 1e-12) {
            continue;
        }
        ops.push_back(std::sqrt(lambda) * unvec(eig.vectors.col(k), d, d));
    }
    return KrausChannel(std::move(ops), 1e-8);
}

SuperOperator as_superop(const DynamicalMap& map) {
    if (const auto* s = std::get_if<SuperOperator>(&map)) {
        return s->schrodinger();
    }
    return superop_from_channel(std::get<KrausChannel>(map));
}

Eigen::Index map_dim(const DynamicalMap& map) {
    return std::visit([](const auto& m) { return m.dim(); }, map);
}

DensityMatrix apply(const DynamicalMap& map, const DensityMatrix& rho) {
    if (map_dim(map) != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "map and state dimensions differ");
    }
    if (const auto* s = std::get_if<SuperOperator>(&map)) {
        if (s->picture() != Picture::Schrodinger) {
            throw Error(ErrorKind::WrongPicture, "states evolve under Schrödinger-picture maps");
        }
        return DensityMatrix((*s)(rho.matrix()));
    }
    return DensityMatrix(std::get<KrausChannel>(map)(rho.matrix()));
}

CptpReport is_cptp(const SuperOperator& map) {
    const SuperOperator s = map.schrodinger();
    const Eigen::Index d = s.dim();
    const ComplexMatrix choi = choi_matrix(s);
    CptpReport report;
    const double min_eig = herm_eig(hermitian_part(choi), 1.0).values(0);
    report.cp_residual = std::max(0.0, -min_eig);
    report.tp_residual = partial_trace_residual(choi, d);
    for (const auto& x : hermitian_basis(d)) {
        report.hermiticity_residual =
            std::max(report.hermiticity_residual, hermiticity_residual(s(x)));
    }
    return report;
}

} // namespace qdb
