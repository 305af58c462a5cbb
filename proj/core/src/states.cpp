#include "qdb/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdb/error.hpp"

namespace qdb {

namespace {

bool is_diagonal(const ComplexMatrix& m, double tol) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j && std::abs(m(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

Hamiltonian::Hamiltonian(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "Hamiltonian");
    if (!all_finite(matrix_)) {
        throw Error(ErrorKind::NonFinite, "Hamiltonian has non-finite entries");
    }
    const Eigen::Index d = matrix_.rows();
    if (is_diagonal(matrix_, 0.0)) {
        if (hermiticity_residual(matrix_) > kHermitianTol) {
            throw Error(ErrorKind::NotHermitian, "Hamiltonian diagonal is not real");
        }
        std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
            return matrix_(a, a).real() < matrix_(b, b).real();
        });
        energies_.resize(d);
        basis_ = ComplexMatrix::Zero(d, d);
        for (Eigen::Index k = 0; k < d; ++k) {
            const Eigen::Index src = order[static_cast<std::size_t>(k)];
            energies_(k) = matrix_(src, src).real();
            basis_(src, k) = 1.0;
        }
        return;
    }
    HermEig eig = herm_eig(matrix_);
    energies_ = eig.values;
    basis_ = std::move(eig.vectors);
    for (Eigen::Index k = 0; k < d; ++k) {
        Eigen::Index pivot = 0;
        basis_.col(k).cwiseAbs().maxCoeff(&pivot);
        const Complex phase = basis_(pivot, k) / std::abs(basis_(pivot, k));
        basis_.col(k) /= phase;
    }
}

ComplexMatrix Hamiltonian::projector(Eigen::Index m) const {
    return basis_.col(m) * basis_.col(m).adjoint();
}

std::vector<ComplexMatrix> Hamiltonian::projectors() const {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(dim()));
    for (Eigen::Index m = 0; m < dim(); ++m) {
        out.push_back(projector(m));
    }
    return out;
}

bool Hamiltonian::is_nondegenerate(double tol) const {
    for (Eigen::Index k = 1; k < energies_.size(); ++k) {
        if (energies_(k) - energies_(k - 1) <= tol) {
            return false;
        }
    }
    return true;
}

ComplexMatrix Hamiltonian::to_eigenbasis(const ComplexMatrix& a) const {
    if (a.rows() != dim() || a.cols() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operator and Hamiltonian dimensions differ");
    }
    return basis_.adjoint() * a * basis_;
}

ComplexMatrix Hamiltonian::from_eigenbasis(const ComplexMatrix& a) const {
    if (a.rows() != dim() || a.cols() != dim()) {
        throw Error(ErrorKind::DimensionMismatch, "operator and Hamiltonian dimensions differ");
    }
    return basis_ * a * basis_.adjoint();
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, double tol) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, "density matrix must be square");
    }
    if (!all_finite(matrix_)) {
        throw Error(ErrorKind::NonFinite, "density matrix has non-finite entries");
    }
    const double asym = hermiticity_residual(matrix_);
    if (asym > tol) {
        throw Error(ErrorKind::NotAState, "not Hermitian, residual " + std::to_string(asym));
    }
    const double trace_err = std::abs(matrix_.trace() - Complex(1.0));
    if (trace_err > tol) {
        throw Error(ErrorKind::NotAState, "trace differs from 1 by " + std::to_string(trace_err));
    }
    const double min_eig = herm_eig(matrix_, tol).values(0);
    if (min_eig < -tol) {
        throw Error(ErrorKind::NotAState, "negative eigenvalue " + std::to_string(min_eig));
    }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
    return DensityMatrix(identity(d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double n = psi.norm();
    if (!(n > 0.0)) {
        throw Error(ErrorKind::NotAState, "zero state vector");
    }
    const ComplexVector u = psi / n;
    return DensityMatrix(u * u.adjoint());
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

namespace pauli {

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, kI, -kI, 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << -1.0, 0.0, 0.0, 1.0;
    return m;
}

ComplexMatrix plus() { return 0.5 * (x() + kI * y()); }
ComplexMatrix minus() { return 0.5 * (x() - kI * y()); }

} // namespace pauli

RealVector boltzmann_weights(const Hamiltonian& h, double beta) {
    if (std::isnan(beta) || beta < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "inverse temperature must be >= 0");
    }
    const RealVector& e = h.energies();
    const Eigen::Index d = e.size();
    RealVector w = RealVector::Zero(d);
    if (std::isinf(beta)) {
        const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
        if (d > 1 && e(1) - e(0) <= 1e-9 * scale) {
            throw Error(ErrorKind::DegenerateGround, "β = ∞ with a degenerate ground level");
        }
        w(0) = 1.0;
        return w;
    }
    for (Eigen::Index m = 0; m < d; ++m) {
        w(m) = std::exp(-beta * (e(m) - e(0)));
    }
    return w / w.sum();
}

DensityMatrix gibbs(const Hamiltonian& h, double beta) {
    const RealVector w = boltzmann_weights(h, beta);
    return DensityMatrix(h.basis() * w.cast<Complex>().asDiagonal() * h.basis().adjoint());
}

RealVector populations(const DensityMatrix& rho, const Hamiltonian& h) {
    if (rho.dim() != h.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and Hamiltonian dimensions differ");
    }
    return h.to_eigenbasis(rho.matrix()).diagonal().real();
}

DensityMatrix from_bloch(const BlochVector& r) {
    if (r.norm() > 1.0 + 1e-10) {
        throw Error(ErrorKind::NotAState, "Bloch vector norm " + std::to_string(r.norm()) + " > 1");
    }
    return DensityMatrix(0.5 * (identity(2) + r.x * pauli::x() + r.y * pauli::y() + r.z * pauli::z()));
}

BlochVector to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw Error(ErrorKind::DimensionMismatch, "Bloch form needs a qubit state");
    }
    const ComplexMatrix& m = rho.matrix();
    return {(m * pauli::x()).trace().real(), (m * pauli::y()).trace().real(),
            (m * pauli::z()).trace().real()};
}

double infer_beta(const DensityMatrix& rho, const Hamiltonian& h) {
    if (rho.dim() != h.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and Hamiltonian dimensions differ");
    }
    if (!h.is_nondegenerate()) {
        throw Error(ErrorKind::DegenerateSpectrum, "β inference needs a nondegenerate spectrum");
    }
    const Eigen::Index d = h.dim();
    const ComplexMatrix in_basis = h.to_eigenbasis(rho.matrix());
    ComplexMatrix off = in_basis;
    off.diagonal().setZero();
    if (max_abs(off) > 1e-8) {
        throw Error(ErrorKind::NotThermal, "state has coherences in the energy eigenbasis");
    }
    if (d == 1) {
        return 0.0;
    }
    const RealVector p = in_basis.diagonal().real();
    const RealVector& e = h.energies();
    if (p.minCoeff() < 1e-14) {
        if (p(0) >= 1.0 - 1e-10) {
            return kInfiniteBeta;
        }
        throw Error(ErrorKind::ZeroPopulation, "a level has vanishing population");
    }
    const double beta = std::log(p(0) / p(d - 1)) / (e(d - 1) - e(0));
    const double tol = 1e-6 * std::max(1.0, std::abs(beta));
    // populations carry ~1e-15 absolute roundoff, which dominates ln p for tiny p
    constexpr double kPopulationNoise = 1e-15;
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = m + 1; n < d; ++n) {
            const double pair = std::log(p(m) / p(n)) / (e(n) - e(m));
            const double noise = kPopulationNoise * (1.0 / p(m) + 1.0 / p(n)) / (e(n) - e(m));
            if (std::abs(pair - beta) > tol + noise) {
                throw Error(ErrorKind::NotThermal,
                            "pairwise β " + std::to_string(pair) + " differs from " +
                                std::to_string(beta));
            }
        }
    }
    return beta;
}

} // namespace qdb
