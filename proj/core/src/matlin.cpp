#include "qdb/matlin.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "qdb/error.hpp"

namespace qdb {

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + " must be a non-empty square matrix, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

HermEig herm_eig(const ComplexMatrix& m, double tol) {
    require_square(m, "herm_eig input");
    const double asym = hermiticity_residual(m);
    if (!(asym <= tol)) {
        throw Error(ErrorKind::NotHermitian,
                    "max |m - m^dagger| = " + std::to_string(asym));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NoConvergence, "Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm(const ComplexMatrix& m) {
    require_square(m, "expm input");
    return m.exp();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

ComplexVector vec(const ComplexMatrix& m) {
    return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (rows <= 0 || cols <= 0 || v.size() != rows * cols) {
        throw Error(ErrorKind::DimensionMismatch,
                    "cannot reshape vector of length " + std::to_string(v.size()) +
                        " into " + std::to_string(rows) + "x" + std::to_string(cols));
    }
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

Eigen::Index isqrt_exact(Eigen::Index n) {
    const auto r = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (r <= 0 || r * r != n) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(n) + " is not a perfect square");
    }
    return r;
}

ComplexMatrix identity(Eigen::Index d) { return ComplexMatrix::Identity(d, d); }

ComplexMatrix matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j) {
    ComplexMatrix e = ComplexMatrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "hermiticity of a non-square matrix");
    }
    return max_abs(m - m.adjoint());
}

double trace_norm(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

bool all_finite(const ComplexMatrix& m) { return m.allFinite(); }

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

ComplexMatrix hermitian_power(const ComplexMatrix& m, double power) {
    const HermEig eig = herm_eig(m, 1e-10);
    const bool integral = power >= 0.0 && std::floor(power) == power;
    RealVector f(eig.values.size());
    for (Eigen::Index k = 0; k < f.size(); ++k) {
        const double lambda = eig.values(k);
        if (!integral && !(lambda > 0.0)) {
            throw Error(ErrorKind::InvalidParameter,
                        "non-integer power of a matrix with eigenvalue " + std::to_string(lambda));
        }
        f(k) = power == 0.0 ? 1.0 : std::pow(lambda, power);
    }
    return eig.vectors * f.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix transpose_permutation(Eigen::Index d) {
    const Eigen::Index n = d * d;
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    // vec index of X(a, b) is b*d + a; of X^T(a, b) = X(b, a) it is b*d + a.
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            p(b * d + a, a * d + b) = 1.0;
        }
    }
    return p;
}

} // namespace qdb
