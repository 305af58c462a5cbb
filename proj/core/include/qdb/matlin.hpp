// matlin.hpp: dense complex linear algebra kernel
//
// Every operator in qdb is a dense Eigen::MatrixXcd. Superoperators act on
// column-stacked vectors: vec(X Y Z) = (Z^T ⊗ X) vec(Y).

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qdb {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Entrywise Hermiticity tolerance used by herm_eig.
inline constexpr double kHermitianTol = 1e-12;

struct HermEig {
    RealVector values;     // ascending
    ComplexMatrix vectors; // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
/// max|m - m†| exceeds `tol`, NoConvergence if the solver fails.
HermEig herm_eig(const ComplexMatrix& m, double tol = kHermitianTol);

/// Matrix exponential (scaling and squaring with Padé approximants).
ComplexMatrix expm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

/// Square-root of a vector length; throws DimensionMismatch if not a square.
Eigen::Index isqrt_exact(Eigen::Index n);

ComplexMatrix identity(Eigen::Index d);
ComplexMatrix matrix_unit(Eigen::Index d, Eigen::Index i, Eigen::Index j);

double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
double hermiticity_residual(const ComplexMatrix& m);
/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);
bool all_finite(const ComplexMatrix& m);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// f(m) for Hermitian m via its eigendecomposition; `power` is applied to
/// eigenvalues, which must be positive unless power is a non-negative integer.
ComplexMatrix hermitian_power(const ComplexMatrix& m, double power);

/// Permutation P with vec(X^T) = P vec(X) for d×d X.
ComplexMatrix transpose_permutation(Eigen::Index d);

void require_square(const ComplexMatrix& m, const char* what);

} // namespace qdb
