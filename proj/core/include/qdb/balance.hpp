// balance.hpp: weighted scalar product, adjoints, time reversal and the two
// quantum detailed balance checks

#pragma once

#include <vector>

#include "qdb/dynamics.hpp"
#include "qdb/states.hpp"

namespace qdb {

/// M_d(ℂ) with ⟨⟨A,B⟩⟩_s = Tr[Σ^{1-s} A† Σ^s B] for a full-rank state Σ.
///
/// In vec form ⟨⟨A,B⟩⟩_s = vec(A)† W vec(B) with W = (Σ^{1-s})^T ⊗ Σ^s.
class WeightedSpace {
public:
    /// Throws SingularWeight if min eig Σ <= 1e-12, InvalidParameter if s ∉ [0,1].
    WeightedSpace(DensityMatrix sigma, double s = 0.5);

    const DensityMatrix& sigma() const noexcept { return sigma_; }
    double s() const noexcept { return s_; }
    Eigen::Index dim() const noexcept { return sigma_.dim(); }

    const ComplexMatrix& weight() const noexcept { return weight_; }
    const ComplexMatrix& weight_inverse() const noexcept { return weight_inverse_; }
    /// Σ^p for real p.
    ComplexMatrix sigma_power(double p) const;

private:
    DensityMatrix sigma_;
    double s_;
    HermEig eig_;
    ComplexMatrix weight_;
    ComplexMatrix weight_inverse_;
};

inline const std::vector<double> kDefaultSGrid{0.0, 0.25, 0.5, 0.75, 1.0};

Complex inner(const WeightedSpace& space, const ComplexMatrix& a, const ComplexMatrix& b);

/// O★ with ⟨⟨A, O[B]⟩⟩_s = ⟨⟨O★[A], B⟩⟩_s, computed as W⁻¹ O† W.
SuperOperator adjoint(const WeightedSpace& space, const SuperOperator& op);

struct GeneratorParts {
    SuperOperator hamiltonian_part;  // ½(L♯ - L♯★), anti-self-adjoint
    SuperOperator dissipative_part;  // ½(L♯ + L♯★), self-adjoint
};

GeneratorParts decompose(const WeightedSpace& space, const SuperOperator& dual_generator);

struct QdbReport {
    double residual = 0.0;
    bool passes = false;
};

inline constexpr double kQdbTol = 1e-9;

/// Generator condition L♯ - L♯★ = 2i[H,·]. The residual is
/// ‖L♯ - L♯★ - 2i[H,·]‖_F / ‖L♯‖_F.
QdbReport check_qdb1(const WeightedSpace& space, const LindbladGenerator& gen,
                     double tol = kQdbTol);
QdbReport check_qdb1(const WeightedSpace& space, const SuperOperator& dual_generator,
                     const ComplexMatrix& hamiltonian, double tol = kQdbTol);

struct QdbSweepEntry {
    double s = 0.0;
    QdbReport report;
};

std::vector<QdbSweepEntry> check_qdb1_sweep(const DensityMatrix& sigma,
                                            const SuperOperator& dual_generator,
                                            const ComplexMatrix& hamiltonian,
                                            const std::vector<double>& s_grid = kDefaultSGrid,
                                            double tol = kQdbTol);

/// ‖L[Σ]‖_F.
double check_qdb1_invariance(const WeightedSpace& space, const LindbladGenerator& gen);
double check_qdb1_invariance(const WeightedSpace& space, const SuperOperator& generator);

/// ‖G[Σ] - Σ‖_F for a map at fixed time.
double fixed_point_residual(const DynamicalMap& map, const DensityMatrix& sigma);

/// T[A] = Θ A† Θ† for an antiunitary Θ = U·C, where C conjugates in a chosen
/// orthonormal basis. Evaluates to T[A] = U' A^T U'† with U' = V U V^T for basis V.
class TimeReversal {
public:
    enum class Kind { Conjugation, SpinHalf, Custom };

    /// Complex conjugation relative to the columns of `basis`.
    static TimeReversal conjugation(const ComplexMatrix& basis);
    static TimeReversal conjugation(Eigen::Index d);
    /// Θ = -iσ_y C on a qubit, conjugation relative to `basis`.
    static TimeReversal spin_half(const ComplexMatrix& basis = qdb::identity(2));
    /// Θ = U C; U must be unitary with U Ū = ±I.
    static TimeReversal custom(const ComplexMatrix& unitary,
                               const ComplexMatrix& basis = ComplexMatrix());

    Kind kind() const noexcept { return kind_; }
    Eigen::Index dim() const noexcept { return u_.rows(); }

    ComplexMatrix operator()(const ComplexMatrix& a) const;
    /// T as a d²×d² matrix (T is linear).
    SuperOperator superop() const;

private:
    TimeReversal(Kind kind, ComplexMatrix u);

    Kind kind_;
    ComplexMatrix u_;
};

/// Condition ⟨⟨A†, G♯[B]⟩⟩_s = ⟨⟨T[B†], G♯[T[A]]⟩⟩_s checked on every pair of
/// matrix units; `residual` is the largest violation.
QdbReport check_qdb2(const WeightedSpace& space, const SuperOperator& map_heis,
                     const TimeReversal& t, double tol = kQdbTol);

inline const std::vector<double> kDefaultQdb2Taus{0.1, 0.5, 1.0, 5.0};

/// R_s[X] = Σ^{1-2s} X Σ^{2s-1}.
SuperOperator rs_map(const WeightedSpace& space, Picture picture = Picture::Heisenberg);

struct InvariantSubspaceReport {
    double diagonal_residual = 0.0;    // coherences generated from |m⟩⟨m|
    double offdiagonal_residual = 0.0; // populations generated from |m⟩⟨n|, m≠n
    double rs_commutation_residual = 0.0;
    bool passes = false;
};

/// Checks that G♯_τ keeps span{|m⟩⟨m|} and its complement invariant and
/// commutes with R_s, over the times in `taus`. |m⟩ is the eigenbasis of the
/// generator's Hamiltonian.
InvariantSubspaceReport check_lemma_invariant_subspace(
    const WeightedSpace& space, const LindbladGenerator& gen,
    const std::vector<double>& taus = kDefaultQdb2Taus, double tol = kQdbTol);

/// max over m,n of |e^{-βE_m}⟨m|K[|n⟩⟨n|]|m⟩ - e^{-βE_n}⟨n|K[|m⟩⟨m|]|n⟩|
/// for a Heisenberg-picture map K.
double lemma_self_adjoint_residual(const SuperOperator& k_heis, const Hamiltonian& h,
                                   double beta_f);

} // namespace qdb
