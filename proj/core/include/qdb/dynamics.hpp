// dynamics.hpp: Kraus channels, Lindblad semigroups and their superoperators

#pragma once

#include <variant>
#include <vector>

#include "qdb/matlin.hpp"
#include "qdb/states.hpp"

namespace qdb {

enum class Picture { Schrodinger, Heisenberg };

/// d²×d² matrix acting on column-stacked d×d operators.
///
/// No structural property (CP, TP, Hermiticity preservation) is enforced
/// here: commutators and adjoint parts are superoperators too. Use is_cptp()
/// to check the physical ones.
class SuperOperator {
public:
    SuperOperator(ComplexMatrix matrix, Picture picture);

    static SuperOperator identity(Eigen::Index d, Picture picture = Picture::Schrodinger);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    Picture picture() const noexcept { return picture_; }
    /// Hilbert-space dimension d.
    Eigen::Index dim() const noexcept { return dim_; }

    ComplexMatrix operator()(const ComplexMatrix& x) const;

    /// Map in the other picture, defined by Tr[G[σ]A] = Tr[σ G♯[A]].
    SuperOperator dual() const;
    SuperOperator schrodinger() const;
    SuperOperator heisenberg() const;

private:
    ComplexMatrix matrix_;
    Picture picture_;
    Eigen::Index dim_;
};

SuperOperator operator+(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator-(const SuperOperator& a, const SuperOperator& b);
SuperOperator operator*(Complex c, const SuperOperator& a);
/// a∘b: apply b first.
SuperOperator compose(const SuperOperator& a, const SuperOperator& b);

/// Superoperator of X ↦ [H, X] in the requested picture label.
SuperOperator commutator_superop(const ComplexMatrix& h, Picture picture);
/// Superoperator of X ↦ L X R.
SuperOperator sandwich_superop(const ComplexMatrix& left, const ComplexMatrix& right,
                               Picture picture);

/// Generalized Gell-Mann basis of d²-1 traceless matrices with
/// Tr[F_k† F_l] = δ_kl, ordered symmetric, antisymmetric, diagonal.
std::vector<ComplexMatrix> gell_mann_basis(Eigen::Index d);

/// G[ϱ] = Σ_j G_j ϱ G_j† with Σ_j G_j† G_j = I.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<ComplexMatrix> ops, double tol = 1e-10);

    const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
    Eigen::Index dim() const noexcept { return dim_; }
    ComplexMatrix operator()(const ComplexMatrix& rho) const;

private:
    std::vector<ComplexMatrix> ops_;
    Eigen::Index dim_;
};

/// L[ϱ] = -i[H,ϱ] + Σ_kl C_kl (F_k ϱ F_l† - ½{F_l† F_k, ϱ}).
class LindbladGenerator {
public:
    /// Validates C (Hermitian, PSD within 1e-10) and the basis
    /// (d²-1 traceless orthonormal matrices).
    LindbladGenerator(Hamiltonian hamiltonian, ComplexMatrix kossakowski,
                      std::vector<ComplexMatrix> basis);
    /// Uses gell_mann_basis(d).
    LindbladGenerator(Hamiltonian hamiltonian, ComplexMatrix kossakowski);

    /// Jump operators J_j enter as J ϱ J† - ½{J†J, ϱ}; any identity component of
    /// a jump is moved into the Hamiltonian.
    static LindbladGenerator from_jumps(const ComplexMatrix& hamiltonian,
                                        const std::vector<ComplexMatrix>& jumps);

    const Hamiltonian& hamiltonian() const noexcept { return hamiltonian_; }
    const ComplexMatrix& kossakowski() const noexcept { return kossakowski_; }
    const std::vector<ComplexMatrix>& basis() const noexcept { return basis_; }
    Eigen::Index dim() const noexcept { return hamiltonian_.dim(); }

private:
    Hamiltonian hamiltonian_;
    ComplexMatrix kossakowski_;
    std::vector<ComplexMatrix> basis_;
};

SuperOperator lindblad_superop(const LindbladGenerator& gen);
SuperOperator dual_superop(const LindbladGenerator& gen);

/// Recover (H, C) in the Gell-Mann basis from a Schrödinger generator.
/// H is returned traceless. Throws KossakowskiNotPSD if the generator is not
/// of GKLS form.
LindbladGenerator lindblad_from_superop(const SuperOperator& generator);

/// e^{τ L}; throws InvalidParameter for τ < 0.
SuperOperator evolve(const SuperOperator& generator, double tau);

/// Choi = Σ_ij |i⟩⟨j| ⊗ G[|i⟩⟨j|] of the Schrödinger form.
ComplexMatrix choi_matrix(const SuperOperator& map);

SuperOperator superop_from_channel(const KrausChannel& channel);

/// Kraus form from the Choi spectrum. Eigenvalues below 1e-12 are dropped,
/// those in (-1e-8, 0) clamped; throws NotCP / NotTP beyond 1e-8.
KrausChannel channel_from_superop(const SuperOperator& map);

using DynamicalMap = std::variant<KrausChannel, SuperOperator>;

/// Schrödinger superoperator of either representation.
SuperOperator as_superop(const DynamicalMap& map);
Eigen::Index map_dim(const DynamicalMap& map);

DensityMatrix apply(const DynamicalMap& map, const DensityMatrix& rho);

struct CptpReport {
    double cp_residual = 0.0;          // max(0, -min eig Choi)
    double tp_residual = 0.0;          // ‖Tr_out Choi - I‖_F
    double hermiticity_residual = 0.0; // worst output asymmetry on a Hermitian basis

    bool passes(double tol = 1e-9) const {
        return cp_residual < tol && tp_residual < tol && hermiticity_residual < tol;
    }
};

CptpReport is_cptp(const SuperOperator& map);

} // namespace qdb
