// states.hpp: Hamiltonians, density matrices, thermal states, qubit Bloch form

#pragma once

#include <limits>
#include <vector>

#include "qdb/matlin.hpp"

namespace qdb {

/// Time-independent Hamiltonian H = Σ_m E_m |m⟩⟨m| with its eigenstructure.
///
/// Energies are ascending. The eigenbasis is deterministic: a diagonal input
/// keeps computational basis vectors (stably sorted by energy), otherwise each
/// eigenvector's largest component is made real and positive.
class Hamiltonian {
public:
    explicit Hamiltonian(ComplexMatrix matrix);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    const RealVector& energies() const noexcept { return energies_; }
    const ComplexMatrix& basis() const noexcept { return basis_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }

    ComplexMatrix projector(Eigen::Index m) const;
    std::vector<ComplexMatrix> projectors() const;

    /// True when no two energies lie within `tol` of each other.
    bool is_nondegenerate(double tol = 1e-9) const;

    /// Express an operator in the energy eigenbasis: V† A V.
    ComplexMatrix to_eigenbasis(const ComplexMatrix& a) const;
    ComplexMatrix from_eigenbasis(const ComplexMatrix& a) const;

private:
    ComplexMatrix matrix_;
    RealVector energies_;
    ComplexMatrix basis_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
public:
    static constexpr double kTol = 1e-10;

    /// Validates the state invariants within `tol`; throws NotAState.
    explicit DensityMatrix(ComplexMatrix matrix, double tol = kTol);

    static DensityMatrix maximally_mixed(Eigen::Index d);
    static DensityMatrix pure(const ComplexVector& psi);

    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    Eigen::Index dim() const noexcept { return matrix_.rows(); }

private:
    ComplexMatrix matrix_;
};

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

/// Pauli matrices in the energy-ordered qubit basis {|1⟩, |2⟩} with
/// σ_z|i⟩ = (-1)^i |i⟩, so |1⟩ is the ground state of H = (ω/2)σ_z.
/// σ_y is chosen so that σ_x σ_y = i σ_z, hence σ_+ = (σ_x + iσ_y)/2 = |2⟩⟨1|
/// raises the energy.
namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix plus();
ComplexMatrix minus();
} // namespace pauli

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// ϱ^(β) = e^{-βH}/Tr e^{-βH}; β = +∞ yields the ground projector.
DensityMatrix gibbs(const Hamiltonian& h, double beta);

/// Boltzmann weights e^{-βE_m}/Z in the ascending energy order.
RealVector boltzmann_weights(const Hamiltonian& h, double beta);

/// p_m = ⟨m|ϱ|m⟩ in the energy eigenbasis of `h`.
RealVector populations(const DensityMatrix& rho, const Hamiltonian& h);

DensityMatrix from_bloch(const BlochVector& r);
BlochVector to_bloch(const DensityMatrix& rho);

/// Inverse temperature of a state diagonal in the eigenbasis of a
/// nondegenerate `h`. Returns +∞ for a ground-state projector; throws
/// NotThermal, ZeroPopulation or DegenerateSpectrum otherwise.
double infer_beta(const DensityMatrix& rho, const Hamiltonian& h);

} // namespace qdb
