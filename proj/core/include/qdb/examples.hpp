// examples.hpp: the three qubit scenarios with their closed-form solutions
//
// Qubit convention: |1⟩ (index 0) is the ground state of H = (ω/2)σ_z and
// σ_+ = |2⟩⟨1| raises the energy. See states.hpp for the Pauli matrices.

#pragma once

#include <functional>

#include "qdb/dynamics.hpp"
#include "qdb/fluctuation.hpp"
#include "qdb/states.hpp"

namespace qdb {

/// H = (ω/2)σ_z.
Hamiltonian qubit_hamiltonian(double omega);

/// ½[1 - tanh(βω/2)], the excited-state population of the Gibbs state.
double excited_population(double omega, double beta);

// --- generalized amplitude damping family ----------------------------------

struct ExampleAParams {
    double omega = 1.0;
    double beta_f = 1.0;
    std::function<double(double)> q_schedule;
    std::function<double(double)> xi_schedule;
    /// Time at which ξ = 1 and q = q∞ are enforced (within 1e-10).
    double horizon = 50.0;

    double q_inf() const { return excited_population(omega, beta_f); }

    /// ξ_τ = 1 - e^{-τ}, q_τ = q∞(1 - e^{-τ}).
    static ExampleAParams defaults(double omega = 1.0, double beta_f = 1.0);

    /// Throws ScheduleOutOfRange unless ξ_0 = 0 and both schedules reach their
    /// limits at the horizon; InvalidParameter for ω <= 0 or β_f < 0.
    void validate() const;
};

/// Four Kraus operators
///   G1 = √(1-q) (|1⟩⟨1| + √(1-ξ)|2⟩⟨2|),   G2 = √((1-q)ξ) |1⟩⟨2|,
///   G3 = √q (√(1-ξ)|1⟩⟨1| + |2⟩⟨2|),       G4 = √(qξ) |2⟩⟨1|,
/// so that ⟨1|ϱ(τ)|1⟩ = (1-ξ)⟨1|ϱ(0)|1⟩ + (1-q)ξ and p(1→2) = ξq.
/// Throws ScheduleOutOfRange if q_τ or ξ_τ leaves [0, 1].
KrausChannel example_a_channel(const ExampleAParams& p, double tau);

MapFamily example_a_family(const ExampleAParams& p);

/// F(τ) = [1 - f/q∞] / [1 + f/(1-q∞)] with f = q∞ - q_τ.
double example_a_correction(const ExampleAParams& p, double tau);

/// F(τ) e^{(β_i - β_f)E}.
double example_a_ratio_oracle(const ExampleAParams& p, double tau, double beta_i, double energy);

// --- quantum optical master equation ----------------------------------------

struct ExampleBParams {
    double omega = 1.0;
    double gamma = 1.0;
    double beta_f = 1.0;

    /// (e^{βω} - 1)^{-1}
    double nbar() const;
    /// γ coth(βω/2) = γ(2n̄ + 1)
    double gamma_bar() const;
    void validate() const;
};

/// Jumps √(γ n̄) σ_+ and √(γ(n̄+1)) σ_-, H = (ω/2)σ_z.
LindbladGenerator example_b_generator(const ExampleBParams& p);

/// r_z(τ) = r_z(0)e^{-γ̄τ} - tanh(βω/2)(1 - e^{-γ̄τ}),
/// (r_x - i r_y)(τ) = (r_x - i r_y)(0) e^{-(iω + γ̄/2)τ}.
BlochVector example_b_closed_form(const ExampleBParams& p, const BlochVector& r0, double tau);

/// Most general qubit semigroup with the first QDB property w.r.t. the Gibbs
/// state: jumps √(μ e^{βω}) σ_-, √μ σ_+, √η σ_z and H = (ω/2)σ_z.
LindbladGenerator example_qdb_family(double mu, double eta, double omega, double beta_f);

// --- Bloch-form generators --------------------------------------------------

/// b = (1, r_x, r_y, r_z) = (Tr ϱ, Tr ϱσ_x, Tr ϱσ_y, Tr ϱσ_z).
/// bloch_change() is the 4×4 matrix B with b = B vec(ϱ); its rows are vec(σ_i^T)^T.
ComplexMatrix bloch_change();
/// B⁻¹, columns ½ vec(σ_i).
ComplexMatrix bloch_change_inverse();

/// Schrödinger superoperator of ∂b = M b.
SuperOperator bloch_to_superop(const RealMatrix& m);
/// Inverse of bloch_to_superop; the result is real for Hermiticity-preserving maps.
RealMatrix superop_to_bloch(const SuperOperator& s);

/// 𝕃 with ∂b = -2𝕃 b for example_qdb_family(μ, η, ω, β). With Γ = μ(1 + e^{βω}):
///   𝕃 = [[0,0,0,0], [0, η+Γ/4, ω/2, 0], [0, -ω/2, η+Γ/4, 0],
///        [μ(e^{βω}-1)/2, 0, 0, Γ/2]].
RealMatrix qdb_family_bloch(double mu, double eta, double omega, double beta_f);

struct ExampleCParams {
    double omega = 1.0;
    double nu = 0.0;
    double alpha = 0.0;
    double chi = 0.0;
    double zeta = 1.0;

    /// -(α+ν) ± i√(ω² - (α-ν)²)
    Complex k_plus() const;
    Complex k_minus() const;
    bool oscillatory() const { return omega * omega > (alpha - nu) * (alpha - nu); }
    /// Inverse temperature of the asymptotic state r_z = -χ/ζ.
    double beta_f() const;
    /// Throws InvalidParameter unless ζ > 0 and |χ/ζ| <= 1.
    void validate() const;
};

/// The parameters of qdb_family_bloch(μ, η, ω, β).
ExampleCParams example_c_qdb_point(double mu, double eta, double omega, double beta_f);

/// QDB point at μ = 0.5, η = 0.1, ω = 1, β_f = 1 with ν raised by 10%.
ExampleCParams example_c_default();

/// ω = 0.5, μ = 1, η = 0.1, β_f = 1 with ν raised by 0.8: (α-ν)² > ω².
ExampleCParams example_c_overdamped();

/// 𝕃_th = [[0,0,0,0], [0,ν,ω/2,0], [0,-ω/2,α,0], [χ,0,0,ζ]].
RealMatrix example_c_bloch_matrix(const ExampleCParams& p);

/// Superoperator of ∂b = -2𝕃_th b. Throws NotCPTP unless e^{τL} passes
/// is_cptp for τ in {0.1, 0.5, 1, 5}.
SuperOperator example_c_generator(const ExampleCParams& p);

/// r_i(τ) = u_{i+}e^{k+τ} + u_{i-}e^{k-τ} for i = x, y with
///   u_{x±} = ±[(k∓ + 2ν) r_x(0) + ω r_y(0)] / (k- - k+),
///   u_{y±} = ±[(k∓ + 2α) r_y(0) - ω r_x(0)] / (k- - k+),
/// and r_z(τ) = e^{-2ζτ} r_z(0) - (1 - e^{-2ζτ}) χ/ζ. At k+ = k- the
/// limit e^{kτ}[r(0) + τ(A - k)r(0)] is used.
BlochVector example_c_analytic(const ExampleCParams& p, const BlochVector& r0, double tau);

} // namespace qdb
