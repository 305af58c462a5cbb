// fluctuation.hpp: transition probabilities, energy-exchange statistics and
// the forward-forward fluctuation ratio

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qdb/dynamics.hpp"
#include "qdb/states.hpp"

namespace qdb {

/// p(m, n) = p(|m⟩→|n⟩; τ) = ⟨n|G_τ[|m⟩⟨m|]|n⟩ in the eigenbasis of H.
struct TransitionMatrix {
    double tau = 0.0;
    RealMatrix p;

    /// max_m |Σ_n p(m,n) - 1|
    double stochasticity_residual() const;
};

TransitionMatrix transition_matrix(const SuperOperator& map, const Hamiltonian& h,
                                   double tau = 0.0);
/// Σ_j |⟨n|G_j|m⟩|².
TransitionMatrix transition_matrix(const KrausChannel& channel, const Hamiltonian& h,
                                   double tau = 0.0);
TransitionMatrix transition_matrix(const DynamicalMap& map, const Hamiltonian& h,
                                   double tau = 0.0);

struct GapRecord {
    double energy = 0.0;  // E ≥ 0
    double p_plus = 0.0;  // P(+E; τ)
    double p_minus = 0.0; // P(-E; τ)
};

struct EnergyExchangeDistribution {
    double tau = 0.0;
    double beta_i = 0.0;
    double beta_f = 0.0;
    std::vector<GapRecord> gaps; // ascending in E, gaps[0].energy == 0
};

/// |Σ_E P(+E) + Σ_{E>0} P(-E) - 1|
double normalization_residual(const EnergyExchangeDistribution& dist);

/// Bohr frequencies closer than 1e-9·max|E_m| share a record.
EnergyExchangeDistribution exchange_distribution(const TransitionMatrix& t, const Hamiltonian& h,
                                                 double beta_i, double beta_f);
EnergyExchangeDistribution exchange_distribution(const DynamicalMap& map, const Hamiltonian& h,
                                                 double beta_i, double beta_f, double tau);

inline constexpr double kRatioFloor = 1e-13;

struct RatioEntry {
    double energy = 0.0;
    bool defined = false;   // false when P(-E) < ratio floor
    double ratio = 0.0;     // P(+E)/P(-E)
    double predicted = 0.0; // e^{(β_i - β_f)E}
    double deviation = 0.0; // |R/predicted - 1|
};

std::vector<RatioEntry> qfr_ratio(const EnergyExchangeDistribution& dist,
                                  double ratio_floor = kRatioFloor);

/// Largest deviation over defined entries (0 if there are none).
double max_deviation(const std::vector<RatioEntry>& entries);

struct PairwiseReport {
    double max_residual = 0.0;
};

/// max over m,n of |e^{-β_f E_m} p(m→n) - e^{-β_f E_n} p(n→m)|.
PairwiseReport check_pairwise_condition(const TransitionMatrix& t, const Hamiltonian& h,
                                        double beta_f);
PairwiseReport check_pairwise_condition(const DynamicalMap& map, const Hamiltonian& h,
                                        double beta_f);

struct StationarityReport {
    double max_residual = 0.0;
    bool passes(double tol = 1e-9) const { return max_residual < tol; }
};

/// max_m |Σ_n p_n(β_f) p(n→m) - p_m(β_f)|.
StationarityReport fpt_stationarity_identity(const TransitionMatrix& t, const Hamiltonian& h,
                                             double beta_f);
StationarityReport fpt_stationarity_identity(const DynamicalMap& map, const Hamiltonian& h,
                                             double beta_f);

enum class Verdict { Thermalizing, FPT, NonThermalizing };

std::string_view to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::NonThermalizing;
    double beta_f = 0.0;                    // meaningful unless NonThermalizing
    std::optional<DensityMatrix> asymptotic;
    std::string detail;
};

/// G_τ for any τ ≥ 0.
using MapFamily = std::function<DynamicalMap(double)>;

inline constexpr double kConvergenceTol = 1e-7;
inline constexpr double kFixedPointTol = 1e-8;
inline constexpr double kDefaultFamilyHorizon = 100.0;
inline constexpr unsigned kProbeSeed = 20190417u;

/// Smallest |Re λ| over the nonzero eigenvalues of a Schrödinger generator;
/// 0 if there is none.
double spectral_gap(const SuperOperator& generator);

/// 50/gap when the gap is positive, kDefaultFamilyHorizon otherwise.
double default_horizon(const SuperOperator& generator);

/// Semigroup route: unique zero eigenvalue of L, all others with Re λ < -1e-10.
/// The null vector gives ϱ∞; FPT is confirmed on `tau_grid`.
Classification classify(const SuperOperator& generator, const Hamiltonian& h,
                        const std::vector<double>& tau_grid);

/// Horizon route. Probes: pure eigenstates of H, I/d and three random states
/// drawn from kProbeSeed. Throws InconclusiveHorizon if a probe still moves by
/// more than kConvergenceTol between τ_max/2 and τ_max.
Classification classify(const MapFamily& family, const Hamiltonian& h,
                        const std::vector<double>& tau_grid,
                        double tau_max = kDefaultFamilyHorizon);

/// Discrete-time route for a single map G iterated as G^n: eigenvalue 1 must
/// be simple and every other eigenvalue must satisfy |λ| < 1 - 1e-10.
Classification classify_discrete(const SuperOperator& map, const Hamiltonian& h);

/// Probe states used by the horizon route, in order.
std::vector<DensityMatrix> probe_states(const Hamiltonian& h);

} // namespace qdb
