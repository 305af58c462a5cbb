#include "qdb/fluctuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qdb/error.hpp"

namespace qdb {

namespace {

void require_same_dim(Eigen::Index a, Eigen::Index b) {
    if (a != b) {
        throw Error(ErrorKind::DimensionMismatch, "map and Hamiltonian dimensions differ");
    }
}

void require_transition_dim(const TransitionMatrix& t, const Hamiltonian& h) {
    if (t.p.rows() != h.dim() || t.p.cols() != h.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "transition matrix and Hamiltonian differ");
    }
}

DensityMatrix normalized_state(const ComplexMatrix& m) {
    const ComplexMatrix herm = hermitian_part(m);
    return DensityMatrix(herm / herm.trace().real(), 1e-8);
}

} // namespace

double TransitionMatrix::stochasticity_residual() const {
    return (p.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

TransitionMatrix transition_matrix(const SuperOperator& map, const Hamiltonian& h, double tau) {
    require_same_dim(map.dim(), h.dim());
    const SuperOperator s = map.schrodinger();
    const Eigen::Index d = h.dim();
    TransitionMatrix out{tau, RealMatrix::Zero(d, d)};
    for (Eigen::Index m = 0; m < d; ++m) {
        const RealVector diag = h.to_eigenbasis(s(h.projector(m))).diagonal().real();
        out.p.row(m) = diag.transpose();
    }
    return out;
}

TransitionMatrix transition_matrix(const KrausChannel& channel, const Hamiltonian& h,
                                   double tau) {
    require_same_dim(channel.dim(), h.dim());
    const Eigen::Index d = h.dim();
    TransitionMatrix out{tau, RealMatrix::Zero(d, d)};
    for (const ComplexMatrix& g : channel.ops()) {
        const ComplexMatrix in_basis = h.to_eigenbasis(g);
        // in_basis(n, m) = ⟨n|G|m⟩
        out.p += in_basis.cwiseAbs2().transpose();
    }
    return out;
}

TransitionMatrix transition_matrix(const DynamicalMap& map, const Hamiltonian& h, double tau) {
    return std::visit([&](const auto& m) { return transition_matrix(m, h, tau); }, map);
}

double normalization_residual(const EnergyExchangeDistribution& dist) {
    double total = 0.0;
    for (const GapRecord& g : dist.gaps) {
        total += g.p_plus;
        if (g.energy > 0.0) {
            total += g.p_minus;
        }
    }
    return std::abs(total - 1.0);
}

EnergyExchangeDistribution exchange_distribution(const TransitionMatrix& t, const Hamiltonian& h,
                                                 double beta_i, double beta_f) {
    require_transition_dim(t, h);
    const RealVector& e = h.energies();
    const Eigen::Index d = h.dim();
    const double gap_tol = 1e-9 * e.cwiseAbs().maxCoeff();

    std::vector<double> diffs;
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            diffs.push_back(std::abs(e(n) - e(m)));
        }
    }
    std::sort(diffs.begin(), diffs.end());
    // cluster representatives: lower edge and mean of each cluster
    std::vector<double> lower;
    std::vector<double> centre;
    std::vector<int> count;
    for (double x : diffs) {
        if (!lower.empty() && x - lower.back() <= gap_tol) {
            centre.back() += x;
            ++count.back();
        } else {
            lower.push_back(x);
            centre.push_back(x);
            count.push_back(1);
        }
    }

    EnergyExchangeDistribution out;
    out.tau = t.tau;
    out.beta_i = beta_i;
    out.beta_f = beta_f;
    for (std::size_t k = 0; k < lower.size(); ++k) {
        out.gaps.push_back({k == 0 && lower[0] <= gap_tol ? 0.0 : centre[k] / count[k], 0.0, 0.0});
    }
    auto find_gap = [&](double x) {
        const auto it = std::upper_bound(lower.begin(), lower.end(), x);
        return static_cast<std::size_t>(std::distance(lower.begin(), it)) - 1;
    };

    const RealVector p0 = boltzmann_weights(h, beta_i);
    for (Eigen::Index m = 0; m < d; ++m) {
        for (Eigen::Index n = 0; n < d; ++n) {
            const double de = e(n) - e(m);
            GapRecord& g = out.gaps[find_gap(std::abs(de))];
            if (std::abs(de) <= gap_tol) {
                // no exchange: P(+0) and P(-0) are the same sum
                g.p_plus += p0(m) * t.p(m, n);
                g.p_minus += p0(m) * t.p(m, n);
            } else if (de > 0.0) {
                // m → n absorbs de; n → m releases it
                g.p_plus += p0(m) * t.p(m, n);
                g.p_minus += p0(n) * t.p(n, m);
            }
        }
    }
    return out;
}

EnergyExchangeDistribution exchange_distribution(const DynamicalMap& map, const Hamiltonian& h,
                                                 double beta_i, double beta_f, double tau) {
    if (std::isnan(beta_i) || beta_i < 0.0) {
        throw Error(ErrorKind::InvalidParameter, "β_i must be >= 0");
    }
    return exchange_distribution(transition_matrix(map, h, tau), h, beta_i, beta_f);
}

std::vector<RatioEntry> qfr_ratio(const EnergyExchangeDistribution& dist, double ratio_floor) {
    std::vector<RatioEntry> out;
    out.reserve(dist.gaps.size());
    const double dbeta = dist.beta_i - dist.beta_f;
    for (const GapRecord& g : dist.gaps) {
        RatioEntry r;
        r.energy = g.energy;
        r.predicted = g.energy == 0.0 ? 1.0 : std::exp(dbeta * g.energy);
        if (g.p_minus < ratio_floor) {
            r.defined = false;
            r.ratio = std::numeric_limits<double>::quiet_NaN();
            r.deviation = std::numeric_limits<double>::quiet_NaN();
        } else {
            r.defined = true;
            r.ratio = g.p_plus / g.p_minus;
            r.deviation = std::abs(r.ratio / r.predicted - 1.0);
        }
        out.push_back(r);
    }
    return out;
}

double max_deviation(const std::vector<RatioEntry>& entries) {
    double worst = 0.0;
    for (const RatioEntry& r : entries) {
        if (r.defined) {
            worst = std::max(worst, r.deviation);
        }
    }
    return worst;
}

PairwiseReport check_pairwise_condition(const TransitionMatrix& t, const Hamiltonian& h,
                                        double beta_f) {
    require_transition_dim(t, h);
    const RealVector& e = h.energies();
    PairwiseReport report;
    for (Eigen::Index m = 0; m < h.dim(); ++m) {
        for (Eigen::Index n = 0; n < h.dim(); ++n) {
            const double lhs = std::exp(-beta_f * e(m)) * t.p(m, n);
            const double rhs = std::exp(-beta_f * e(n)) * t.p(n, m);
            report.max_residual = std::max(report.max_residual, std::abs(lhs - rhs));
        }
    }
    return report;
}

PairwiseReport check_pairwise_condition(const DynamicalMap& map, const Hamiltonian& h,
                                        double beta_f) {
    return check_pairwise_condition(transition_matrix(map, h), h, beta_f);
}

StationarityReport fpt_stationarity_identity(const TransitionMatrix& t, const Hamiltonian& h,
                                             double beta_f) {
    require_transition_dim(t, h);
    const RealVector p = boltzmann_weights(h, beta_f);
    const RealVector pushed = t.p.transpose() * p;
    return {(pushed - p).cwiseAbs().maxCoeff()};
}

StationarityReport fpt_stationarity_identity(const DynamicalMap& map, const Hamiltonian& h,
                                             double beta_f) {
    return fpt_stationarity_identity(transition_matrix(map, h), h, beta_f);
}

std::string_view to_string(Verdict v) {
    switch (v) {
    case Verdict::Thermalizing: return "Thermalizing";
    case Verdict::FPT: return "FPT";
    case Verdict::NonThermalizing: return "NonThermalizing";
    }
    return "?";
}

double spectral_gap(const SuperOperator& generator) {
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(generator.schrodinger().matrix(), false);
    double gap = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const Complex l = es.eigenvalues()(k);
        if (std::abs(l) < 1e-10) {
            continue;
        }
        const double re = std::abs(l.real());
        if (re > 1e-10 && (gap == 0.0 || re < gap)) {
            gap = re;
        }
    }
    return gap;
}

double default_horizon(const SuperOperator& generator) {
    const double gap = spectral_gap(generator);
    return gap > 0.0 ? 50.0 / gap : kDefaultFamilyHorizon;
}

namespace {

// Fills beta_f and the FPT/Thermalizing verdict from an asymptotic state.
Classification finish(DensityMatrix rho_inf, const Hamiltonian& h,
                      const std::function<ComplexMatrix(double, const ComplexMatrix&)>& step,
                      const std::vector<double>& tau_grid) {
    Classification c;
    try {
        c.beta_f = infer_beta(rho_inf, h);
    } catch (const Error& err) {
        c.verdict = Verdict::NonThermalizing;
        c.detail = std::string("asymptotic state is not thermal: ") + err.what();
        c.asymptotic = std::move(rho_inf);
        return c;
    }
    double worst = 0.0;
    for (double tau : tau_grid) {
        worst = std::max(worst, trace_norm(step(tau, rho_inf.matrix()) - rho_inf.matrix()));
    }
    c.verdict = worst < kFixedPointTol ? Verdict::FPT : Verdict::Thermalizing;
    c.detail = "fixed-point residual " + std::to_string(worst);
    c.asymptotic = std::move(rho_inf);
    return c;
}

} // namespace

Classification classify(const SuperOperator& generator, const Hamiltonian& h,
                        const std::vector<double>& tau_grid) {
    const SuperOperator l = generator.schrodinger();
    require_same_dim(l.dim(), h.dim());
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(l.matrix(), false);
    int zeros = 0;
    bool stable = true;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const Complex lam = es.eigenvalues()(k);
        if (std::abs(lam) < 1e-10) {
            ++zeros;
        } else if (!(lam.real() < -1e-10)) {
            stable = false;
        }
    }
    if (zeros != 1 || !stable) {
        Classification c;
        c.detail = "spectrum has " + std::to_string(zeros) + " zero eigenvalue(s)" +
                   (stable ? "" : " and undamped modes");
        return c;
    }
    const Eigen::JacobiSVD<ComplexMatrix> svd(l.matrix(), Eigen::ComputeFullV);
    const ComplexVector v = svd.matrixV().col(svd.matrixV().cols() - 1);
    const Eigen::Index d = l.dim();
    DensityMatrix rho_inf = normalized_state(unvec(v, d, d));
    return finish(std::move(rho_inf), h,
                  [&](double tau, const ComplexMatrix& x) { return evolve(l, tau)(x); },
                  tau_grid);
}

Classification classify_discrete(const SuperOperator& map, const Hamiltonian& h) {
    const SuperOperator g = map.schrodinger();
    require_same_dim(g.dim(), h.dim());
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(g.matrix(), false);
    int ones = 0;
    bool contracting = true;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const Complex lam = es.eigenvalues()(k);
        if (std::abs(lam - 1.0) < 1e-10) {
            ++ones;
        } else if (!(std::abs(lam) < 1.0 - 1e-10)) {
            contracting = false;
        }
    }
    if (ones != 1 || !contracting) {
        Classification c;
        c.detail = "map has " + std::to_string(ones) + " unit eigenvalue(s)" +
                   (contracting ? "" : " and non-decaying modes");
        return c;
    }
    const Eigen::Index d = g.dim();
    const ComplexMatrix shifted = g.matrix() - identity(d * d);
    const Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
    const ComplexVector v = svd.matrixV().col(svd.matrixV().cols() - 1);
    return finish(normalized_state(unvec(v, d, d)), h,
                  [&](double, const ComplexMatrix& x) { return g(x); }, {1.0});
}

std::vector<DensityMatrix> probe_states(const Hamiltonian& h) {
    const Eigen::Index d = h.dim();
    std::vector<DensityMatrix> out;
    for (Eigen::Index m = 0; m < d; ++m) {
        out.emplace_back(h.projector(m));
    }
    out.push_back(DensityMatrix::maximally_mixed(d));
    std::mt19937_64 rng(kProbeSeed);
    std::normal_distribution<double> gauss;
    for (int k = 0; k < 3; ++k) {
        ComplexMatrix g(d, d);
        for (Eigen::Index j = 0; j < d; ++j) {
            for (Eigen::Index i = 0; i < d; ++i) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                g(i, j) = Complex(re, im);
            }
        }
        const ComplexMatrix rho = g * g.adjoint();
        out.push_back(normalized_state(rho));
    }
    return out;
}

Classification classify(const MapFamily& family, const Hamiltonian& h,
                        const std::vector<double>& tau_grid, double tau_max) {
    if (!(tau_max > 0.0) || std::isinf(tau_max)) {
        throw Error(ErrorKind::InvalidParameter, "τ_max must be positive and finite");
    }
    const SuperOperator far = as_superop(family(tau_max));
    const SuperOperator half = as_superop(family(0.5 * tau_max));
    require_same_dim(far.dim(), h.dim());

    const std::vector<DensityMatrix> probes = probe_states(h);
    std::vector<ComplexMatrix> finals;
    for (const DensityMatrix& p : probes) {
        const ComplexMatrix end = far(p.matrix());
        const double moving = trace_norm(end - half(p.matrix()));
        if (moving >= kConvergenceTol) {
            throw Error(ErrorKind::InconclusiveHorizon,
                        "probe still moves by " + std::to_string(moving) + " at τ_max = " +
                            std::to_string(tau_max));
        }
        finals.push_back(end);
    }
    const ComplexMatrix reference = far(DensityMatrix::maximally_mixed(h.dim()).matrix());
    double spread = 0.0;
    for (const ComplexMatrix& f : finals) {
        spread = std::max(spread, trace_norm(f - reference));
    }
    if (spread >= kConvergenceTol) {
        Classification c;
        c.detail = "probe states converge to different limits, spread " + std::to_string(spread);
        return c;
    }
    return finish(normalized_state(reference), h,
                  [&](double tau, const ComplexMatrix& x) { return as_superop(family(tau))(x); },
                  tau_grid);
}

} // namespace qdb
