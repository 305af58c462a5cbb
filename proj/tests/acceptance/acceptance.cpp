// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "format.hpp"
#include "generators.hpp"
#include "model.hpp"
#include "report.hpp"

using namespace qdb;
using qdbtest::Rng;
using qdblab::fmt;
namespace fs = std::filesystem;

namespace {

const std::vector<double> kTauGrid = qdblab::default_tau_grid();
const std::vector<double> kSGrid{0.0, 0.25, 0.5, 0.75, 1.0};
constexpr double kBetaI = 2.0;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back((ok ? "" : "FAILED ") + what);
    }
};

// Running maxima feeding the structural criterion.
struct Tally {
    double cptp = 0.0;
    double normalization = 0.0;
    int semigroups = 0;
    int distributions = 0;
} tally;

SuperOperator evolve_checked(const SuperOperator& l, double tau) {
    const SuperOperator m = evolve(l, tau);
    const CptpReport r = is_cptp(m);
    tally.cptp = std::max({tally.cptp, r.cp_residual, r.tp_residual, r.hermiticity_residual});
    return m;
}

void note_semigroup() { ++tally.semigroups; }

EnergyExchangeDistribution distribution(const DynamicalMap& map, const Hamiltonian& h, double beta_i,
                                        double beta_f, double tau) {
    EnergyExchangeDistribution d = exchange_distribution(map, h, beta_i, beta_f, tau);
    tally.normalization = std::max(tally.normalization, normalization_residual(d));
    ++tally.distributions;
    return d;
}

const GapRecord& top_gap(const EnergyExchangeDistribution& d) { return d.gaps.back(); }

double qfr_deviation(const SuperOperator& l, const Hamiltonian& h, double beta_f, const std::vector<double>& taus) {
    double worst = 0.0;
    for (double tau : taus) {
        worst = std::max(worst, max_deviation(qfr_ratio(distribution(evolve_checked(l, tau), h, kBetaI, beta_f, tau))));
    }
    return worst;
}

double max_qdb1(const DensityMatrix& sigma, const SuperOperator& l, const ComplexMatrix& h, std::string* per_s = nullptr) {
    double worst = 0.0;
    for (const QdbSweepEntry& e : check_qdb1_sweep(sigma, l.dual(), h, kSGrid)) {
        worst = std::max(worst, e.report.residual);
        if (per_s) *per_s += " s=" + fmt(e.s) + ":" + fmt(e.report.residual);
    }
    return worst;
}

// --- Example A -----------------------------------------------------------

double oracle_f(double tau, double omega, double beta_f) {
    const double q_inf = 1.0 / (1.0 + std::exp(beta_f * omega));
    const double f = q_inf * std::exp(-tau);
    return (1.0 - f / q_inf) / (1.0 + f / (1.0 - q_inf));
}

double example_a_ratio(const ExampleAParams& p, double tau) {
    const auto d = distribution(example_a_channel(p, tau), qubit_hamiltonian(p.omega), kBetaI, p.beta_f, tau);
    const GapRecord& g = top_gap(d);
    return g.p_plus / g.p_minus;
}

Outcome ac1() {
    Outcome o;
    const ExampleAParams p = ExampleAParams::defaults(1.0, 1.0);
    const double law = std::exp((kBetaI - p.beta_f) * p.omega);
    double worst = 0.0;
    for (double tau : kTauGrid) {
        worst = std::max(worst, std::abs(example_a_ratio(p, tau) / law - oracle_f(tau, p.omega, p.beta_f)));
    }
    o.require(worst < 1e-10, "max |R/e^{Δβω} - F| over " + std::to_string(kTauGrid.size()) + " points = " + fmt(worst));
    const double tail = std::abs(example_a_ratio(p, kTauGrid.back()) / law - 1.0);
    o.require(tail < 1e-6, "|F(τ_max) - 1| = " + fmt(tail));
    return o;
}

Outcome ac2() {
    Outcome o;
    const ExampleAParams p = ExampleAParams::defaults(1.0, 1.0);
    ExampleAParams q = p;
    q.xi_schedule = [](double tau) { return tau / (1.0 + tau); };
    q.horizon = 1e12;
    q.validate();
    double worst = 0.0;
    for (double tau : kTauGrid) worst = std::max(worst, std::abs(example_a_ratio(p, tau) - example_a_ratio(q, tau)));
    o.require(worst < 1e-12, "max |ΔR| under ξ swap = " + fmt(worst));
    return o;
}

// --- Example B -----------------------------------------------------------

BlochVector optical_oracle(double omega, double gamma, double beta, const BlochVector& r0, double tau) {
    const double gbar = gamma / std::tanh(0.5 * beta * omega);
    const double t = std::tanh(0.5 * beta * omega);
    const Complex c0(r0.x, -r0.y);
    const Complex c = c0 * std::exp(-Complex(0.5 * gbar, omega) * tau);
    return {c.real(), -c.imag(), r0.z * std::exp(-gbar * tau) - t * (1.0 - std::exp(-gbar * tau))};
}

std::vector<BlochVector> initial_states(Rng& rng, int n) {
    std::vector<BlochVector> out{{0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {0, 1, 0}};
    while (static_cast<int>(out.size()) < n) {
        const double u = rng.uniform(-1.0, 1.0);
        const double phi = rng.uniform(0.0, 2.0 * M_PI);
        const double r = std::cbrt(rng.uniform(0.0, 1.0));
        out.push_back({r * std::sqrt(1 - u * u) * std::cos(phi), r * std::sqrt(1 - u * u) * std::sin(phi), r * u});
    }
    return out;
}

double bloch_gap(const BlochVector& a, const BlochVector& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

Outcome ac3() {
    Outcome o;
    const ExampleBParams p{1.0, 1.0, 1.0};
    const LindbladGenerator g = example_b_generator(p);
    const SuperOperator l = lindblad_superop(g);
    const Hamiltonian& h = g.hamiltonian();
    note_semigroup();
    Rng rng(9001);
    const auto starts = initial_states(rng, 8);
    double worst = 0.0;
    for (double tau : kTauGrid) {
        const SuperOperator m = evolve_checked(l, tau);
        for (const BlochVector& r0 : starts) {
            const BlochVector num = to_bloch(qdb::apply(m, from_bloch(r0)));
            worst = std::max(worst, bloch_gap(num, optical_oracle(p.omega, p.gamma, p.beta_f, r0, tau)));
            worst = std::max(worst, bloch_gap(num, example_b_closed_form(p, r0, tau)));
        }
    }
    o.require(worst < 1e-9, "closed form vs evolve = " + fmt(worst));

    const Classification c = classify(l, h, kTauGrid);
    o.require(c.verdict == Verdict::FPT, "classification " + std::string(to_string(c.verdict)));
    // β from the ground/excited population ratio of the asymptotic state.
    const RealVector pop = populations(*c.asymptotic, h);
    const double beta_pop = std::log(pop(0) / pop(1)) / p.omega;
    const double err = std::max({std::abs(c.beta_f - p.beta_f), std::abs(infer_beta(*c.asymptotic, h) - p.beta_f),
                                 std::abs(beta_pop - p.beta_f)});
    o.require(err < 1e-8, "infer_beta error = " + fmt(err));

    std::string per_s;
    const double q1 = max_qdb1(gibbs(h, p.beta_f), l, h.matrix(), &per_s);
    o.require(q1 < 1e-10, "QDB1 residual max over s = " + fmt(q1) + " (" + per_s.substr(1) + ")");
    const double dev = qfr_deviation(l, h, p.beta_f, kTauGrid);
    o.require(dev < 1e-9, "QFR deviation = " + fmt(dev));
    return o;
}

// --- Example C -----------------------------------------------------------

Outcome ac4() {
    Outcome o;
    Rng rng(9002);
    const auto starts = initial_states(rng, 8);
    for (const ExampleCParams& p : {example_c_default(), example_c_overdamped()}) {
        const SuperOperator l = example_c_generator(p);
        note_semigroup();
        double worst = 0.0;
        for (double tau : kTauGrid) {
            const SuperOperator m = evolve_checked(l, tau);
            for (const BlochVector& r0 : starts) {
                worst = std::max(worst, bloch_gap(to_bloch(qdb::apply(m, from_bloch(r0))), example_c_analytic(p, r0, tau)));
            }
        }
        o.require(worst < 1e-9, std::string(p.oscillatory() ? "oscillatory" : "overdamped") +
                                    " analytic vs evolve = " + fmt(worst));
    }

    const ExampleCParams p = example_c_default();
    const Hamiltonian h = qubit_hamiltonian(p.omega);
    const SuperOperator l = example_c_generator(p);
    const DensityMatrix sigma = gibbs(h, p.beta_f());
    std::string per_s;
    const double q1 = max_qdb1(sigma, l, h.matrix(), &per_s);
    o.require(q1 > 1e-3, "ν≠α QDB1 residual max over s = " + fmt(q1) + " (" + per_s.substr(1) +
                             "; the s=0.5 residual is at roundoff)");

    const TimeReversal t = TimeReversal::conjugation(h.basis());
    double q2 = 0.0;
    std::string per_s2;
    for (double s : kSGrid) {
        double r = 0.0;
        for (double tau : kDefaultQdb2Taus) {
            r = std::max(r, check_qdb2(WeightedSpace(sigma, s), evolve(l, tau).heisenberg(), t).residual);
        }
        q2 = std::max(q2, r);
        per_s2 += " s=" + fmt(s) + ":" + fmt(r);
    }
    o.require(q2 >= kQdbTol, "ν≠α QDB2 fails, residual max over s = " + fmt(q2) + " (" + per_s2.substr(1) + ")");
    const double dev = qfr_deviation(l, h, p.beta_f(), kTauGrid);
    o.require(dev < 1e-9, "ν≠α QFR deviation = " + fmt(dev));
    return o;
}

// --- property suites -----------------------------------------------------

Outcome ac5() {
    Outcome o;
    Rng rng(9003);
    int qdb_fail = 0;
    double worst_qdb = 0.0;
    double worst_pair = 0.0;
    for (int k = 0; k < 50; ++k) {
        const auto pt = qdbtest::random_qdb_point(rng);
        const LindbladGenerator g = pt.generator();
        const SuperOperator l = lindblad_superop(g);
        const Hamiltonian& h = g.hamiltonian();
        note_semigroup();
        for (const QdbSweepEntry& e : check_qdb1_sweep(gibbs(h, pt.beta), l.dual(), h.matrix(), kSGrid)) {
            qdb_fail += e.report.passes ? 0 : 1;
            worst_qdb = std::max(worst_qdb, e.report.residual);
        }
        for (double tau : {0.1, 1.0, 10.0}) {
            worst_pair = std::max(worst_pair, check_pairwise_condition(evolve_checked(l, tau), h, pt.beta).max_residual);
        }
    }
    o.require(qdb_fail == 0, "50 generators, QDB1 failures " + std::to_string(qdb_fail) + ", max residual " + fmt(worst_qdb));
    o.require(worst_pair < 1e-10, "pairwise residual at τ∈{0.1,1,10} = " + fmt(worst_pair));
    return o;
}

Outcome ac6() {
    Outcome o;
    Rng rng(9004);
    int not_thermal = 0;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto c = qdbtest::random_thermalizing(rng, 2 + k % 2);
        note_semigroup();
        const Classification cls = classify(c.generator, c.system, {0.1, 1.0});
        not_thermal += cls.verdict == Verdict::NonThermalizing ? 1 : 0;
        const double horizon = default_horizon(c.generator);
        worst = std::max(worst, max_deviation(qfr_ratio(
                                    distribution(evolve_checked(c.generator, horizon), c.system, kBetaI * c.beta, c.beta, horizon))));
    }
    o.require(not_thermal == 0, "20 generators (10 qubit, 10 qutrit), non-thermalizing " + std::to_string(not_thermal));
    o.require(worst < 1e-6, "QFR deviation at τ_max = " + fmt(worst));
    return o;
}

Outcome ac7() {
    Outcome o;
    Rng rng(9005);
    int not_fpt = 0;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto q = qdbtest::random_fpt_qubit(rng);
        const SuperOperator l = lindblad_superop(q.generator);
        const Hamiltonian& h = q.generator.hamiltonian();
        note_semigroup();
        not_fpt += classify(l, h, kTauGrid).verdict == Verdict::FPT ? 0 : 1;
        worst = std::max(worst, qfr_deviation(l, h, q.beta, kTauGrid));
    }
    o.require(not_fpt == 0, "20 generators, not FPT " + std::to_string(not_fpt));
    o.require(worst < 1e-9, "QFR deviation on the grid = " + fmt(worst));
    return o;
}

// --- structural invariants -----------------------------------------------

double spectral_norm(const ComplexMatrix& a) { return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues()(0); }

Outcome ac8() {
    Outcome o;
    Rng rng(9006);

    // Extra semigroups on top of those already evolved.
    for (int k = 0; k < 10; ++k) {
        const SuperOperator l = lindblad_superop(rng.generator(2 + k % 3));
        note_semigroup();
        for (double tau : {0.1, 1.0, 10.0}) {
            const SuperOperator m = evolve_checked(l, tau);
            distribution(m, rng.hamiltonian(l.dim()), 0.5, 1.5, tau);
        }
    }
    o.require(tally.cptp < 1e-9, "CPTP residual over " + std::to_string(tally.semigroups) + " semigroups = " + fmt(tally.cptp));

    double duality = 0.0;
    for (int k = 0; k < 100; ++k) {
        const LindbladGenerator g = rng.generator(2 + k % 3);
        const Eigen::Index d = g.dim();
        const ComplexMatrix sigma = rng.state(d).matrix();
        const ComplexMatrix a = rng.matrix(d, d);
        duality = std::max(duality, std::abs((lindblad_superop(g)(sigma) * a).trace() - (sigma * dual_superop(g)(a)).trace()));
    }
    o.require(duality < 1e-10, "duality on 100 pairs = " + fmt(duality));

    double adj = 0.0;
    for (double s : kSGrid) {
        const Eigen::Index d = 3;
        const WeightedSpace space(rng.state(d), s);
        const SuperOperator op(rng.matrix(d * d, d * d), Picture::Heisenberg);
        const SuperOperator star = adjoint(space, op);
        for (Eigen::Index k = 0; k < d * d; ++k) {
            for (Eigen::Index j = 0; j < d * d; ++j) {
                const ComplexMatrix a = matrix_unit(d, k % d, k / d);
                const ComplexMatrix b = matrix_unit(d, j % d, j / d);
                adj = std::max(adj, std::abs(inner(space, a, op(b)) - inner(space, star(a), b)));
            }
        }
    }
    o.require(adj < 1e-10, "adjoint relation on matrix units = " + fmt(adj));

    std::vector<double> props(7, 0.0);
    for (Eigen::Index d : {2, 3}) {
        const Hamiltonian h = rng.hamiltonian(d);
        std::vector<TimeReversal> kinds{TimeReversal::conjugation(h.basis()), TimeReversal::conjugation(d)};
        if (d == 2) {
            kinds.push_back(TimeReversal::spin_half());
            kinds.push_back(TimeReversal::custom(Eigen::Vector2cd(1.0, std::exp(kI * 0.7)).asDiagonal(), h.basis()));
        }
        for (const TimeReversal& t : kinds) {
            for (int trial = 0; trial < 20; ++trial) {
                const ComplexMatrix a = rng.matrix(d, d);
                const ComplexMatrix b = rng.matrix(d, d);
                const Complex x(rng.normal(), rng.normal());
                const Complex y(rng.normal(), rng.normal());
                const double v[7] = {
                    max_abs(t(x * a + y * b) - (x * t(a) + y * t(b))),
                    std::abs(spectral_norm(t(a)) - spectral_norm(a)),
                    std::abs(t(a).trace() - a.trace()),
                    max_abs(t(ComplexMatrix(a.adjoint())) - t(a).adjoint()),
                    max_abs(t(a * b) - t(b) * t(a)),
                    max_abs(t.superop()(a) - t(a)),
                    max_abs(t(t(a)) - a),
                };
                for (int i = 0; i < 7; ++i) props[i] = std::max(props[i], v[i]);
            }
        }
    }
    const char* roman[7] = {"i", "ii", "iii", "iv", "v", "vi", "vii"};
    for (int i = 0; i < 7; ++i) o.require(props[i] < 1e-12, std::string("T property (") + roman[i] + ") = " + fmt(props[i]));

    double rs = 0.0;
    for (int k = 0; k < 10; ++k) {
        const auto pt = qdbtest::random_qdb_point(rng);
        const LindbladGenerator g = pt.generator();
        const SuperOperator dual = dual_superop(g);
        for (double s : kSGrid) {
            const WeightedSpace space(gibbs(g.hamiltonian(), pt.beta), s);
            const SuperOperator r = rs_map(space);
            rs = std::max(rs, max_abs(compose(dual, r).matrix() - compose(r, dual).matrix()) / max_abs(dual.matrix()));
        }
    }
    o.require(rs < 1e-10, "G♯∘R_s - R_s∘G♯ for QDB generators = " + fmt(rs));
    o.require(tally.normalization < 1e-9, "normalization over " + std::to_string(tally.distributions) +
                                              " distributions = " + fmt(tally.normalization));
    return o;
}

// --- CLI -----------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& args, const fs::path& out) {
    const std::string cmd = std::string(QDBLAB_BIN) + " " + args + " >" + out.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome ac9() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "qdblab-acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    const int c1 = run("example b", dir / "b1.csv");
    const int c2 = run("example b", dir / "b2.csv");
    const std::string b1 = slurp(dir / "b1.csv");
    o.require(c1 == 0 && c2 == 0 && !b1.empty() && b1 == slurp(dir / "b2.csv"),
              "example b twice: " + std::to_string(b1.size()) + " identical bytes");

    // Library roundtrip model → JSON → model, then through the binary via a file.
    bool same = true;
    for (const char* name : {"b", "c"}) {
        const qdblab::RunConfig cfg = qdblab::RunConfig::defaults();
        const qdblab::Model m = qdblab::build_example(name, cfg, {});
        const qdblab::Model back = qdblab::parse_model(nlohmann::json::parse(qdblab::to_json(m).dump()), m.name);
        same = same && qdblab::analyze(m, cfg).verdict.dump() == qdblab::analyze(back, cfg).verdict.dump();

        const fs::path file = dir / (std::string(name) + ".json");
        const fs::path a = dir / (std::string(name) + "-example");
        const fs::path b = dir / (std::string(name) + "-check");
        same = same && run("export " + std::string(name) + " " + file.string(), dir / "log") == 0;
        same = same && run("example " + std::string(name) + " --out " + a.string(), dir / "log") == 0;
        same = same && run("check " + file.string() + " --out " + b.string(), dir / "log") == 0;
        auto va = nlohmann::json::parse(slurp(a / "verdict.json"));
        auto vb = nlohmann::json::parse(slurp(b / "verdict.json"));
        va.erase("model");
        vb.erase("model");
        same = same && va == vb && slurp(a / "report.csv") == slurp(b / "report.csv");
    }
    o.require(same, "export/check roundtrip preserves verdicts for b and c");
    fs::remove_all(dir);
    return o;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"AC1 Example A ratio law", ac1},
        {"AC2 Example A ξ-independence", ac2},
        {"AC3 Example B", ac3},
        {"AC4 Example C QFR without QDB", ac4},
        {"AC5 QDB family pairwise condition", ac5},
        {"AC6 asymptotic QFR for thermalizing generators", ac6},
        {"AC7 finite-time QFR for FPT qubits", ac7},
        {"AC8 structural invariants", ac8},
        {"AC9 CLI determinism and roundtrip", ac9},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        failed += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << '\n';
        for (const std::string& n : o.notes) std::cout << "    " << n << '\n';
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << " (seed "
              << qdbtest::seed() << ")\n";
    return failed == 0 ? 0 : 1;
}
