#include "report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "format.hpp"

namespace qdblab {

using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ordered_json number_or_null(double x) {
    return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr);
}

std::string pass_fail(bool ok) { return ok ? "pass" : "fail"; }

qdb::SuperOperator map_at(const Model& m, double tau) {
    if (m.generator) {
        return qdb::evolve(*m.generator, tau);
    }
    return qdb::as_superop(m.family(tau));
}

// Discrete maps are reported for a single step.
std::vector<double> report_times(const Model& m, const RunConfig& cfg) {
    if (m.kraus) {
        return {1.0};
    }
    return cfg.tau_grid;
}

qdb::Classification run_classification(const Model& m, const RunConfig& cfg, std::string& status) {
    try {
        qdb::Classification c;
        if (m.generator) {
            c = qdb::classify(*m.generator, m.hamiltonian, cfg.tau_grid);
        } else if (m.kraus) {
            c = qdb::classify_discrete(qdb::superop_from_channel(*m.kraus), m.hamiltonian);
        } else {
            c = qdb::classify(m.family, m.hamiltonian, cfg.tau_grid, m.horizon);
        }
        status = std::string(qdb::to_string(c.verdict));
        return c;
    } catch (const qdb::Error& e) {
        if (e.kind() != qdb::ErrorKind::InconclusiveHorizon) {
            throw;
        }
        status = "Inconclusive";
        qdb::Classification c;
        c.detail = e.what();
        return c;
    }
}

} // namespace

Report analyze(const Model& model, const RunConfig& cfg) {
    const qdb::Hamiltonian& h = model.hamiltonian;
    Report report;
    ordered_json& v = report.verdict;

    std::string status;
    const qdb::Classification cls = run_classification(model, cfg, status);
    const bool thermal = cls.verdict != qdb::Verdict::NonThermalizing && status != "Inconclusive";
    double beta_ref = cfg.beta_f;
    if (model.beta_f) {
        beta_ref = *model.beta_f;
    } else if (thermal) {
        beta_ref = cls.beta_f;
    }

    v["model"] = model.name;
    v["kind"] = model.kind;
    v["classification"] = status;
    v["asymptotic_beta"] = thermal ? number_or_null(cls.beta_f) : ordered_json(nullptr);
    v["classification_detail"] = cls.detail;
    v["beta_i"] = cfg.beta_i;
    v["reference_beta"] = number_or_null(beta_ref);

    // exchange statistics over the τ grid
    double qfr_dev = 0.0;
    double pairwise = 0.0;
    double stationarity = 0.0;
    double cptp = 0.0;
    for (double tau : report_times(model, cfg)) {
        const qdb::SuperOperator g = model.kraus ? qdb::superop_from_channel(*model.kraus) : map_at(model, tau);
        const qdb::CptpReport c = qdb::is_cptp(g);
        cptp = std::max({cptp, c.cp_residual, c.tp_residual, c.hermiticity_residual});
        if (!c.passes(cfg.tol.cptp)) {
            throw InternalCheckFailure("map at τ = " + fmt(tau) + " fails the CPTP check");
        }
        const qdb::TransitionMatrix t = model.kraus
                                            ? qdb::transition_matrix(*model.kraus, h, tau)
                                            : qdb::transition_matrix(g, h, tau);
        if (t.stochasticity_residual() > 1e-9) {
            throw InternalCheckFailure("transition matrix at τ = " + fmt(tau) + " is not stochastic");
        }
        const qdb::EnergyExchangeDistribution d = qdb::exchange_distribution(t, h, cfg.beta_i, beta_ref);
        if (qdb::normalization_residual(d) > 1e-9) {
            throw InternalCheckFailure("exchange distribution at τ = " + fmt(tau) + " is not normalized");
        }
        if (std::isfinite(beta_ref)) {
            pairwise = std::max(pairwise, qdb::check_pairwise_condition(t, h, beta_ref).max_residual);
        }
        stationarity = std::max(stationarity, qdb::fpt_stationarity_identity(t, h, beta_ref).max_residual);
        const double f = model.correction ? model.correction(tau) : kNaN;
        for (const qdb::RatioEntry& r : qdb::qfr_ratio(d)) {
            const qdb::GapRecord* gap = nullptr;
            for (const qdb::GapRecord& candidate : d.gaps) {
                if (candidate.energy == r.energy) {
                    gap = &candidate;
                }
            }
            report.rows.push_back({tau, r.energy, gap->p_plus, gap->p_minus, r.ratio, r.predicted,
                                   r.deviation, f});
            if (r.defined && r.energy > 0.0) {
                qfr_dev = std::max(qfr_dev, r.deviation);
            }
        }
    }

    // detailed balance over the s grid, Σ = ϱ^(β_ref)
    const bool full_rank = std::isfinite(beta_ref);
    ordered_json qdb1;
    if (model.generator && full_rank) {
        const qdb::DensityMatrix sigma = qdb::gibbs(h, beta_ref);
        const auto sweep = qdb::check_qdb1_sweep(sigma, model.generator->dual(), h.matrix(),
                                                 cfg.s_grid, cfg.tol.qdb);
        bool all = true;
        double worst = 0.0;
        ordered_json per_s = ordered_json::array();
        for (const qdb::QdbSweepEntry& e : sweep) {
            all = all && e.report.passes;
            worst = std::max(worst, e.report.residual);
            per_s.push_back({{"s", e.s}, {"residual", e.report.residual}, {"pass", e.report.passes}});
        }
        qdb1["status"] = pass_fail(all);
        qdb1["max_residual"] = worst;
        qdb1["per_s"] = per_s;
    } else {
        qdb1["status"] = "not_applicable";
    }
    v["qdb1"] = qdb1;

    ordered_json qdb2;
    if (full_rank) {
        const qdb::DensityMatrix sigma = qdb::gibbs(h, beta_ref);
        const qdb::TimeReversal tr = qdb::TimeReversal::conjugation(h.basis());
        const std::vector<double> taus = model.kraus ? std::vector<double>{1.0} : qdb::kDefaultQdb2Taus;
        std::vector<qdb::SuperOperator> maps;
        for (double tau : taus) {
            maps.push_back((model.kraus ? qdb::superop_from_channel(*model.kraus) : map_at(model, tau)).heisenberg());
        }
        bool all = true;
        double worst = 0.0;
        ordered_json per_s = ordered_json::array();
        for (double s : cfg.s_grid) {
            const qdb::WeightedSpace space(sigma, s);
            double r = 0.0;
            for (const qdb::SuperOperator& g : maps) {
                r = std::max(r, qdb::check_qdb2(space, g, tr, cfg.tol.qdb).residual);
            }
            const bool ok = r < cfg.tol.qdb;
            all = all && ok;
            worst = std::max(worst, r);
            per_s.push_back({{"s", s}, {"residual", r}, {"pass", ok}});
        }
        qdb2["status"] = pass_fail(all);
        qdb2["taus"] = taus;
        qdb2["max_residual"] = worst;
        qdb2["per_s"] = per_s;
    } else {
        qdb2["status"] = "not_applicable";
    }
    v["qdb2"] = qdb2;

    v["qfr"] = pass_fail(qfr_dev < cfg.tol.qfr);
    v["qfr_max_deviation"] = qfr_dev;
    v["pairwise_max_residual"] = full_rank ? ordered_json(pairwise) : ordered_json(nullptr);
    v["stationarity_max_residual"] = stationarity;
    v["cptp_max_residual"] = cptp;
    v["tolerances"] = {{"qdb", cfg.tol.qdb}, {"qfr", cfg.tol.qfr}, {"cptp", cfg.tol.cptp}};
    return report;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "tau,E,p_plus,p_minus,R,predicted,deviation,F_tau\n";
    for (const ReportRow& r : rows) {
        out << fmt(r.tau) << ',' << fmt(r.energy) << ',' << fmt(r.p_plus) << ',' << fmt(r.p_minus)
            << ',' << (std::isnan(r.ratio) ? "undefined" : fmt(r.ratio)) << ',' << fmt(r.predicted)
            << ',' << (std::isnan(r.deviation) ? "undefined" : fmt(r.deviation)) << ','
            << (std::isnan(r.correction) ? "" : fmt(r.correction)) << '\n';
    }
}

ordered_json rows_to_json(const std::vector<ReportRow>& rows) {
    ordered_json out;
    out["columns"] = {"tau", "E", "p_plus", "p_minus", "R", "predicted", "deviation", "F_tau"};
    ordered_json data = ordered_json::array();
    for (const ReportRow& r : rows) {
        data.push_back({r.tau, r.energy, r.p_plus, r.p_minus, number_or_null(r.ratio), r.predicted,
                        number_or_null(r.deviation), number_or_null(r.correction)});
    }
    out["rows"] = data;
    return out;
}

void emit(const Report& report, const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_dir.empty()) {
        if (cfg.format == Format::Csv) {
            write_csv(out, report.rows);
        } else {
            ordered_json both;
            both["report"] = rows_to_json(report.rows);
            both["verdict"] = report.verdict;
            out << both.dump(2) << '\n';
        }
        return;
    }
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) {
        throw UsageError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
    }
    const fs::path dir(cfg.out_dir);
    if (cfg.format == Format::Csv) {
        std::ofstream f(dir / "report.csv");
        write_csv(f, report.rows);
    } else {
        std::ofstream f(dir / "report.json");
        f << rows_to_json(report.rows).dump(2) << '\n';
    }
    std::ofstream verdict(dir / "verdict.json");
    verdict << report.verdict.dump(2) << '\n';
    if (!verdict) {
        throw UsageError("cannot write into '" + cfg.out_dir + "'");
    }
}

void write_sweep_csv(std::ostream& out, const std::string& param, const std::vector<SweepRow>& rows) {
    out << "param,value,classification,asymptotic_beta,qdb1,qdb1_max_residual,qdb2,"
           "qdb2_max_residual,qfr,qfr_max_deviation,tau,E,R,predicted\n";
    auto num = [](const ordered_json& j, const char* key) -> std::string {
        if (!j.contains(key) || !j[key].is_number()) {
            return "";
        }
        return fmt(j[key].get<double>());
    };
    for (const SweepRow& row : rows) {
        const ordered_json& v = row.report.verdict;
        out << param << ',' << fmt(row.value) << ',' << v["classification"].get<std::string>() << ','
            << num(v, "asymptotic_beta") << ',' << v["qdb1"]["status"].get<std::string>() << ','
            << num(v["qdb1"], "max_residual") << ',' << v["qdb2"]["status"].get<std::string>() << ','
            << num(v["qdb2"], "max_residual") << ',' << v["qfr"].get<std::string>() << ','
            << num(v, "qfr_max_deviation");
        // largest gap at the last τ of the grid
        const ReportRow* top = nullptr;
        for (const ReportRow& r : row.report.rows) {
            if (!top || r.tau > top->tau || (r.tau == top->tau && r.energy >= top->energy)) {
                top = &r;
            }
        }
        if (top) {
            out << ',' << fmt(top->tau) << ',' << fmt(top->energy) << ','
                << (std::isnan(top->ratio) ? "undefined" : fmt(top->ratio)) << ',' << fmt(top->predicted);
        } else {
            out << ",,,,";
        }
        out << '\n';
    }
}

} // namespace qdblab
