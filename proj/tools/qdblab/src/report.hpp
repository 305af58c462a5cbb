// report.hpp: per-τ exchange tables and the verdict of a model

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "model.hpp"

namespace qdblab {

struct ReportRow {
    double tau = 0.0;
    double energy = 0.0;
    double p_plus = 0.0;
    double p_minus = 0.0;
    double ratio = 0.0;     // nan when undefined
    double predicted = 0.0;
    double deviation = 0.0; // nan when undefined
    double correction = 0.0; // nan unless the model carries F(τ)
};

struct Report {
    std::vector<ReportRow> rows;
    nlohmann::ordered_json verdict;
};

/// Throws InternalCheckFailure when a computed map or distribution breaks an
/// invariant (CPTP, stochasticity, normalization).
Report analyze(const Model& model, const RunConfig& cfg);

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
nlohmann::ordered_json rows_to_json(const std::vector<ReportRow>& rows);

/// Writes report.csv or report.json plus verdict.json into cfg.out_dir, or the
/// report to `out` when no directory is set.
void emit(const Report& report, const RunConfig& cfg, std::ostream& out);

struct SweepRow {
    double value = 0.0;
    Report report;
};

/// One row per parameter value, in the given order.
void write_sweep_csv(std::ostream& out, const std::string& param, const std::vector<SweepRow>& rows);

} // namespace qdblab
