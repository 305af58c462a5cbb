// model.hpp: built-in examples and JSON model files as one analyzable shape

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "qdb/qdb.hpp"

namespace qdblab {

using Params = std::map<std::string, double>;

struct Model {
    explicit Model(qdb::Hamiltonian h) : hamiltonian(std::move(h)) {}

    std::string name;
    std::string kind; // lindblad | kraus | bloch4 | family
    qdb::Hamiltonian hamiltonian;

    std::optional<qdb::LindbladGenerator> lindblad;
    std::optional<qdb::RealMatrix> bloch;       // 𝕃 with ∂b = -2𝕃b
    std::optional<qdb::SuperOperator> generator; // Schrödinger
    std::optional<qdb::KrausChannel> kraus;      // one step of a discrete map
    qdb::MapFamily family;
    double horizon = qdb::kDefaultFamilyHorizon;

    std::optional<double> beta_f;
    std::function<double(double)> correction; // F(τ), example A only
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
};

/// Parameter names accepted by a model, besides beta_i and beta_f.
std::vector<std::string> parameter_names(const std::string& model);

/// Builds example a, b or c. β_f comes from `cfg`, other parameters from
/// `params`. Throws qdb::Error(UnknownParameter) for names the example lacks.
Model build_example(const std::string& name, const RunConfig& cfg, const Params& params);

/// Schema 1 model file. Throws UsageError for unreadable or malformed JSON
/// and qdb::Error when the content breaks a model invariant.
Model load_model(const std::string& path);
Model parse_model(const nlohmann::json& doc, const std::string& name);

/// Throws UsageError for models without a file form (channel families).
nlohmann::ordered_json to_json(const Model& m);

} // namespace qdblab
