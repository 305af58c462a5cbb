#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace qdblab {

using qdb::ComplexMatrix;
using qdb::Error;
using qdb::ErrorKind;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

double param(const Params& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

void check_names(const std::string& model, const Params& p) {
    const std::vector<std::string> known = parameter_names(model);
    for (const auto& [key, value] : p) {
        if (key == "beta_i" || key == "beta_f") {
            continue;
        }
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw Error(ErrorKind::UnknownParameter, "model '" + model + "' has no parameter '" + key + "'");
        }
    }
}

Model example_a(const RunConfig& cfg, const Params& p) {
    qdb::ExampleAParams a = qdb::ExampleAParams::defaults(param(p, "omega", 1.0), cfg.beta_f);
    const double q_rate = param(p, "q_rate", 1.0);
    const double xi_rate = param(p, "xi_rate", 1.0);
    const bool rational = param(p, "xi_form", 0.0) != 0.0;
    const bool fpt = param(p, "fpt", 0.0) != 0.0;
    const double q_inf = a.q_inf();
    if (fpt) {
        a.q_schedule = [q_inf](double) { return q_inf; };
    } else {
        a.q_schedule = [q_inf, q_rate](double t) { return q_inf * -std::expm1(-q_rate * t); };
    }
    if (rational) {
        a.xi_schedule = [xi_rate](double t) { return xi_rate * t / (1.0 + xi_rate * t); };
        a.horizon = 1e12;
    } else {
        a.xi_schedule = [xi_rate](double t) { return -std::expm1(-xi_rate * t); };
        // coherences decay as √(1-ξ), at half the ξ rate
        a.horizon = 100.0 / std::min(q_rate, xi_rate);
    }
    a.horizon = param(p, "horizon", a.horizon);
    a.validate();

    Model m(qdb::qubit_hamiltonian(a.omega));
    m.name = "example-a";
    m.kind = "family";
    m.family = qdb::example_a_family(a);
    m.horizon = a.horizon;
    m.beta_f = a.beta_f;
    m.correction = [a](double t) { return qdb::example_a_correction(a, t); };
    m.metadata["omega"] = a.omega;
    m.metadata["q_rate"] = fpt ? 0.0 : q_rate;
    m.metadata["xi_rate"] = xi_rate;
    m.metadata["xi_form"] = rational ? "rational" : "exponential";
    return m;
}

Model example_b(const RunConfig& cfg, const Params& p) {
    qdb::ExampleBParams b;
    b.omega = param(p, "omega", 1.0);
    b.gamma = param(p, "gamma", 1.0);
    b.beta_f = cfg.beta_f;
    qdb::LindbladGenerator gen = qdb::example_b_generator(b);
    Model m(qdb::qubit_hamiltonian(b.omega));
    m.name = "example-b";
    m.kind = "lindblad";
    m.generator = qdb::lindblad_superop(gen);
    m.lindblad = std::move(gen);
    m.beta_f = b.beta_f;
    m.metadata["omega"] = b.omega;
    m.metadata["gamma"] = b.gamma;
    return m;
}

Model example_c(const RunConfig& cfg, const Params& p) {
    const double omega = param(p, "omega", 1.0);
    const qdb::ExampleCParams qdb_point =
        qdb::example_c_qdb_point(param(p, "mu", 0.5), param(p, "eta", 0.1), omega, cfg.beta_f);
    qdb::ExampleCParams c = qdb_point;
    c.nu = param(p, "nu", 1.1 * qdb_point.nu);
    c.alpha = param(p, "alpha", qdb_point.alpha);
    Model m(qdb::qubit_hamiltonian(omega));
    m.name = "example-c";
    m.kind = "bloch4";
    m.generator = qdb::example_c_generator(c);
    m.bloch = qdb::example_c_bloch_matrix(c);
    m.beta_f = cfg.beta_f;
    m.metadata["omega"] = c.omega;
    m.metadata["nu"] = c.nu;
    m.metadata["alpha"] = c.alpha;
    m.metadata["chi"] = c.chi;
    m.metadata["zeta"] = c.zeta;
    return m;
}

// --- JSON ---------------------------------------------------------------

qdb::Complex read_complex(const json& v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw UsageError("complex entries must be numbers or [re, im] pairs");
}

ComplexMatrix read_matrix(const json& v, const char* what) {
    if (!v.is_array() || v.empty() || !v[0].is_array()) {
        throw UsageError(std::string(what) + " must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(v.size());
    const auto cols = static_cast<Eigen::Index>(v[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw UsageError(std::string(what) + " has ragged rows");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = read_complex(row[static_cast<std::size_t>(j)]);
        }
    }
    return m;
}

std::vector<ComplexMatrix> read_matrix_list(const json& v, const char* what) {
    if (!v.is_array()) {
        throw UsageError(std::string(what) + " must be an array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (const json& item : v) {
        out.push_back(read_matrix(item, what));
    }
    return out;
}

ordered_json write_matrix(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(row);
    }
    return rows;
}

ordered_json write_real_matrix(const qdb::RealMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

std::vector<std::string> parameter_names(const std::string& model) {
    if (model == "a") {
        return {"omega", "q_rate", "xi_rate", "xi_form", "fpt", "horizon"};
    }
    if (model == "b") {
        return {"omega", "gamma"};
    }
    if (model == "c") {
        return {"omega", "mu", "eta", "nu", "alpha"};
    }
    return {};
}

Model build_example(const std::string& name, const RunConfig& cfg, const Params& params) {
    if (name != "a" && name != "b" && name != "c") {
        throw UsageError("unknown example '" + name + "' (expected a, b or c)");
    }
    check_names(name, params);
    if (name == "a") {
        return example_a(cfg, params);
    }
    if (name == "b") {
        return example_b(cfg, params);
    }
    return example_c(cfg, params);
}

Model parse_model(const json& doc, const std::string& name) {
    if (!doc.is_object()) {
        throw UsageError("model file must hold a JSON object");
    }
    if (!doc.contains("schema") || doc["schema"] != 1) {
        throw UsageError("model file must declare \"schema\": 1");
    }
    const std::string kind = doc.value("kind", "");
    if (!doc.contains("hamiltonian")) {
        throw UsageError("model file lacks \"hamiltonian\"");
    }
    Model m(qdb::Hamiltonian(read_matrix(doc["hamiltonian"], "hamiltonian")));
    m.name = name;
    m.kind = kind;
    if (doc.contains("beta_f")) {
        if (!doc["beta_f"].is_number()) {
            throw UsageError("\"beta_f\" must be a number");
        }
        m.beta_f = doc["beta_f"].get<double>();
    }
    if (doc.contains("metadata")) {
        m.metadata = ordered_json::parse(doc["metadata"].dump());
    }
    if (kind == "lindblad") {
        if (doc.contains("jumps")) {
            m.lindblad = qdb::LindbladGenerator::from_jumps(m.hamiltonian.matrix(),
                                                            read_matrix_list(doc["jumps"], "jumps"));
        } else if (doc.contains("kossakowski")) {
            ComplexMatrix c = read_matrix(doc["kossakowski"], "kossakowski");
            if (doc.contains("basis")) {
                m.lindblad = qdb::LindbladGenerator(m.hamiltonian, std::move(c),
                                                    read_matrix_list(doc["basis"], "basis"));
            } else {
                m.lindblad = qdb::LindbladGenerator(m.hamiltonian, std::move(c));
            }
        } else {
            throw UsageError("lindblad model needs \"kossakowski\" or \"jumps\"");
        }
        m.generator = qdb::lindblad_superop(*m.lindblad);
    } else if (kind == "kraus") {
        if (!doc.contains("kraus")) {
            throw UsageError("kraus model needs \"kraus\"");
        }
        m.kraus = qdb::KrausChannel(read_matrix_list(doc["kraus"], "kraus"));
        if (m.kraus->dim() != m.hamiltonian.dim()) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus operators and Hamiltonian differ in size");
        }
    } else if (kind == "bloch4") {
        if (!doc.contains("bloch")) {
            throw UsageError("bloch4 model needs \"bloch\"");
        }
        const ComplexMatrix raw = read_matrix(doc["bloch"], "bloch");
        if (raw.rows() != 4 || raw.cols() != 4 || raw.imag().cwiseAbs().maxCoeff() != 0.0) {
            throw UsageError("\"bloch\" must be a real 4x4 matrix");
        }
        if (m.hamiltonian.dim() != 2) {
            throw Error(ErrorKind::DimensionMismatch, "bloch4 models are qubits");
        }
        m.bloch = raw.real();
        m.generator = qdb::bloch_to_superop(-2.0 * *m.bloch);
        for (double tau : {0.1, 0.5, 1.0, 5.0}) {
            if (!qdb::is_cptp(qdb::evolve(*m.generator, tau)).passes()) {
                throw Error(ErrorKind::NotCPTP, "Bloch generator fails CPTP at τ = " + std::to_string(tau));
            }
        }
    } else {
        throw UsageError("unknown model kind '" + kind + "' (expected lindblad, kraus or bloch4)");
    }
    return m;
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open model file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("invalid JSON in '" + path + "': " + e.what());
    }
    std::string name = path;
    const auto slash = name.find_last_of('/');
    if (slash != std::string::npos) {
        name = name.substr(slash + 1);
    }
    try {
        return parse_model(doc, name);
    } catch (const json::exception& e) {
        throw UsageError("malformed model '" + path + "': " + e.what());
    }
}

ordered_json to_json(const Model& m) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["kind"] = m.kind;
    doc["hamiltonian"] = write_matrix(m.hamiltonian.matrix());
    if (m.kind == "lindblad" && m.lindblad) {
        doc["hamiltonian"] = write_matrix(m.lindblad->hamiltonian().matrix());
        doc["kossakowski"] = write_matrix(m.lindblad->kossakowski());
    } else if (m.kind == "bloch4" && m.bloch) {
        doc["bloch"] = write_real_matrix(*m.bloch);
    } else if (m.kind == "kraus" && m.kraus) {
        ordered_json ops = ordered_json::array();
        for (const ComplexMatrix& g : m.kraus->ops()) {
            ops.push_back(write_matrix(g));
        }
        doc["kraus"] = ops;
    } else {
        throw UsageError("model '" + m.name + "' is a channel family and has no file form");
    }
    if (m.beta_f) {
        doc["beta_f"] = *m.beta_f;
    }
    doc["metadata"] = m.metadata;
    return doc;
}

} // namespace qdblab
