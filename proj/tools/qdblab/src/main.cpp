// qdblab: detailed-balance and fluctuation-relation reports for open qubit dynamics

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "format.hpp"
#include "model.hpp"
#include "report.hpp"

namespace {

using namespace qdblab;

bool is_example(const std::string& name) { return name == "a" || name == "b" || name == "c"; }

Model make_model(const std::string& target, const RunConfig& cfg) {
    if (is_example(target)) {
        return build_example(target, cfg, cfg.overrides);
    }
    if (!cfg.overrides.empty()) {
        throw qdb::Error(qdb::ErrorKind::UnknownParameter,
                         "model files take no parameter '" + cfg.overrides.begin()->first + "'");
    }
    return load_model(target);
}

void print_summary(const Report& report) {
    const auto& v = report.verdict;
    std::cerr << "classification: " << v["classification"].get<std::string>() << '\n'
              << "qdb1: " << v["qdb1"]["status"].get<std::string>() << '\n'
              << "qdb2: " << v["qdb2"]["status"].get<std::string>() << '\n'
              << "qfr: " << v["qfr"].get<std::string>() << " (max deviation "
              << fmt(v["qfr_max_deviation"].get<double>()) << ")\n";
}

void run_report(const std::string& target, const RunConfig& cfg) {
    const Model model = make_model(target, cfg);
    const Report report = analyze(model, cfg);
    emit(report, cfg, std::cout);
    if (cfg.out_dir.empty() && cfg.format == Format::Csv) {
        print_summary(report);
    }
}

void run_sweep(const std::string& target, const std::string& param, const std::string& range,
               RunConfig cfg) {
    const bool global = param == "beta_i" || param == "beta_f";
    if (!global) {
        const auto names = parameter_names(target);
        if (std::find(names.begin(), names.end(), param) == names.end()) {
            throw qdb::Error(qdb::ErrorKind::UnknownParameter,
                             "'" + target + "' has no parameter '" + param + "'");
        }
    }
    std::vector<SweepRow> rows;
    for (double value : parse_grid(range)) {
        RunConfig point = cfg;
        if (param == "beta_i") {
            point.beta_i = value;
        } else if (param == "beta_f") {
            point.beta_f = value;
        } else {
            point.overrides[param] = value;
        }
        point.validate();
        rows.push_back({value, analyze(make_model(target, point), point)});
    }
    if (cfg.out_dir.empty()) {
        write_sweep_csv(std::cout, param, rows);
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    std::ofstream f(std::filesystem::path(cfg.out_dir) / "sweep.csv");
    if (!f) {
        throw UsageError("cannot write into '" + cfg.out_dir + "'");
    }
    write_sweep_csv(f, param, rows);
}

void run_export(const std::string& target, const std::string& path, const RunConfig& cfg) {
    if (!is_example(target)) {
        throw UsageError("export takes a, b or c");
    }
    const auto doc = to_json(build_example(target, cfg, cfg.overrides));
    std::ofstream f(path);
    f << doc.dump(2) << '\n';
    if (!f) {
        throw UsageError("cannot write '" + path + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdblab: quantum detailed balance and fluctuation relations"};
    app.require_subcommand(1);

    std::string tau_spec;
    std::string s_spec;
    std::string format = "csv";
    std::vector<std::string> assignments;
    RunConfig cfg = RunConfig::defaults();

    app.add_option("--tau-grid", tau_spec, "lin:a:b:n, log:a:b:n or a comma list");
    app.add_option("--s-grid", s_spec, "grid of s values in [0, 1]");
    app.add_option("--beta-i", cfg.beta_i, "inverse temperature of the initial state");
    app.add_option("--beta-f", cfg.beta_f, "reference inverse temperature");
    app.add_option("--out", cfg.out_dir, "output directory (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--tol-qdb", cfg.tol.qdb, "pass tolerance of both QDB checks");
    app.add_option("--tol-qfr", cfg.tol.qfr, "pass tolerance of the fluctuation ratio");
    app.add_option("--set", assignments, "model parameter override name=value");

    std::string target;
    std::string file;
    std::string param;
    std::string range;

    auto* example = app.add_subcommand("example", "report on a built-in example");
    example->add_option("name", target, "a, b or c")->required();
    example->fallthrough();

    auto* check = app.add_subcommand("check", "report on a JSON model file");
    check->add_option("file", target, "model file")->required();
    check->fallthrough();

    auto* sweep = app.add_subcommand("sweep", "verdict summary over a parameter range");
    sweep->add_option("model", target, "a, b, c or a model file")->required();
    sweep->add_option("--param", param, "parameter name")->required();
    sweep->add_option("--range", range, "grid of values (may be empty)")->required();
    sweep->fallthrough();

    auto* exp = app.add_subcommand("export", "write a built-in example as a model file");
    exp->add_option("name", target, "b or c")->required();
    exp->add_option("file", file, "output path")->required();
    exp->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!tau_spec.empty()) {
            cfg.tau_grid = parse_grid(tau_spec);
        }
        if (!s_spec.empty()) {
            cfg.s_grid = parse_grid(s_spec);
        }
        cfg.format = format == "json" ? Format::Json : Format::Csv;
        for (const std::string& a : assignments) {
            const auto [name, value] = parse_assignment(a);
            if (name == "beta_i") {
                cfg.beta_i = value;
            } else if (name == "beta_f") {
                cfg.beta_f = value;
            } else {
                cfg.overrides[name] = value;
            }
        }
        cfg.validate();

        if (*example) {
            if (!is_example(target)) {
                throw UsageError("unknown example '" + target + "' (expected a, b or c)");
            }
            run_report(target, cfg);
        } else if (*check) {
            run_report(target, cfg);
        } else if (*sweep) {
            run_sweep(target, param, range, cfg);
        } else if (*exp) {
            run_export(target, file, cfg);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const InternalCheckFailure& e) {
        std::cerr << "internal check failed: " << e.what() << '\n';
        return 4;
    } catch (const qdb::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const auto k = e.kind();
        return k == qdb::ErrorKind::InvalidParameter || k == qdb::ErrorKind::UnknownParameter ? 2 : 3;
    }
    return 0;
}
