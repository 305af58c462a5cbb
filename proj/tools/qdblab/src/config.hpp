// config.hpp: run configuration and grid parsing for qdblab

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdblab {

/// Bad flags or grid specs; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed object broke an invariant it must satisfy; exit code 4.
class InternalCheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct Tolerances {
    double qdb = 1e-9;
    double qfr = 1e-9;
    double cptp = 1e-9;
};

struct RunConfig {
    std::vector<double> tau_grid;
    std::vector<double> s_grid;
    double beta_i = 2.0;
    double beta_f = 1.0;
    Tolerances tol;
    std::string out_dir; // empty: stdout
    Format format = Format::Csv;
    std::map<std::string, double> overrides;

    static RunConfig defaults();
    /// Throws UsageError.
    void validate() const;
};

/// 40 log-spaced points in [1e-2, 50].
std::vector<double> default_tau_grid();

/// "lin:a:b:n", "log:a:b:n" or a comma-separated list. An empty string gives
/// an empty grid. Throws UsageError.
std::vector<double> parse_grid(const std::string& spec);

/// "name=value". Throws UsageError.
std::pair<std::string, double> parse_assignment(const std::string& text);

double parse_number(const std::string& text);

} // namespace qdblab
