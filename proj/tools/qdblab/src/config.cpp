#include "config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace qdblab {

double parse_number(const std::string& text) {
    std::string t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) {
        t.erase(t.begin());
    }
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) {
        t.pop_back();
    }
    if (t == "inf" || t == "+inf") {
        return INFINITY;
    }
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) {
        throw UsageError("not a number: '" + text + "'");
    }
    return v;
}

std::vector<double> default_tau_grid() { return parse_grid("log:0.01:50:40"); }

RunConfig RunConfig::defaults() {
    RunConfig c;
    c.tau_grid = default_tau_grid();
    c.s_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    return c;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(item);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

void require_increasing(const std::vector<double>& g, const char* what) {
    if (g.empty()) {
        throw UsageError(std::string(what) + " grid is empty");
    }
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (!std::isfinite(g[k])) {
            throw UsageError(std::string(what) + " grid has a non-finite point");
        }
        if (k > 0 && !(g[k] > g[k - 1])) {
            throw UsageError(std::string(what) + " grid is not strictly increasing");
        }
    }
}

} // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) {
        return {};
    }
    const std::vector<std::string> parts = split(spec, ':');
    if (parts.size() == 4 && (parts[0] == "lin" || parts[0] == "log")) {
        const double a = parse_number(parts[1]);
        const double b = parse_number(parts[2]);
        const double nd = parse_number(parts[3]);
        if (nd < 0 || nd != std::floor(nd) || nd > 1e6) {
            throw UsageError("grid point count must be a non-negative integer");
        }
        const auto n = static_cast<std::size_t>(nd);
        std::vector<double> g;
        if (n == 0) {
            return g;
        }
        if (n == 1) {
            return {a};
        }
        const bool log = parts[0] == "log";
        if (log && !(a > 0.0 && b > 0.0)) {
            throw UsageError("log grid needs positive end points");
        }
        const double la = log ? std::log10(a) : a;
        const double lb = log ? std::log10(b) : b;
        for (std::size_t k = 0; k < n; ++k) {
            const double x = la + (lb - la) * static_cast<double>(k) / static_cast<double>(n - 1);
            g.push_back(log ? std::pow(10.0, x) : x);
        }
        g.front() = a;
        g.back() = b;
        return g;
    }
    if (parts.size() > 1) {
        throw UsageError("grid spec must be lin:a:b:n, log:a:b:n or a comma list: '" + spec + "'");
    }
    std::vector<double> g;
    for (const std::string& item : split(spec, ',')) {
        g.push_back(parse_number(item));
    }
    return g;
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw UsageError("expected name=value, got '" + text + "'");
    }
    return {text.substr(0, eq), parse_number(text.substr(eq + 1))};
}

void RunConfig::validate() const {
    require_increasing(tau_grid, "τ");
    if (tau_grid.front() < 0.0) {
        throw UsageError("τ grid must be non-negative");
    }
    require_increasing(s_grid, "s");
    if (s_grid.front() < 0.0 || s_grid.back() > 1.0) {
        throw UsageError("s grid must lie in [0, 1]");
    }
    if (std::isnan(beta_i) || beta_i < 0.0) {
        throw UsageError("--beta-i must be >= 0");
    }
    if (std::isnan(beta_f) || beta_f < 0.0) {
        throw UsageError("--beta-f must be >= 0");
    }
    if (!(tol.qdb > 0.0) || !(tol.qfr > 0.0) || !(tol.cptp > 0.0)) {
        throw UsageError("tolerances must be positive");
    }
}

} // namespace qdblab
