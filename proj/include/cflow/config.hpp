#pragma once

// Flat INI-style run configuration.  Sections and keys:
//
//   [metric]   lambda1, lambda2 | arnold_lambda; alpha (optional)
//   [grid]     n_p, n_q, n_z
//   [flow]     v, eta
//   [time]     dt, t_end, sample_stride, fit_start, fit_end
//   [initial]  mode = component,k_p,k_q,k_z,amplitude,phase  (repeatable)
//              check_divergence_free = true|false
//   [output]   csv, summary, snapshots
//
// Exactly one of {lambda1+lambda2, arnold_lambda} must be present.
// Unknown sections or keys are rejected; every diagnostic names the
// offending key and line.  When [time] is omitted the defaults are
// dt = 0.5 h_z, t_end = 1, stride 1, fit window = final half of the run.

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cflow/induction.hpp"
#include "cflow/metric.hpp"

namespace cflow {

class ConfigError : public std::runtime_error {
 public:
    ConfigError(const std::string& message, const std::string& key = "", int line = 0)
        : std::runtime_error(format(message, key, line)), key_(key), line_(line) {}

    const std::string& key() const { return key_; }
    int line() const { return line_; }

 private:
    static std::string format(const std::string& message, const std::string& key, int line) {
        std::ostringstream out;
        out << "config error: " << message;
        if (!key.empty()) out << " [key '" << key << "']";
        if (line > 0) out << " (line " << line << ")";
        return out.str();
    }

    std::string key_;
    int line_;
};

struct OutputOptions {
    std::string csv_name = "timeseries.csv";
    std::string summary_name = "summary.json";
    bool snapshots = false;
};

/// Parsed configuration prior to assembly into a SimConfig.
struct RunConfig {
    std::optional<double> lambda1, lambda2, arnold_lambda;
    std::optional<double> alpha;
    std::optional<int> n_p, n_q, n_z;
    double v = 1.0;
    double eta = 0.0;
    std::optional<double> dt, t_end;
    int sample_stride = 1;
    std::optional<double> fit_start, fit_end;
    InitialCondition initial;
    OutputOptions output;

    CFlowMetric metric() const {
        if (arnold_lambda) return CFlowMetric::from_arnold(*arnold_lambda);
        return CFlowMetric(*lambda1, *lambda2);
    }

    GridSpec grid_or(const GridSpec& fallback) const {
        if (n_p && n_q && n_z) return GridSpec(*n_p, *n_q, *n_z);
        return fallback;
    }

    bool has_grid() const { return n_p && n_q && n_z; }

    SimConfig sim_config() const {
        if (!has_grid()) throw ConfigError("simulation requires a [grid] section");
        SimConfig cfg;
        cfg.metric = metric();
        cfg.grid = GridSpec(*n_p, *n_q, *n_z);
        cfg.v = v;
        cfg.eta = eta;
        cfg.dt = dt.value_or(0.5 * cfg.grid.h_z());
        cfg.t_end = t_end.value_or(1.0);
        cfg.sample_stride = sample_stride;
        cfg.initial = initial;
        cfg.store_snapshots = false;
        return cfg;
    }

    /// Fit window for growth rates; defaults to the final half of the run.
    std::pair<double, double> fit_window(double run_end) const {
        return {fit_start.value_or(0.5 * run_end), fit_end.value_or(run_end)};
    }
};

namespace detail {

struct RawEntry {
    std::string value;
    int line;
};

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

inline double parse_real(const std::string& text, const std::string& key, int line) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value))
        throw ConfigError("expected a finite real, got '" + t + "'", key, line);
    return value;
}

inline int parse_int(const std::string& text, const std::string& key, int line) {
    const std::string t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError("expected an integer, got '" + t + "'", key, line);
    return value;
}

inline bool parse_bool(const std::string& text, const std::string& key, int line) {
    const std::string t = trim(text);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw ConfigError("expected a boolean, got '" + t + "'", key, line);
}

inline FieldMode parse_mode(const std::string& text, int line) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    if (parts.size() != 6)
        throw ConfigError("mode needs 6 comma-separated fields "
                          "(component,k_p,k_q,k_z,amplitude,phase)",
                          "initial.mode", line);
    FieldMode mode;
    if (parts[0] == "p")
        mode.component = FieldComponent::p;
    else if (parts[0] == "q")
        mode.component = FieldComponent::q;
    else if (parts[0] == "z")
        mode.component = FieldComponent::z;
    else
        throw ConfigError("mode component must be p, q or z (got '" + parts[0] + "')",
                          "initial.mode", line);
    mode.k_p = parse_int(parts[1], "initial.mode", line);
    mode.k_q = parse_int(parts[2], "initial.mode", line);
    mode.k_z = parse_int(parts[3], "initial.mode", line);
    mode.amplitude = parse_real(parts[4], "initial.mode", line);
    mode.phase = parse_real(parts[5], "initial.mode", line);
    return mode;
}

}  // namespace detail

/// Parses and validates a config file.  Total: every malformed input
/// yields a ConfigError naming the key and line, never a crash.
inline RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    static const std::map<std::string, std::set<std::string>> kSchema = {
        {"metric", {"lambda1", "lambda2", "arnold_lambda", "alpha"}},
        {"grid", {"n_p", "n_q", "n_z"}},
        {"flow", {"v", "eta"}},
        {"time", {"dt", "t_end", "sample_stride", "fit_start", "fit_end"}},
        {"initial", {"mode", "check_divergence_free"}},
        {"output", {"csv", "summary", "snapshots"}},
    };

    RunConfig cfg;
    std::map<std::string, detail::RawEntry> seen;
    std::string section;
    std::string raw;
    int line = 0;

    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw;
        const auto hash = text.find_first_of("#;");
        if (hash != std::string::npos) text = text.substr(0, hash);
        text = detail::trim(text);
        if (text.empty()) continue;

        if (text.front() == '[') {
            if (text.back() != ']')
                throw ConfigError("malformed section header '" + text + "'", "", line);
            section = detail::trim(text.substr(1, text.size() - 2));
            if (kSchema.find(section) == kSchema.end())
                throw ConfigError("unknown section '" + section + "'", section, line);
            continue;
        }

        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + text + "'", "", line);
        const std::string key = detail::trim(text.substr(0, eq));
        const std::string value = detail::trim(text.substr(eq + 1));
        if (section.empty())
            throw ConfigError("key '" + key + "' appears before any section", key, line);
        const auto& allowed = kSchema.at(section);
        if (allowed.find(key) == allowed.end())
            throw ConfigError("unknown key '" + key + "' in section [" + section + "]",
                              section + "." + key, line);

        const std::string qualified = section + "." + key;
        if (qualified == "initial.mode") {
            cfg.initial.modes.push_back(detail::parse_mode(value, line));
            continue;
        }
        if (seen.count(qualified))
            throw ConfigError("duplicate key (first set on line " +
                                  std::to_string(seen[qualified].line) + ")",
                              qualified, line);
        seen[qualified] = {value, line};

        if (qualified == "metric.lambda1") cfg.lambda1 = detail::parse_real(value, qualified, line);
        else if (qualified == "metric.lambda2") cfg.lambda2 = detail::parse_real(value, qualified, line);
        else if (qualified == "metric.arnold_lambda") cfg.arnold_lambda = detail::parse_real(value, qualified, line);
        else if (qualified == "metric.alpha") cfg.alpha = detail::parse_real(value, qualified, line);
        else if (qualified == "grid.n_p") cfg.n_p = detail::parse_int(value, qualified, line);
        else if (qualified == "grid.n_q") cfg.n_q = detail::parse_int(value, qualified, line);
        else if (qualified == "grid.n_z") cfg.n_z = detail::parse_int(value, qualified, line);
        else if (qualified == "flow.v") cfg.v = detail::parse_real(value, qualified, line);
        else if (qualified == "flow.eta") cfg.eta = detail::parse_real(value, qualified, line);
        else if (qualified == "time.dt") cfg.dt = detail::parse_real(value, qualified, line);
        else if (qualified == "time.t_end") cfg.t_end = detail::parse_real(value, qualified, line);
        else if (qualified == "time.sample_stride") cfg.sample_stride = detail::parse_int(value, qualified, line);
        else if (qualified == "time.fit_start") cfg.fit_start = detail::parse_real(value, qualified, line);
        else if (qualified == "time.fit_end") cfg.fit_end = detail::parse_real(value, qualified, line);
        else if (qualified == "initial.check_divergence_free")
            cfg.initial.require_divergence_free = detail::parse_bool(value, qualified, line);
        else if (qualified == "output.csv") cfg.output.csv_name = value;
        else if (qualified == "output.summary") cfg.output.summary_name = value;
        else if (qualified == "output.snapshots") cfg.output.snapshots = detail::parse_bool(value, qualified, line);
    }

    // Cross-field validation.
    const bool has_pair = cfg.lambda1.has_value() || cfg.lambda2.has_value();
    if (cfg.arnold_lambda && has_pair)
        throw ConfigError("lambda1/lambda2 and arnold_lambda are mutually exclusive",
                          "metric.arnold_lambda");
    if (!cfg.arnold_lambda) {
        if (!cfg.lambda1 || !cfg.lambda2)
            throw ConfigError("metric requires either arnold_lambda or both lambda1 and lambda2",
                              "metric.lambda1");
    }
    const int grid_keys = int(cfg.n_p.has_value()) + int(cfg.n_q.has_value()) +
                          int(cfg.n_z.has_value());
    if (grid_keys != 0 && grid_keys != 3)
        throw ConfigError("[grid] requires all of n_p, n_q, n_z", "grid.n_p");
    if (cfg.sample_stride < 1)
        throw ConfigError("sample_stride must be >= 1", "time.sample_stride");
    return cfg;
}

}  // namespace cflow
