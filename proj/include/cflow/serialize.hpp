#pragma once

// Machine-readable outputs: CSV time series and JSON reports.  Floats are
// written in shortest round-trip decimal form (17 significant digits at
// most); files are written atomically (temp file + rename) and every JSON
// document carries schema_version.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include <json.hpp>

#include "cflow/curvature.hpp"
#include "cflow/growth.hpp"
#include "cflow/induction.hpp"

namespace cflow {

inline constexpr int kSchemaVersion = 1;

inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class IoError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// Write content to path via a sibling temp file and atomic rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    const auto parent = path.parent_path();
    if (!parent.empty()) {
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoError("cannot create directory '" + parent.string() + "': " + ec.message());
    }
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename '" + tmp.string() + "' to '" + path.string() +
                          "': " + ec.message());
}

/// CSV header is fixed: t,norm_Bp,norm_Bq,norm_Bz,energy,max_div.
inline std::string timeseries_csv(const SimRecord& rec) {
    std::string out = "t,norm_Bp,norm_Bq,norm_Bz,energy,max_div\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        out += format_double(rec.times[i]);
        out += ',';
        out += format_double(rec.norm_p[i]);
        out += ',';
        out += format_double(rec.norm_q[i]);
        out += ',';
        out += format_double(rec.norm_z[i]);
        out += ',';
        out += format_double(rec.energy[i]);
        out += ',';
        out += format_double(rec.max_div[i]);
        out += '\n';
    }
    return out;
}

/// Parse a time-series CSV back into the numeric columns (round-trip
/// counterpart of timeseries_csv).
inline SimRecord parse_timeseries_csv(const std::string& content) {
    SimRecord rec;
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line) || line != "t,norm_Bp,norm_Bq,norm_Bz,energy,max_div")
        throw IoError("unexpected CSV header: '" + line + "'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double cols[6];
        const char* ptr = line.data();
        const char* end = line.data() + line.size();
        for (int c = 0; c < 6; ++c) {
            const auto res = std::from_chars(ptr, end, cols[c]);
            if (res.ec != std::errc()) throw IoError("bad CSV number in line '" + line + "'");
            ptr = res.ptr;
            if (c < 5) {
                if (ptr == end || *ptr != ',')
                    throw IoError("expected ',' in line '" + line + "'");
                ++ptr;
            }
        }
        rec.times.push_back(cols[0]);
        rec.norm_p.push_back(cols[1]);
        rec.norm_q.push_back(cols[2]);
        rec.norm_z.push_back(cols[3]);
        rec.energy.push_back(cols[4]);
        rec.max_div.push_back(cols[5]);
    }
    return rec;
}

namespace detail {

inline nlohmann::json rate_or_null(const std::optional<double>& r) {
    if (r) return *r;
    return nullptr;
}

}  // namespace detail

/// Summary document for a simulation run: fitted growth rates next to the
/// analytic expectations (v mu1, v mu2, 0).
inline nlohmann::json summary_json(const CFlowMetric& m, const SimConfig& cfg,
                                   const SimRecord& rec, const GrowthRates& rates,
                                   double fit_t0, double fit_t1,
                                   std::optional<long long> seed) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["metric"] = {{"lambda1", m.lambda1()},
                     {"lambda2", m.lambda2()},
                     {"mu1", m.mu1()},
                     {"mu2", m.mu2()},
                     {"is_arnold", m.is_arnold()}};
    doc["grid"] = {{"n_p", cfg.grid.n_p}, {"n_q", cfg.grid.n_q}, {"n_z", cfg.grid.n_z}};
    doc["flow"] = {{"v", cfg.v}, {"eta", cfg.eta}};
    doc["time"] = {{"dt", cfg.dt}, {"t_end", cfg.t_end}, {"samples", rec.samples()}};
    doc["fit_window"] = {{"t0", fit_t0}, {"t1", fit_t1}};
    doc["rates"] = {{"p", detail::rate_or_null(rates.rate_p)},
                    {"q", detail::rate_or_null(rates.rate_q)},
                    {"z", detail::rate_or_null(rates.rate_z)}};
    doc["expected_rates"] = {{"p", cfg.v * m.mu1()}, {"q", cfg.v * m.mu2()}, {"z", 0.0}};
    doc["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
    return doc;
}

/// Curvature report document.
inline nlohmann::json curvature_json(const CFlowMetric& m, const ComparisonRecord& rec) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["lambda1"] = m.lambda1();
    doc["lambda2"] = m.lambda2();
    doc["mu1"] = m.mu1();
    doc["mu2"] = m.mu2();

    auto one_form = [](const OneForm& f) {
        return nlohmann::json{{"omega_p", f.p.eval(0.0)},
                              {"omega_q", f.q.eval(0.0)},
                              {"omega_z", f.z.eval(0.0)}};
    };
    doc["connection"] = {{"omega_p_z", one_form(rec.cartan.connection.omega_p_z)},
                         {"omega_q_z", one_form(rec.cartan.connection.omega_q_z)},
                         {"omega_p_q", one_form(rec.cartan.connection.omega_p_q)}};

    static const char* kAxis = "pqz";
    nlohmann::json riemann = nlohmann::json::object();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = k + 1; l < 3; ++l) {
                    std::string name = "R_";
                    name += kAxis[i];
                    name += kAxis[j];
                    name += kAxis[k];
                    name += kAxis[l];
                    riemann[name] = rec.cartan.riemann.at(i, j, k, l);
                }
    doc["riemann_frame"] = riemann;

    doc["sectional"] = {{"K_pz", rec.cartan.k_pz},
                        {"K_qz", rec.cartan.k_qz},
                        {"K_pq", rec.cartan.k_pq}};
    doc["scalar"] = rec.cartan.scalar;
    doc["paper_reference"] = {{"alpha", rec.reference.alpha},
                              {"Rq_zzq", rec.reference.rq_zzq},
                              {"Rq_zzp", rec.reference.rq_zzp},
                              {"K_G", rec.reference.gaussian}};
    doc["max_path_deviation"] = rec.max_deviation;
    return doc;
}

/// Final field dump, one row per node.
inline std::string field_csv(const FrameField& b) {
    const GridSpec& g = b.grid();
    std::string out = "p,q,z,Bp,Bq,Bz\n";
    for (int i = 0; i < g.n_p; ++i)
        for (int j = 0; j < g.n_q; ++j)
            for (int k = 0; k < g.n_z; ++k) {
                out += format_double(g.p(i));
                out += ',';
                out += format_double(g.q(j));
                out += ',';
                out += format_double(g.z(k));
                out += ',';
                out += format_double(b.p()(i, j, k));
                out += ',';
                out += format_double(b.q()(i, j, k));
                out += ',';
                out += format_double(b.z()(i, j, k));
                out += '\n';
            }
    return out;
}

}  // namespace cflow
