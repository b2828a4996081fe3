// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_METRICS_HPP
#define ISACSIM_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "scheduler.hpp"
#include "sensing.hpp"
#include "textio.hpp"

namespace isacsim::metrics {

/// One row per generated packet. completion_s/delay_s are negative while the
/// packet is unfinished; failed marks retry exhaustion (censored packets at
/// the horizon end have completed == failed == false).
struct PacketRecord {
    std::int64_t id = 0;
    int user = 0;
    double arrival_s = 0.0;
    long size_bits = 0;
    int attempts = 0;
    bool completed = false;
    bool failed = false;
    double completion_s = -1.0;
    double delay_s = -1.0;
    bool violated_survival = false;
};

/// One row per scheduling cycle.
struct CycleRecord {
    std::int64_t cycle = 0;
    long n_sym_s = 0;
    long n_sym_c = 0;
    long m_req_s = 0;
    long m_req_c = 0;
    double pd = 0.0;
    bool detected = false;
    bool feasible = true;
    int sector_id = 0;
    double agv_distance_m = 0.0;
    double gamma_sens = 0.0;  // realized integrated SNR behind pd
};

struct RunMeta {
    std::uint64_t seed = 0;
    sched::SchedulerKind scheduler = sched::SchedulerKind::Nbs;
    std::string config_hash;
    double horizon_s = 0.0;
    double survival_time_s = 0.0;
    double symbol_s = 0.0;
    long symbols_per_cycle = 0;
    sensing::PdFormula pd_formula = sensing::PdFormula::Paper;
    std::vector<double> pfa_sweep;
    std::vector<double> sector_density;  // clutter density per sector id
};

struct MetricsReport {
    RunMeta meta;
    std::vector<PacketRecord> packets;  // ordered by id
    std::vector<CycleRecord> cycles;    // ordered by cycle
};

// ---------------------------------------------------------------------------
// Distribution summaries
// ---------------------------------------------------------------------------

/// Sorted-sample summary: right-continuous ECDF, lower quantiles, box stats.
class DistributionSummary {
public:
    explicit DistributionSummary(std::vector<double> samples) : samples_(std::move(samples)) {
        if (samples_.empty())
            throw std::domain_error("DistributionSummary: need at least one sample");
        std::sort(samples_.begin(), samples_.end());
    }

    /// P(X <= x).
    double ecdf_at(double x) const {
        const auto it = std::upper_bound(samples_.begin(), samples_.end(), x);
        return static_cast<double>(it - samples_.begin()) /
               static_cast<double>(samples_.size());
    }

    /// Smallest sample whose ECDF reaches q.
    double quantile(double q) const {
        if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q must lie in [0,1]");
        const auto n = static_cast<double>(samples_.size());
        auto idx = static_cast<std::ptrdiff_t>(std::ceil(q * n)) - 1;
        idx = std::max<std::ptrdiff_t>(0, std::min<std::ptrdiff_t>(idx, samples_.size() - 1));
        return samples_[static_cast<std::size_t>(idx)];
    }

    double min() const { return samples_.front(); }
    double max() const { return samples_.back(); }
    double mean() const {
        double s = 0.0;
        for (double v : samples_) s += v;
        return s / static_cast<double>(samples_.size());
    }
    std::size_t size() const { return samples_.size(); }
    const std::vector<double>& sorted() const { return samples_; }

    struct BoxStats {
        double q1 = 0.0, median = 0.0, q3 = 0.0;
        double whisker_lo = 0.0, whisker_hi = 0.0;
        long outliers = 0;
    };

    /// Quartiles with whiskers at 1.5 IQR, clamped to observed samples.
    BoxStats box() const {
        BoxStats b;
        b.q1 = quantile(0.25);
        b.median = quantile(0.5);
        b.q3 = quantile(0.75);
        const double iqr = b.q3 - b.q1;
        const double lo_fence = b.q1 - 1.5 * iqr;
        const double hi_fence = b.q3 + 1.5 * iqr;
        b.whisker_lo = *std::lower_bound(samples_.begin(), samples_.end(), lo_fence);
        auto hi_it = std::upper_bound(samples_.begin(), samples_.end(), hi_fence);
        b.whisker_hi = *(hi_it == samples_.begin() ? hi_it : hi_it - 1);
        for (double v : samples_) b.outliers += (v < lo_fence || v > hi_fence) ? 1 : 0;
        return b;
    }

private:
    std::vector<double> samples_;
};

inline DistributionSummary ecdf(std::vector<double> samples) {
    return DistributionSummary(std::move(samples));
}

// ---------------------------------------------------------------------------
// Run summary
// ---------------------------------------------------------------------------

struct SectorStats {
    int sector_id = 0;
    double clutter_density = 0.0;
    long cycles = 0;
    double mean_n_sym_s = 0.0;
    double mean_m_req_s = 0.0;
    double mean_pd = 0.0;
};

struct PdCurve {
    double pfa = 0.0;
    double mean = 0.0;
    std::vector<double> deciles;  // 10%..90%
};

struct RunSummary {
    RunMeta meta;
    long packets_total = 0;
    long packets_completed = 0;
    long packets_failed = 0;
    long packets_censored = 0;
    long survival_violations = 0;
    double violation_rate = 0.0;  // (late completions + failures) / total
    double delay_p50 = 0.0, delay_p90 = 0.0, delay_p99 = 0.0, delay_max = 0.0,
           delay_mean = 0.0;
    long cycles_total = 0;
    long cycles_infeasible = 0;
    double mean_pd = 0.0;
    double detection_rate = 0.0;
    std::int64_t symbols_sensing = 0;
    std::int64_t symbols_comm = 0;
    std::map<long, long> n_sym_s_hist;
    std::map<long, long> n_sym_c_hist;
    std::vector<SectorStats> sectors;
    std::vector<PdCurve> pd_curves;
};

inline RunSummary summarize_run(const MetricsReport& report) {
    RunSummary s;
    s.meta = report.meta;

    std::vector<double> delays;
    delays.reserve(report.packets.size());
    for (const auto& p : report.packets) {
        ++s.packets_total;
        if (p.completed) {
            ++s.packets_completed;
            delays.push_back(p.delay_s);
            if (p.violated_survival) ++s.survival_violations;
        } else if (p.failed) {
            ++s.packets_failed;
        } else {
            ++s.packets_censored;
        }
    }
    if (s.packets_total > 0)
        s.violation_rate = static_cast<double>(s.survival_violations + s.packets_failed) /
                           static_cast<double>(s.packets_total);
    if (!delays.empty()) {
        DistributionSummary d(std::move(delays));
        s.delay_p50 = d.quantile(0.5);
        s.delay_p90 = d.quantile(0.9);
        s.delay_p99 = d.quantile(0.99);
        s.delay_max = d.max();
        s.delay_mean = d.mean();
    }

    std::map<int, SectorStats> per_sector;
    double pd_sum = 0.0;
    long detected = 0;
    for (const auto& c : report.cycles) {
        ++s.cycles_total;
        if (!c.feasible) ++s.cycles_infeasible;
        s.symbols_sensing += c.n_sym_s;
        s.symbols_comm += c.n_sym_c;
        ++s.n_sym_s_hist[c.n_sym_s];
        ++s.n_sym_c_hist[c.n_sym_c];
        pd_sum += c.pd;
        detected += c.detected ? 1 : 0;
        auto& sec = per_sector[c.sector_id];
        sec.sector_id = c.sector_id;
        ++sec.cycles;
        sec.mean_n_sym_s += static_cast<double>(c.n_sym_s);
        sec.mean_m_req_s += static_cast<double>(c.m_req_s);
        sec.mean_pd += c.pd;
    }
    if (s.cycles_total > 0) {
        s.mean_pd = pd_sum / static_cast<double>(s.cycles_total);
        s.detection_rate = static_cast<double>(detected) / static_cast<double>(s.cycles_total);
    }
    for (auto& [id, sec] : per_sector) {
        sec.mean_n_sym_s /= static_cast<double>(sec.cycles);
        sec.mean_m_req_s /= static_cast<double>(sec.cycles);
        sec.mean_pd /= static_cast<double>(sec.cycles);
        if (id >= 0 && static_cast<std::size_t>(id) < report.meta.sector_density.size())
            sec.clutter_density = report.meta.sector_density[static_cast<std::size_t>(id)];
        s.sectors.push_back(sec);
    }

    // Detection probability rescored at every swept false-alarm rate from the
    // recorded per-cycle SNR.
    if (!report.cycles.empty()) {
        for (double pfa : report.meta.pfa_sweep) {
            PdCurve curve;
            curve.pfa = pfa;
            std::vector<double> pds;
            pds.reserve(report.cycles.size());
            for (const auto& c : report.cycles)
                pds.push_back(
                    sensing::detection_probability(c.gamma_sens, pfa, report.meta.pd_formula));
            DistributionSummary d(std::move(pds));
            curve.mean = d.mean();
            for (int q = 1; q <= 9; ++q)
                curve.deciles.push_back(d.quantile(0.1 * q));
            s.pd_curves.push_back(curve);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

inline const char* kPacketsCsvHeader =
    "packet_id,user_id,arrival_s,size_bits,attempts,completed,failed,completion_s,"
    "delay_s,violated_survival";
inline const char* kCyclesCsvHeader =
    "cycle,n_sym_s,n_sym_c,m_req_s,m_req_c,pd,detected,feasible,sector_id,"
    "agv_distance_m,gamma_sens";

/// Write packets.csv and cycles.csv. Unfinished packets leave completion_s
/// and delay_s empty. Output is byte-stable for a fixed seed.
inline void export_csv(const MetricsReport& report, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    {
        std::ofstream out(dir / "packets.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / "packets.csv").string());
        std::string buf;
        buf.reserve(1 << 20);
        buf += kPacketsCsvHeader;
        buf += '\n';
        for (const auto& p : report.packets) {
            buf += fmt_int(p.id);
            buf += ',';
            buf += fmt_int(p.user);
            buf += ',';
            buf += fmt_double(p.arrival_s);
            buf += ',';
            buf += fmt_int(p.size_bits);
            buf += ',';
            buf += fmt_int(p.attempts);
            buf += ',';
            buf += p.completed ? '1' : '0';
            buf += ',';
            buf += p.failed ? '1' : '0';
            buf += ',';
            if (p.completed) buf += fmt_double(p.completion_s);
            buf += ',';
            if (p.completed) buf += fmt_double(p.delay_s);
            buf += ',';
            buf += p.violated_survival ? '1' : '0';
            buf += '\n';
            if (buf.size() > (1 << 20)) {
                out << buf;
                buf.clear();
            }
        }
        out << buf;
    }
    {
        std::ofstream out(dir / "cycles.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / "cycles.csv").string());
        std::string buf;
        buf.reserve(1 << 20);
        buf += kCyclesCsvHeader;
        buf += '\n';
        for (const auto& c : report.cycles) {
            buf += fmt_int(c.cycle);
            buf += ',';
            buf += fmt_int(c.n_sym_s);
            buf += ',';
            buf += fmt_int(c.n_sym_c);
            buf += ',';
            buf += fmt_int(c.m_req_s);
            buf += ',';
            buf += fmt_int(c.m_req_c);
            buf += ',';
            buf += fmt_double(c.pd);
            buf += ',';
            buf += c.detected ? '1' : '0';
            buf += ',';
            buf += c.feasible ? '1' : '0';
            buf += ',';
            buf += fmt_int(c.sector_id);
            buf += ',';
            buf += fmt_double(c.agv_distance_m);
            buf += ',';
            buf += fmt_double(c.gamma_sens);
            buf += '\n';
            if (buf.size() > (1 << 20)) {
                out << buf;
                buf.clear();
            }
        }
        out << buf;
    }
}

inline nlohmann::ordered_json summary_to_json(const RunSummary& s) {
    nlohmann::ordered_json j;
    j["meta"] = {
        {"seed", s.meta.seed},
        {"scheduler", sched::to_string(s.meta.scheduler)},
        {"config_hash", s.meta.config_hash},
        {"horizon_s", s.meta.horizon_s},
        {"survival_time_s", s.meta.survival_time_s},
        {"symbol_s", s.meta.symbol_s},
        {"symbols_per_cycle", s.meta.symbols_per_cycle},
        {"pd_formula",
         s.meta.pd_formula == sensing::PdFormula::Paper ? "paper" : "classical"},
        {"pfa_sweep", s.meta.pfa_sweep},
    };
    j["packets"] = {
        {"total", s.packets_total},
        {"completed", s.packets_completed},
        {"failed", s.packets_failed},
        {"censored", s.packets_censored},
        {"survival_violations", s.survival_violations},
        {"violation_rate", s.violation_rate},
        {"delay_p50_s", s.delay_p50},
        {"delay_p90_s", s.delay_p90},
        {"delay_p99_s", s.delay_p99},
        {"delay_max_s", s.delay_max},
        {"delay_mean_s", s.delay_mean},
    };
    j["cycles"] = {
        {"total", s.cycles_total},
        {"infeasible", s.cycles_infeasible},
        {"mean_pd", s.mean_pd},
        {"detection_rate", s.detection_rate},
        {"symbols_sensing", s.symbols_sensing},
        {"symbols_comm", s.symbols_comm},
    };
    nlohmann::ordered_json hist_s = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.n_sym_s_hist) hist_s[fmt_int(k)] = v;
    nlohmann::ordered_json hist_c = nlohmann::ordered_json::object();
    for (const auto& [k, v] : s.n_sym_c_hist) hist_c[fmt_int(k)] = v;
    j["allocation"] = {{"n_sym_s_hist", hist_s}, {"n_sym_c_hist", hist_c}};
    nlohmann::ordered_json sectors = nlohmann::ordered_json::array();
    for (const auto& sec : s.sectors)
        sectors.push_back({{"sector_id", sec.sector_id},
                           {"clutter_density", sec.clutter_density},
                           {"cycles", sec.cycles},
                           {"mean_n_sym_s", sec.mean_n_sym_s},
                           {"mean_m_req_s", sec.mean_m_req_s},
                           {"mean_pd", sec.mean_pd}});
    j["sectors"] = sectors;
    nlohmann::ordered_json curves = nlohmann::ordered_json::array();
    for (const auto& c : s.pd_curves)
        curves.push_back({{"pfa", c.pfa}, {"mean_pd", c.mean}, {"deciles", c.deciles}});
    j["pd_curves"] = curves;
    return j;
}

/// Write summary.json next to the CSV exports.
inline void export_json(const RunSummary& summary, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream out(dir / "summary.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "summary.json").string());
    out << summary_to_json(summary).dump(2) << '\n';
}

} // namespace isacsim::metrics

#endif
