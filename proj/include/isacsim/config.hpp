// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_CONFIG_HPP
#define ISACSIM_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chanmodel.hpp"
#include "scheduler.hpp"
#include "sensing.hpp"
#include "textio.hpp"
#include "units.hpp"

namespace isacsim::cfg {

/// All validation problems of a config, reported together.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration (" + std::to_string(v.size()) + " issue(s)):";
        for (const auto& i : v) s += "\n  - " + i;
        return s;
    }
    std::vector<std::string> issues_;
};

struct RadioConfig {
    double fc_ghz = 3.5;
    double bandwidth_mhz = 100.0;
    double scs_khz = 30.0;
    double cp_fraction = 0.0703;   // normal cyclic prefix
    long symbols_per_cycle = 28;   // two 14-symbol slots per 1 ms subframe
    long total_rbs = 273;          // schedulable RBs at 100 MHz / 30 kHz
};

struct SensingConfig {
    double tx_power_dbm = 30.0;
    double beamwidth_deg = 27.0;
    double rcs_dbsm = 7.0;
    double noise_figure_db = 9.0;
    double temperature_k = 290.0;
    long n_subcarriers = 3276;
    double pd_target = 0.9;
    double pfa = 1e-4;
    std::vector<double> pfa_sweep = {1e-2, 1e-4, 1e-6};
    sensing::PdFormula pd_formula = sensing::PdFormula::Paper;
};

struct UrllcConfig {
    long packet_bits = 256;
    double bler = 1e-3;
    double reliability = 1e-5;
    double survival_time = 1e-3;  // seconds
    long retx_limit = 3;
    double mcs_bits_per_hz = 2.0;
    long tti_symbols = 2;
};

struct TrafficConfig {
    long users = 10;
    double lambda_min = 1000.0;    // the per-second rate set is
    double lambda_step = 1000.0;   // {min, min+step, ..., max}, cumulative
    double lambda_max = 400000.0;  // over all users
    double fixed_lambda = 0.0;     // > 0 pins the rate (no per-second resampling)
    std::vector<double> lambda_sweep = {1000,   2000,   5000,   10000,  20000,
                                        50000,  100000, 200000, 400000};
};

struct HallConfig {
    double width_m = 200.0;
    double height_m = 200.0;
    double bs_x_m = 100.0;
    double bs_y_m = 100.0;
    double bs_height_m = 8.0;
    double ut_height_m = 1.5;
};

struct AgvConfig {
    double speed_mps = 4.0;
    double start_m = -1.0;             // -1: uniform random on the track
    std::vector<double> track = {0.0, 25.0, 200.0, 25.0};  // polyline x,y pairs
};

struct SectorConfig {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    double clutter_density = 0.5;
    double clutter_size_m = 2.0;
    double clutter_height_m = 6.0;
    chan::PathLossFamily pathloss = chan::PathLossFamily::DH;
    chan::LosBranch los = chan::LosBranch::DH;
};

struct RunConfig {
    double horizon_s = 20.0;
    std::uint64_t seed = 1;
    sched::SchedulerKind scheduler = sched::SchedulerKind::Nbs;
    long nbs_period_cycles = 1;  // re-solve cadence of the bargaining problem
};

struct SimConfig {
    RadioConfig radio;
    SensingConfig sensing;
    UrllcConfig urllc;
    TrafficConfig traffic;
    HallConfig hall;
    AgvConfig agv;
    RunConfig run;
    std::vector<SectorConfig> sectors;  // must tile the hall

    double symbol_s() const { return (1.0 + radio.cp_fraction) / (radio.scs_khz * 1e3); }

    std::vector<double> lambda_set() const {
        std::vector<double> set;
        for (double v = traffic.lambda_min; v <= traffic.lambda_max + 1e-9;
             v += traffic.lambda_step)
            set.push_back(v);
        return set;
    }
};

/// Defaults: the evaluated operating point. Eight 25 m strips alternate
/// dense machinery rows (r=0.6, 2 m obstacles) and sparse storage areas
/// (r=0.1, 15 m units); the AGV track runs along y=25 so a run sweeps both
/// clutter classes.
inline SimConfig default_config() {
    SimConfig c;
    for (int i = 0; i < 8; ++i) {
        SectorConfig s;
        s.x0 = 25.0 * i;
        s.x1 = 25.0 * (i + 1);
        s.y0 = 0.0;
        s.y1 = 200.0;
        const bool dense = (i % 2 == 0);
        s.clutter_density = dense ? 0.6 : 0.1;
        s.clutter_size_m = dense ? 2.0 : 15.0;
        s.clutter_height_m = 6.0;
        s.pathloss = chan::PathLossFamily::DH;
        s.los = dense ? chan::LosBranch::DH : chan::LosBranch::SH;
        c.sectors.push_back(s);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Parsing: flat key/value with [section] headers and repeated [[sector]]
// tables. Values are numbers, booleans, quoted strings, or [n, n, ...]
// arrays of numbers. Unknown sections or keys are rejected.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::string strip_comment(std::string_view line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return std::string(line.substr(0, i));
    }
    return std::string(line);
}

struct Value {
    enum class Kind { Number, Bool, String, Array } kind;
    double num = 0.0;
    bool b = false;
    std::string str;
    std::vector<double> arr;
};

inline bool parse_value(const std::string& text, Value& out) {
    if (text.empty()) return false;
    if (text == "true" || text == "false") {
        out.kind = Value::Kind::Bool;
        out.b = text == "true";
        return true;
    }
    if (text.front() == '"') {
        if (text.size() < 2 || text.back() != '"') return false;
        out.kind = Value::Kind::String;
        out.str = text.substr(1, text.size() - 2);
        return true;
    }
    if (text.front() == '[') {
        if (text.back() != ']') return false;
        out.kind = Value::Kind::Array;
        std::string body = text.substr(1, text.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::string t = trim(item);
            if (t.empty()) return false;
            try {
                out.arr.push_back(parse_double(t));
            } catch (const std::exception&) {
                return false;
            }
        }
        return true;
    }
    try {
        out.num = parse_double(text);
        out.kind = Value::Kind::Number;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

class Assigner {
public:
    Assigner(SimConfig& cfg, std::vector<std::string>& issues) : cfg_(cfg), issues_(issues) {}

    void assign(const std::string& section, const std::string& key, const Value& v,
                int line_no) {
        const std::string where = section + "." + key;
        auto bad = [&](const char* expected) {
            issues_.push_back("line " + std::to_string(line_no) + ": " + where + ": expected " +
                              expected);
        };
        auto num = [&](double& target) {
            if (v.kind == Value::Kind::Number) target = v.num;
            else bad("a number");
        };
        auto integer = [&](long& target) {
            if (v.kind == Value::Kind::Number && v.num == std::floor(v.num))
                target = static_cast<long>(v.num);
            else bad("an integer");
        };
        auto arr = [&](std::vector<double>& target) {
            if (v.kind == Value::Kind::Array) target = v.arr;
            else bad("an array");
        };

        if (section == "radio") {
            if (key == "fc_ghz") num(cfg_.radio.fc_ghz);
            else if (key == "bandwidth_mhz") num(cfg_.radio.bandwidth_mhz);
            else if (key == "scs_khz") num(cfg_.radio.scs_khz);
            else if (key == "cp_fraction") num(cfg_.radio.cp_fraction);
            else if (key == "symbols_per_cycle") integer(cfg_.radio.symbols_per_cycle);
            else if (key == "total_rbs") integer(cfg_.radio.total_rbs);
            else unknown(where, line_no);
        } else if (section == "sensing") {
            if (key == "tx_power_dbm") num(cfg_.sensing.tx_power_dbm);
            else if (key == "beamwidth_deg") num(cfg_.sensing.beamwidth_deg);
            else if (key == "rcs_dbsm") num(cfg_.sensing.rcs_dbsm);
            else if (key == "noise_figure_db") num(cfg_.sensing.noise_figure_db);
            else if (key == "temperature_k") num(cfg_.sensing.temperature_k);
            else if (key == "n_subcarriers") integer(cfg_.sensing.n_subcarriers);
            else if (key == "pd_target") num(cfg_.sensing.pd_target);
            else if (key == "pfa") num(cfg_.sensing.pfa);
            else if (key == "pfa_sweep") arr(cfg_.sensing.pfa_sweep);
            else if (key == "pd_formula") {
                if (v.kind == Value::Kind::String && v.str == "paper")
                    cfg_.sensing.pd_formula = sensing::PdFormula::Paper;
                else if (v.kind == Value::Kind::String && v.str == "classical")
                    cfg_.sensing.pd_formula = sensing::PdFormula::Classical;
                else bad("\"paper\" or \"classical\"");
            } else unknown(where, line_no);
        } else if (section == "urllc") {
            if (key == "packet_bits") integer(cfg_.urllc.packet_bits);
            else if (key == "bler") num(cfg_.urllc.bler);
            else if (key == "reliability") num(cfg_.urllc.reliability);
            else if (key == "survival_time") num(cfg_.urllc.survival_time);
            else if (key == "retx_limit") integer(cfg_.urllc.retx_limit);
            else if (key == "mcs_bits_per_hz") num(cfg_.urllc.mcs_bits_per_hz);
            else if (key == "tti_symbols") integer(cfg_.urllc.tti_symbols);
            else unknown(where, line_no);
        } else if (section == "traffic") {
            if (key == "users") integer(cfg_.traffic.users);
            else if (key == "lambda_min") num(cfg_.traffic.lambda_min);
            else if (key == "lambda_step") num(cfg_.traffic.lambda_step);
            else if (key == "lambda_max") num(cfg_.traffic.lambda_max);
            else if (key == "fixed_lambda") num(cfg_.traffic.fixed_lambda);
            else if (key == "lambda_sweep") arr(cfg_.traffic.lambda_sweep);
            else unknown(where, line_no);
        } else if (section == "hall") {
            if (key == "width_m") num(cfg_.hall.width_m);
            else if (key == "height_m") num(cfg_.hall.height_m);
            else if (key == "bs_x_m") num(cfg_.hall.bs_x_m);
            else if (key == "bs_y_m") num(cfg_.hall.bs_y_m);
            else if (key == "bs_height_m") num(cfg_.hall.bs_height_m);
            else if (key == "ut_height_m") num(cfg_.hall.ut_height_m);
            else unknown(where, line_no);
        } else if (section == "agv") {
            if (key == "speed_mps") num(cfg_.agv.speed_mps);
            else if (key == "start_m") num(cfg_.agv.start_m);
            else if (key == "track") arr(cfg_.agv.track);
            else unknown(where, line_no);
        } else if (section == "run") {
            if (key == "horizon_s") num(cfg_.run.horizon_s);
            else if (key == "seed") {
                if (v.kind == Value::Kind::Number && v.num >= 0 && v.num == std::floor(v.num))
                    cfg_.run.seed = static_cast<std::uint64_t>(v.num);
                else bad("a nonnegative integer");
            } else if (key == "scheduler") {
                if (v.kind == Value::Kind::String && v.str == "nbs")
                    cfg_.run.scheduler = sched::SchedulerKind::Nbs;
                else if (v.kind == Value::Kind::String && v.str == "rr")
                    cfg_.run.scheduler = sched::SchedulerKind::RoundRobin;
                else bad("\"nbs\" or \"rr\"");
            } else if (key == "nbs_period_cycles") integer(cfg_.run.nbs_period_cycles);
            else unknown(where, line_no);
        } else if (section == "sector") {
            SectorConfig& s = cfg_.sectors.back();
            if (key == "x0") num(s.x0);
            else if (key == "y0") num(s.y0);
            else if (key == "x1") num(s.x1);
            else if (key == "y1") num(s.y1);
            else if (key == "clutter_density") num(s.clutter_density);
            else if (key == "clutter_size_m") num(s.clutter_size_m);
            else if (key == "clutter_height_m") num(s.clutter_height_m);
            else if (key == "pathloss") {
                if (v.kind == Value::Kind::String && v.str == "SH")
                    s.pathloss = chan::PathLossFamily::SH;
                else if (v.kind == Value::Kind::String && v.str == "DH")
                    s.pathloss = chan::PathLossFamily::DH;
                else bad("\"SH\" or \"DH\"");
            } else if (key == "los") {
                if (v.kind != Value::Kind::String) { bad("\"SL\", \"DL\", \"SH\" or \"DH\""); return; }
                if (v.str == "SL") s.los = chan::LosBranch::SL;
                else if (v.str == "DL") s.los = chan::LosBranch::DL;
                else if (v.str == "SH") s.los = chan::LosBranch::SH;
                else if (v.str == "DH") s.los = chan::LosBranch::DH;
                else bad("\"SL\", \"DL\", \"SH\" or \"DH\"");
            } else unknown(where, line_no);
        } else {
            issues_.push_back("line " + std::to_string(line_no) + ": unknown section [" +
                              section + "]");
        }
    }

private:
    void unknown(const std::string& where, int line_no) {
        issues_.push_back("line " + std::to_string(line_no) + ": unknown key " + where);
    }

    SimConfig& cfg_;
    std::vector<std::string>& issues_;
};

} // namespace detail

/// Parse config text over the defaults. A [[sector]] table replaces the
/// default sector map from the first occurrence on.
inline SimConfig parse_config_text(const std::string& text, const std::string& source_name) {
    SimConfig cfg = default_config();
    std::vector<std::string> issues;
    detail::Assigner assigner(cfg, issues);

    std::string section;
    bool sectors_cleared = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = detail::trim(detail::strip_comment(raw));
        if (line.empty()) continue;
        if (line == "[[sector]]") {
            if (!sectors_cleared) {
                cfg.sectors.clear();
                sectors_cleared = true;
            }
            cfg.sectors.emplace_back();
            section = "sector";
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                issues.push_back("line " + std::to_string(line_no) + ": malformed section header '" +
                                 line + "'");
                continue;
            }
            section = line.substr(1, line.size() - 2);
            static const char* known[] = {"radio", "sensing", "urllc", "traffic",
                                          "hall",  "agv",     "run"};
            bool ok = false;
            for (const char* k : known) ok = ok || section == k;
            if (!ok) {
                issues.push_back("line " + std::to_string(line_no) + ": unknown section [" +
                                 section + "]");
                section.clear();
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        if (section.empty()) {
            issues.push_back("line " + std::to_string(line_no) +
                             ": key outside any [section]");
            continue;
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value_text = detail::trim(line.substr(eq + 1));
        detail::Value value;
        if (!detail::parse_value(value_text, value)) {
            issues.push_back("line " + std::to_string(line_no) + ": " + section + "." + key +
                             ": unparseable value '" + value_text + "'");
            continue;
        }
        assigner.assign(section, key, value, line_no);
    }
    if (!issues.empty()) {
        issues.insert(issues.begin(), "while parsing " + source_name);
        throw ConfigError(std::move(issues));
    }
    return cfg;
}

inline SimConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline std::vector<std::string> validation_issues(const SimConfig& c) {
    std::vector<std::string> out;
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) out.push_back(msg);
    };

    require(c.radio.fc_ghz > 0, "radio.fc_ghz: must be positive");
    require(c.radio.bandwidth_mhz > 0, "radio.bandwidth_mhz: must be positive");
    require(c.radio.scs_khz > 0, "radio.scs_khz: must be positive");
    require(c.radio.cp_fraction > 0, "radio.cp_fraction: must be positive");
    require(c.radio.symbols_per_cycle >= 2 && c.radio.symbols_per_cycle % 2 == 0,
            "radio.symbols_per_cycle: must be an even count of at least 2");
    require(c.radio.total_rbs >= 1, "radio.total_rbs: must be at least 1");
    if (c.radio.scs_khz > 0 && c.radio.bandwidth_mhz > 0)
        require(static_cast<double>(c.radio.total_rbs) * 12.0 * c.radio.scs_khz * 1e3 <=
                    c.radio.bandwidth_mhz * 1e6 + 1e-6,
                "radio.total_rbs: exceeds the carrier bandwidth");
    if (c.radio.scs_khz > 0 && c.radio.cp_fraction > 0)
        require(static_cast<double>(c.radio.symbols_per_cycle) * c.symbol_s() <=
                    1e-3 + c.symbol_s(),
                "radio.symbols_per_cycle: does not fit a 1 ms cycle");

    require(c.sensing.beamwidth_deg > 0 && c.sensing.beamwidth_deg <= 360,
            "sensing.beamwidth_deg: must lie in (0, 360]");
    require(c.sensing.temperature_k > 0, "sensing.temperature_k: must be positive");
    require(c.sensing.n_subcarriers >= 1, "sensing.n_subcarriers: must be at least 1");
    require(c.sensing.pfa > 0 && c.sensing.pfa < 1, "sensing.pfa: must lie in (0,1)");
    require(c.sensing.pd_target > 0 && c.sensing.pd_target < 1,
            "sensing.pd_target: must lie in (0,1)");
    if (c.sensing.pfa > 0 && c.sensing.pd_target < 1)
        require(c.sensing.pfa < c.sensing.pd_target,
                "sensing.pfa: must be below sensing.pd_target");
    require(!c.sensing.pfa_sweep.empty(), "sensing.pfa_sweep: must not be empty");
    for (double v : c.sensing.pfa_sweep)
        require(v > 0 && v < 1, "sensing.pfa_sweep: entries must lie in (0,1)");

    require(c.urllc.packet_bits >= 1, "urllc.packet_bits: must be at least 1 bit");
    require(c.urllc.bler > 0 && c.urllc.bler < 1, "urllc.bler: must lie in (0,1)");
    require(c.urllc.reliability > 0 && c.urllc.reliability < 1,
            "urllc.reliability: must lie in (0,1)");
    require(c.urllc.survival_time > 0, "urllc.survival_time: must be positive");
    require(c.urllc.retx_limit >= 0, "urllc.retx_limit: must be nonnegative");
    require(c.urllc.mcs_bits_per_hz > 0, "urllc.mcs_bits_per_hz: must be positive");
    require(c.urllc.tti_symbols >= 1 && c.urllc.tti_symbols <= c.radio.symbols_per_cycle,
            "urllc.tti_symbols: must lie in [1, symbols_per_cycle]");

    require(c.traffic.users >= 1, "traffic.users: must be at least 1");
    require(c.traffic.lambda_min >= 0, "traffic.lambda_min: must be nonnegative");
    require(c.traffic.lambda_step > 0, "traffic.lambda_step: must be positive");
    require(c.traffic.lambda_max >= c.traffic.lambda_min,
            "traffic.lambda_max: must be at least lambda_min");
    require(c.traffic.fixed_lambda >= 0, "traffic.fixed_lambda: must be nonnegative");

    require(c.hall.width_m > 0, "hall.width_m: must be positive");
    require(c.hall.height_m > 0, "hall.height_m: must be positive");
    require(c.hall.bs_x_m >= 0 && c.hall.bs_x_m <= c.hall.width_m,
            "hall.bs_x_m: must lie inside the hall");
    require(c.hall.bs_y_m >= 0 && c.hall.bs_y_m <= c.hall.height_m,
            "hall.bs_y_m: must lie inside the hall");
    require(c.hall.ut_height_m > 0, "hall.ut_height_m: must be positive");
    require(c.hall.bs_height_m > c.hall.ut_height_m,
            "hall.bs_height_m: must exceed ut_height_m");

    require(!c.sectors.empty(), "sector: at least one sector is required");
    double area = 0.0;
    for (std::size_t i = 0; i < c.sectors.size(); ++i) {
        const auto& s = c.sectors[i];
        const std::string tag = "sector[" + std::to_string(i) + "]";
        require(s.x1 > s.x0 && s.y1 > s.y0, tag + ": bounds must have positive extent");
        require(s.x0 >= 0 && s.y0 >= 0 && s.x1 <= c.hall.width_m && s.y1 <= c.hall.height_m,
                tag + ": bounds must lie inside the hall");
        require(s.clutter_density > 0 && s.clutter_density < 1,
                tag + ".clutter_density: must lie in (0,1)");
        require(s.clutter_size_m > 0, tag + ".clutter_size_m: must be positive");
        if (s.los == chan::LosBranch::SH || s.los == chan::LosBranch::DH)
            require(s.clutter_height_m > c.hall.ut_height_m,
                    tag + ".clutter_height_m: must exceed ut_height_m for the SH/DH branch");
        area += (s.x1 - s.x0) * (s.y1 - s.y0);
        for (std::size_t j = i + 1; j < c.sectors.size(); ++j) {
            const auto& t = c.sectors[j];
            const bool overlap = s.x0 < t.x1 && t.x0 < s.x1 && s.y0 < t.y1 && t.y0 < s.y1;
            require(!overlap, tag + ": overlaps sector[" + std::to_string(j) + "]");
        }
    }
    require(std::abs(area - c.hall.width_m * c.hall.height_m) <= 1e-6,
            "sector: sectors must tile the hall exactly");

    require(c.agv.speed_mps > 0, "agv.speed_mps: must be positive");
    require(c.agv.track.size() >= 4 && c.agv.track.size() % 2 == 0,
            "agv.track: needs at least two x,y points");
    for (std::size_t i = 0; i + 1 < c.agv.track.size(); i += 2) {
        require(c.agv.track[i] >= 0 && c.agv.track[i] <= c.hall.width_m &&
                    c.agv.track[i + 1] >= 0 && c.agv.track[i + 1] <= c.hall.height_m,
                "agv.track: point " + std::to_string(i / 2) + " lies outside the hall");
    }

    require(c.run.horizon_s >= 0, "run.horizon_s: must be nonnegative");
    require(c.run.nbs_period_cycles >= 1, "run.nbs_period_cycles: must be at least 1");
    return out;
}

inline void validate(const SimConfig& c) {
    auto issues = validation_issues(c);
    if (!issues.empty()) throw ConfigError(std::move(issues));
}

// ---------------------------------------------------------------------------
// Canonical serialization and fingerprint
// ---------------------------------------------------------------------------

inline std::string canonical_string(const SimConfig& c) {
    std::string s;
    auto kv = [&](const char* key, const std::string& val) {
        s += key;
        s += '=';
        s += val;
        s += '\n';
    };
    kv("radio.fc_ghz", fmt_double(c.radio.fc_ghz));
    kv("radio.bandwidth_mhz", fmt_double(c.radio.bandwidth_mhz));
    kv("radio.scs_khz", fmt_double(c.radio.scs_khz));
    kv("radio.cp_fraction", fmt_double(c.radio.cp_fraction));
    kv("radio.symbols_per_cycle", fmt_int(c.radio.symbols_per_cycle));
    kv("radio.total_rbs", fmt_int(c.radio.total_rbs));
    kv("sensing.tx_power_dbm", fmt_double(c.sensing.tx_power_dbm));
    kv("sensing.beamwidth_deg", fmt_double(c.sensing.beamwidth_deg));
    kv("sensing.rcs_dbsm", fmt_double(c.sensing.rcs_dbsm));
    kv("sensing.noise_figure_db", fmt_double(c.sensing.noise_figure_db));
    kv("sensing.temperature_k", fmt_double(c.sensing.temperature_k));
    kv("sensing.n_subcarriers", fmt_int(c.sensing.n_subcarriers));
    kv("sensing.pd_target", fmt_double(c.sensing.pd_target));
    kv("sensing.pfa", fmt_double(c.sensing.pfa));
    {
        std::string arr;
        for (double v : c.sensing.pfa_sweep) {
            if (!arr.empty()) arr += ',';
            arr += fmt_double(v);
        }
        kv("sensing.pfa_sweep", arr);
    }
    kv("sensing.pd_formula",
       c.sensing.pd_formula == sensing::PdFormula::Paper ? "paper" : "classical");
    kv("urllc.packet_bits", fmt_int(c.urllc.packet_bits));
    kv("urllc.bler", fmt_double(c.urllc.bler));
    kv("urllc.reliability", fmt_double(c.urllc.reliability));
    kv("urllc.survival_time", fmt_double(c.urllc.survival_time));
    kv("urllc.retx_limit", fmt_int(c.urllc.retx_limit));
    kv("urllc.mcs_bits_per_hz", fmt_double(c.urllc.mcs_bits_per_hz));
    kv("urllc.tti_symbols", fmt_int(c.urllc.tti_symbols));
    kv("traffic.users", fmt_int(c.traffic.users));
    kv("traffic.lambda_min", fmt_double(c.traffic.lambda_min));
    kv("traffic.lambda_step", fmt_double(c.traffic.lambda_step));
    kv("traffic.lambda_max", fmt_double(c.traffic.lambda_max));
    kv("traffic.fixed_lambda", fmt_double(c.traffic.fixed_lambda));
    {
        std::string arr;
        for (double v : c.traffic.lambda_sweep) {
            if (!arr.empty()) arr += ',';
            arr += fmt_double(v);
        }
        kv("traffic.lambda_sweep", arr);
    }
    kv("hall.width_m", fmt_double(c.hall.width_m));
    kv("hall.height_m", fmt_double(c.hall.height_m));
    kv("hall.bs_x_m", fmt_double(c.hall.bs_x_m));
    kv("hall.bs_y_m", fmt_double(c.hall.bs_y_m));
    kv("hall.bs_height_m", fmt_double(c.hall.bs_height_m));
    kv("hall.ut_height_m", fmt_double(c.hall.ut_height_m));
    kv("agv.speed_mps", fmt_double(c.agv.speed_mps));
    kv("agv.start_m", fmt_double(c.agv.start_m));
    {
        std::string arr;
        for (double v : c.agv.track) {
            if (!arr.empty()) arr += ',';
            arr += fmt_double(v);
        }
        kv("agv.track", arr);
    }
    kv("run.horizon_s", fmt_double(c.run.horizon_s));
    kv("run.seed", fmt_int(static_cast<std::int64_t>(c.run.seed)));
    kv("run.scheduler", sched::to_string(c.run.scheduler));
    kv("run.nbs_period_cycles", fmt_int(c.run.nbs_period_cycles));
    for (std::size_t i = 0; i < c.sectors.size(); ++i) {
        const auto& sec = c.sectors[i];
        const std::string p = "sector." + std::to_string(i) + ".";
        kv((p + "x0").c_str(), fmt_double(sec.x0));
        kv((p + "y0").c_str(), fmt_double(sec.y0));
        kv((p + "x1").c_str(), fmt_double(sec.x1));
        kv((p + "y1").c_str(), fmt_double(sec.y1));
        kv((p + "clutter_density").c_str(), fmt_double(sec.clutter_density));
        kv((p + "clutter_size_m").c_str(), fmt_double(sec.clutter_size_m));
        kv((p + "clutter_height_m").c_str(), fmt_double(sec.clutter_height_m));
        kv((p + "pathloss").c_str(), chan::to_string(sec.pathloss));
        kv((p + "los").c_str(), chan::to_string(sec.los));
    }
    return s;
}

/// 16-hex-digit fingerprint of the canonical serialization.
inline std::string config_hash(const SimConfig& c) {
    return to_hex(fnv1a64(canonical_string(c)));
}

} // namespace isacsim::cfg

#endif
