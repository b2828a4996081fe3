// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_SIMCORE_HPP
#define ISACSIM_SIMCORE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "chanmodel.hpp"
#include "config.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "scheduler.hpp"
#include "sensing.hpp"
#include "urllc.hpp"

namespace isacsim::sim {

/// Cycle length is one 5G subframe; all scheduling happens on this grid.
inline constexpr double kCycleSeconds = 1e-3;
inline constexpr std::int64_t kCyclesPerSecond = 1000;

// ---------------------------------------------------------------------------
// World geometry
// ---------------------------------------------------------------------------

/// Sectorized hall. Sector rectangles are half-open; the hall's outer max
/// edges close the boundary so that every point maps to exactly one sector.
class Hall {
public:
    Hall(double width_m, double height_m, std::vector<chan::SectorProfile> sectors)
        : width_(width_m), height_(height_m), sectors_(std::move(sectors)) {}

    const chan::SectorProfile& sector_at(double x, double y) const {
        for (const auto& s : sectors_) {
            const bool in_x =
                x >= s.bounds.x0 && (x < s.bounds.x1 || (s.bounds.x1 >= width_ && x <= s.bounds.x1));
            const bool in_y =
                y >= s.bounds.y0 && (y < s.bounds.y1 || (s.bounds.y1 >= height_ && y <= s.bounds.y1));
            if (in_x && in_y) return s;
        }
        throw std::runtime_error("Hall::sector_at: position (" + fmt_double(x) + ", " +
                                 fmt_double(y) + ") is outside every sector");
    }

    double width() const { return width_; }
    double height() const { return height_; }
    const std::vector<chan::SectorProfile>& sectors() const { return sectors_; }

private:
    double width_;
    double height_;
    std::vector<chan::SectorProfile> sectors_;
};

/// Piecewise-linear AGV track, addressed by arc length.
class Track {
public:
    explicit Track(const std::vector<double>& flat_xy) {
        if (flat_xy.size() < 4 || flat_xy.size() % 2 != 0)
            throw std::domain_error("Track: need at least two x,y points");
        for (std::size_t i = 0; i + 1 < flat_xy.size(); i += 2)
            pts_.emplace_back(flat_xy[i], flat_xy[i + 1]);
        cum_.push_back(0.0);
        for (std::size_t i = 1; i < pts_.size(); ++i) {
            const double seg = std::hypot(pts_[i].first - pts_[i - 1].first,
                                          pts_[i].second - pts_[i - 1].second);
            cum_.push_back(cum_.back() + seg);
        }
        if (!(length() > 0.0)) throw std::domain_error("Track: zero length");
    }

    double length() const { return cum_.back(); }

    std::pair<double, double> point_at(double s) const {
        s = std::max(0.0, std::min(s, length()));
        std::size_t i = 1;
        while (i + 1 < cum_.size() && cum_[i] < s) ++i;
        const double seg = cum_[i] - cum_[i - 1];
        const double t = seg > 0.0 ? (s - cum_[i - 1]) / seg : 0.0;
        return {pts_[i - 1].first + t * (pts_[i].first - pts_[i - 1].first),
                pts_[i - 1].second + t * (pts_[i].second - pts_[i - 1].second)};
    }

private:
    std::vector<std::pair<double, double>> pts_;
    std::vector<double> cum_;
};

/// AGV kinematic state along the track.
struct AgvState {
    double track_pos_m = 0.0;
    int direction = 1;  // +1 or -1
    double speed_mps = 4.0;
    bool present = true;  // ground truth for the detection trial
};

/// Advance the AGV by dt, reflecting at the track ends. When
/// resample_direction is set (whole-second boundaries), the heading is
/// redrawn before moving.
inline void step_agv(RngStream& rng, AgvState& agv, double dt, double track_len,
                     bool resample_direction) {
    if (!(dt > 0.0)) throw std::domain_error("step_agv: dt must be positive");
    if (resample_direction) agv.direction = rng.bernoulli(0.5) ? 1 : -1;
    double pos = agv.track_pos_m + agv.direction * agv.speed_mps * dt;
    while (pos < 0.0 || pos > track_len) {
        if (pos < 0.0) {
            pos = -pos;
            agv.direction = 1;
        } else {
            pos = 2.0 * track_len - pos;
            agv.direction = -1;
        }
    }
    agv.track_pos_m = pos;
}

// ---------------------------------------------------------------------------
// Simulation run
// ---------------------------------------------------------------------------

/// One deterministic run: every cycle ingests arrivals, derives the two
/// disagreement points, splits the symbol budget, performs the sensing trial
/// and serves the communication block. Strictly single-threaded; distinct
/// runs share nothing.
class Simulation {
public:
    explicit Simulation(cfg::SimConfig config)
        : cfg_(std::move(config)),
          streams_(cfg_.run.seed),
          queues_(1),
          track_({0, 0, 1, 0}),
          hall_(1, 1, {}) {
        cfg::validate(cfg_);

        timing_ = sensing::SymbolTiming::make(cfg_.radio.scs_khz * 1e3, cfg_.radio.cp_fraction,
                                              cfg_.radio.symbols_per_cycle);
        radar_.tx_power_dbm = cfg_.sensing.tx_power_dbm;
        radar_.beamwidth_rad = deg_to_rad(cfg_.sensing.beamwidth_deg);
        radar_.rcs_dbsm = cfg_.sensing.rcs_dbsm;
        radar_.fc_hz = cfg_.radio.fc_ghz * 1e9;
        radar_.scs_hz = cfg_.radio.scs_khz * 1e3;
        radar_.n_subcarriers = cfg_.sensing.n_subcarriers;
        radar_.noise_figure_db = cfg_.sensing.noise_figure_db;
        radar_.temperature_k = cfg_.sensing.temperature_k;
        radar_.cp_fraction = cfg_.radio.cp_fraction;

        profile_.packet_bits = cfg_.urllc.packet_bits;
        profile_.bler = cfg_.urllc.bler;
        profile_.reliability = cfg_.urllc.reliability;
        profile_.survival_time_s = cfg_.urllc.survival_time;
        profile_.retx_limit = static_cast<int>(cfg_.urllc.retx_limit);
        profile_.mcs_bits_per_hz = cfg_.urllc.mcs_bits_per_hz;
        profile_.rb_bandwidth_hz = 12.0 * cfg_.radio.scs_khz * 1e3;
        profile_.tti_symbols = static_cast<int>(cfg_.urllc.tti_symbols);
        profile_.symbol_s = timing_.symbol_s;
        profile_.total_rbs = cfg_.radio.total_rbs;
        if (urllc::required_rbs(profile_) > profile_.total_rbs)
            throw cfg::ConfigError({"urllc.packet_bits: one packet does not fit the carrier "
                                    "(required RBs exceed radio.total_rbs)"});

        std::vector<chan::SectorProfile> sectors;
        for (std::size_t i = 0; i < cfg_.sectors.size(); ++i) {
            const auto& s = cfg_.sectors[i];
            chan::SectorProfile p;
            p.id = static_cast<int>(i);
            p.clutter_density = s.clutter_density;
            p.clutter_size_m = s.clutter_size_m;
            p.clutter_height_m = s.clutter_height_m;
            p.pathloss = s.pathloss;
            p.los_branch = s.los;
            p.bounds = chan::Rect{s.x0, s.y0, s.x1, s.y1};
            sectors.push_back(p);
        }
        hall_ = Hall(cfg_.hall.width_m, cfg_.hall.height_m, std::move(sectors));
        track_ = Track(cfg_.agv.track);
        if (cfg_.agv.start_m > track_.length())
            throw cfg::ConfigError({"agv.start_m: beyond the track length"});

        gamma_min_ = sensing::required_snr({cfg_.sensing.pd_target, cfg_.sensing.pfa},
                                           cfg_.sensing.pd_formula);
        lambda_set_ = cfg_.lambda_set();
        queues_ = urllc::UserQueues(static_cast<int>(cfg_.traffic.users));

        agv_.speed_mps = cfg_.agv.speed_mps;
        agv_.track_pos_m = cfg_.agv.start_m >= 0.0
                               ? cfg_.agv.start_m
                               : streams_.mobility.uniform01() * track_.length();
        agv_.direction = streams_.mobility.bernoulli(0.5) ? 1 : -1;

        report_.meta.seed = cfg_.run.seed;
        report_.meta.scheduler = cfg_.run.scheduler;
        report_.meta.config_hash = cfg::config_hash(cfg_);
        report_.meta.horizon_s = cfg_.run.horizon_s;
        report_.meta.survival_time_s = cfg_.urllc.survival_time;
        report_.meta.symbol_s = timing_.symbol_s;
        report_.meta.symbols_per_cycle = cfg_.radio.symbols_per_cycle;
        report_.meta.pd_formula = cfg_.sensing.pd_formula;
        report_.meta.pfa_sweep = cfg_.sensing.pfa_sweep;
        for (const auto& s : cfg_.sectors) report_.meta.sector_density.push_back(s.clutter_density);
    }

    metrics::MetricsReport run() {
        const auto cycles = static_cast<std::int64_t>(std::llround(cfg_.run.horizon_s * 1000.0));
        report_.cycles.reserve(static_cast<std::size_t>(cycles));
        for (std::int64_t k = 0; k < cycles; ++k) run_cycle(k);
        flush_unfinished();
        return std::move(report_);
    }

    const cfg::SimConfig& config() const { return cfg_; }
    double gamma_min() const { return gamma_min_; }

private:
    void run_cycle(std::int64_t cycle) {
        const double t0 = static_cast<double>(cycle) * kCycleSeconds;
        const long n_tot = cfg_.radio.symbols_per_cycle;

        // Per-second resampling of the cumulative traffic rate.
        if (cycle % kCyclesPerSecond == 0) {
            if (cfg_.traffic.fixed_lambda > 0.0) {
                lambda_now_ = cfg_.traffic.fixed_lambda;
            } else {
                const auto idx = streams_.traffic.uniform_index(lambda_set_.size());
                lambda_now_ = lambda_set_[idx];
            }
        }

        // (1) Arrivals.
        urllc::TrafficSource src{lambda_now_, static_cast<int>(cfg_.traffic.users)};
        auto arrivals = urllc::draw_arrivals(streams_.traffic, src, t0, kCycleSeconds,
                                             cfg_.urllc.packet_bits, next_packet_id_);
        for (auto& pkt : arrivals) {
            metrics::PacketRecord rec;
            rec.id = pkt.id;
            rec.user = pkt.user;
            rec.arrival_s = pkt.arrival_s;
            rec.size_bits = pkt.size_bits;
            report_.packets.push_back(rec);
            queues_.enqueue(std::move(pkt));
        }

        // (2) Disagreement points. The sensing side plans against the
        // LoS-probability-weighted two-way loss at the AGV's track position;
        // it never sees the realized fading draw.
        const auto [ax, ay] = track_.point_at(agv_.track_pos_m);
        const auto& sector = hall_.sector_at(ax, ay);
        const double d2d = std::hypot(ax - cfg_.hall.bs_x_m, ay - cfg_.hall.bs_y_m);
        const chan::Geometry geom{cfg_.hall.bs_height_m, cfg_.hall.ut_height_m, d2d};
        const double planned_two_way =
            chan::expected_two_way_loss(sector, geom, cfg_.radio.fc_ghz);
        const auto sens_req = sensing::min_sensing_symbols_from_two_way(
            radar_, gamma_min_, planned_two_way, n_tot);
        const auto comm_req = urllc::min_comm_time(profile_, queues_.backlog(), n_tot);
        const sched::DisagreementPoints d{sens_req.symbols, comm_req.symbols, n_tot};

        // (3) Split the budget.
        sched::ScheduleDecision decision;
        if (cfg_.run.scheduler == sched::SchedulerKind::RoundRobin) {
            decision = sched::round_robin_allocate(d, timing_.symbol_s);
        } else if (cycle % cfg_.run.nbs_period_cycles == 0 || !have_held_decision_) {
            decision = sched::nbs_allocate(d, timing_.symbol_s);
            held_decision_ = decision;
            have_held_decision_ = true;
        } else {
            decision = held_decision_;
            decision.feasible =
                decision.n_sym_s >= d.m_req_s && decision.n_sym_c >= d.m_req_c;
        }

        // (4) Sensing trial on the realized channel.
        const auto link =
            chan::sample_link_state(streams_.channel, sector, geom, cfg_.radio.fc_ghz);
        const double gamma_sens =
            sensing::integrated_snr_closed_form(radar_, link.total_db(), decision.n_sym_s);
        const double pd =
            sensing::detection_probability(gamma_sens, cfg_.sensing.pfa, cfg_.sensing.pd_formula);
        const bool detected = agv_.present ? streams_.detection.bernoulli(pd)
                                           : streams_.detection.bernoulli(cfg_.sensing.pfa);

        // (5) Communication block. It leads the cycle so a packet's delay is
        // its queue wait plus one TTI; the sensing block fills the tail.
        auto served = urllc::serve_comm_window(streams_.harq, queues_, decision.n_sym_c,
                                               profile_, t0);
        for (const auto& pkt : served.finished) record_finished(pkt);

        // (6) Cycle record.
        metrics::CycleRecord rec;
        rec.cycle = cycle;
        rec.n_sym_s = decision.n_sym_s;
        rec.n_sym_c = decision.n_sym_c;
        rec.m_req_s = d.m_req_s;
        rec.m_req_c = d.m_req_c;
        rec.pd = pd;
        rec.detected = detected;
        rec.feasible = decision.feasible;
        rec.sector_id = sector.id;
        rec.agv_distance_m = d2d;
        rec.gamma_sens = gamma_sens;
        report_.cycles.push_back(rec);

        // (7) AGV motion; heading redraw takes effect at second boundaries.
        step_agv(streams_.mobility, agv_, kCycleSeconds, track_.length(),
                 (cycle + 1) % kCyclesPerSecond == 0);
    }

    void record_finished(const urllc::UrllcPacket& pkt) {
        auto& rec = report_.packets[static_cast<std::size_t>(pkt.id)];
        rec.attempts = static_cast<int>(pkt.attempts.size());
        if (pkt.completed()) {
            rec.completed = true;
            rec.completion_s = pkt.completion_s;
            rec.delay_s = pkt.delay_s();
            rec.violated_survival = rec.delay_s > cfg_.urllc.survival_time;
        } else {
            rec.failed = pkt.failed;
        }
    }

    void flush_unfinished() {
        for (int u = 0; u < queues_.users(); ++u)
            for (const auto& pkt : queues_.queue(u))
                report_.packets[static_cast<std::size_t>(pkt.id)].attempts =
                    static_cast<int>(pkt.attempts.size());
    }

    cfg::SimConfig cfg_;
    RngStreams streams_;
    sensing::SymbolTiming timing_;
    sensing::RadarParams radar_;
    urllc::UrllcProfile profile_;
    urllc::UserQueues queues_;
    Track track_;
    Hall hall_;
    AgvState agv_;
    double gamma_min_ = 0.0;
    std::vector<double> lambda_set_;
    double lambda_now_ = 0.0;
    std::int64_t next_packet_id_ = 0;
    sched::ScheduleDecision held_decision_;
    bool have_held_decision_ = false;
    metrics::MetricsReport report_;
};

/// Validate, run and collect in one call.
inline metrics::MetricsReport run_simulation(const cfg::SimConfig& config) {
    Simulation s(config);
    return s.run();
}

} // namespace isacsim::sim

#endif
