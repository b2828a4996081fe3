// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_URLLC_HPP
#define ISACSIM_URLLC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "rng.hpp"

namespace isacsim::urllc {

/// Static downlink URLLC service description.
struct UrllcProfile {
    long packet_bits = 256;
    double bler = 1e-3;            // per-transmission block error rate (delta)
    double reliability = 1e-5;     // residual failure budget (sigma_urllc)
    double survival_time_s = 1e-3; // D_max
    int retx_limit = 3;
    double mcs_bits_per_hz = 2.0;  // eta
    double rb_bandwidth_hz = 360e3; // w = 12 * scs
    int tti_symbols = 2;           // kappa
    double symbol_s = 3.567666666666667e-5;
    long total_rbs = 273;          // schedulable RBs per TTI across the carrier

    double tti_s() const { return tti_symbols * symbol_s; }
};

/// RBs needed to carry one packet in one TTI.
inline long required_rbs(const UrllcProfile& p) {
    if (p.packet_bits < 1) throw std::domain_error("required_rbs: packet must be at least 1 bit");
    const double per_rb = p.mcs_bits_per_hz * p.rb_bandwidth_hz *
                          static_cast<double>(p.tti_symbols) * p.symbol_s;
    if (!(per_rb > 0.0)) throw std::domain_error("required_rbs: nonpositive capacity inputs");
    return static_cast<long>(std::ceil(static_cast<double>(p.packet_bits) / per_rb - 1e-9));
}

/// Smallest transmission count n with delta^n <= sigma. Exact powers resolve
/// to the smaller count.
inline long required_transmissions(double delta, double sigma) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::domain_error("required_transmissions: BLER must lie in (0,1)");
    if (!(sigma > 0.0 && sigma < 1.0))
        throw std::domain_error("required_transmissions: reliability must lie in (0,1)");
    const double ratio = std::log(sigma) / std::log(delta);
    long n = static_cast<long>(std::ceil(ratio - 1e-9));
    return std::max<long>(n, 1);
}

/// Minimum communication reservation for the current backlog.
struct CommRequirement {
    double seconds = 0.0;
    long symbols = 0;
};

/// Per-packet floor is min(n_tx * T_sym, D_max); the aggregate over the
/// backlog is capped at the cycle budget and expressed in whole symbols.
inline CommRequirement min_comm_time(const UrllcProfile& p, long backlog, long budget_symbols) {
    if (backlog < 0) throw std::domain_error("min_comm_time: backlog must be nonnegative");
    if (backlog == 0) return {};
    const long n_tx = required_transmissions(p.bler, p.reliability);
    const double per_packet = std::min(static_cast<double>(n_tx) * p.symbol_s, p.survival_time_s);
    const double budget_s = static_cast<double>(budget_symbols) * p.symbol_s;
    CommRequirement req;
    req.seconds = std::min(static_cast<double>(backlog) * per_packet, budget_s);
    req.symbols = std::min<long>(
        static_cast<long>(std::ceil(req.seconds / p.symbol_s - 1e-9)), budget_symbols);
    return req;
}

/// One downlink packet and its transmission history.
struct UrllcPacket {
    struct Attempt {
        double start_s = 0.0;
        bool ok = false;
    };

    std::int64_t id = 0;
    int user = 0;
    double arrival_s = 0.0;
    long size_bits = 0;
    std::vector<Attempt> attempts;
    double completion_s = -1.0;  // < 0 while unfinished
    bool failed = false;         // retransmission budget exhausted

    bool completed() const { return completion_s >= 0.0; }
    double delay_s() const { return completion_s - arrival_s; }
};

/// Per-second cumulative arrival rate, split evenly over the users.
struct TrafficSource {
    double lambda_total = 0.0;  // packets/second over all users
    int users = 1;

    double lambda_per_user() const { return lambda_total / users; }
};

/// Draw this window's arrivals for every user. Counts are Poisson with the
/// per-user rate; instants are uniform in the window and sorted per user.
/// Ids are assigned in draw order, which is scheduler-independent.
inline std::vector<UrllcPacket> draw_arrivals(RngStream& rng, const TrafficSource& src,
                                              double window_start_s, double window_len_s,
                                              long packet_bits, std::int64_t& next_id) {
    std::vector<UrllcPacket> out;
    for (int u = 0; u < src.users; ++u) {
        const long n = rng.poisson(src.lambda_per_user() * window_len_s);
        const std::size_t first = out.size();
        for (long i = 0; i < n; ++i) {
            UrllcPacket pkt;
            pkt.user = u;
            pkt.arrival_s = window_start_s + rng.uniform01() * window_len_s;
            pkt.size_bits = packet_bits;
            out.push_back(pkt);
        }
        std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                  [](const UrllcPacket& a, const UrllcPacket& b) {
                      return a.arrival_s < b.arrival_s;
                  });
        for (std::size_t i = first; i < out.size(); ++i) out[i].id = next_id++;
    }
    return out;
}

/// Per-user FIFO queues with a round-robin service cursor that persists
/// across windows.
class UserQueues {
public:
    explicit UserQueues(int users) : queues_(static_cast<std::size_t>(users)) {}

    void enqueue(UrllcPacket&& pkt) {
        queues_[static_cast<std::size_t>(pkt.user)].push_back(std::move(pkt));
    }

    long backlog() const {
        long total = 0;
        for (const auto& q : queues_) total += static_cast<long>(q.size());
        return total;
    }

    int users() const { return static_cast<int>(queues_.size()); }
    std::deque<UrllcPacket>& queue(int u) { return queues_[static_cast<std::size_t>(u)]; }
    const std::deque<UrllcPacket>& queue(int u) const {
        return queues_[static_cast<std::size_t>(u)];
    }

    int cursor = 0;

private:
    std::vector<std::deque<UrllcPacket>> queues_;
};

/// Outcome of one communication window.
struct ServeResult {
    std::vector<UrllcPacket> finished;  // completed or retry-exhausted
    long attempts = 0;
    long ttis = 0;
    long slots_per_tti = 0;
    long idle_slots = 0;  // slots left empty while no packet was eligible
};

/// Serve the communication block of one cycle.
///
/// The block is diced into TTIs of kappa symbols. Within a TTI up to
/// floor(total_rbs / R) packets transmit in parallel on disjoint RB chunks,
/// picked round-robin across users with eligible head-of-line packets
/// (eligible = already arrived by the TTI start). Each transmission succeeds
/// independently with probability 1 - bler; a failed packet returns to the
/// head of its queue and becomes eligible again at the next TTI, until the
/// retransmission budget is spent.
inline ServeResult serve_comm_window(RngStream& rng, UserQueues& queues, long n_sym_c,
                                     const UrllcProfile& profile, double window_start_s) {
    if (n_sym_c < 0) throw std::domain_error("serve_comm_window: negative symbol count");
    ServeResult res;
    const long rbs_per_packet = required_rbs(profile);
    res.slots_per_tti = profile.total_rbs / rbs_per_packet;
    res.ttis = n_sym_c / profile.tti_symbols;
    if (res.slots_per_tti <= 0) return res;

    const int users = queues.users();
    const int max_attempts = 1 + profile.retx_limit;

    for (long tti = 0; tti < res.ttis; ++tti) {
        const double t0 = window_start_s + static_cast<double>(tti) * profile.tti_s();
        const double t1 = t0 + profile.tti_s();

        // Gather this TTI's transmissions round-robin across users.
        std::vector<UrllcPacket> in_flight;
        long slots = res.slots_per_tti;
        int idle_scans = 0;
        int u = queues.cursor;
        while (slots > 0 && idle_scans < users) {
            auto& q = queues.queue(u);
            if (!q.empty() && q.front().arrival_s <= t0) {
                in_flight.push_back(std::move(q.front()));
                q.pop_front();
                --slots;
                idle_scans = 0;
            } else {
                ++idle_scans;
            }
            u = (u + 1) % users;
        }
        queues.cursor = u;
        res.idle_slots += slots;

        // Resolve attempts; failures re-enter their queue heads in order.
        std::vector<std::vector<UrllcPacket>> requeue(static_cast<std::size_t>(users));
        for (auto& pkt : in_flight) {
            const bool ok = rng.bernoulli(1.0 - profile.bler);
            pkt.attempts.push_back({t0, ok});
            ++res.attempts;
            if (ok) {
                pkt.completion_s = t1;
                res.finished.push_back(std::move(pkt));
            } else if (static_cast<int>(pkt.attempts.size()) >= max_attempts) {
                pkt.failed = true;
                res.finished.push_back(std::move(pkt));
            } else {
                requeue[static_cast<std::size_t>(pkt.user)].push_back(std::move(pkt));
            }
        }
        for (int uu = 0; uu < users; ++uu) {
            auto& bucket = requeue[static_cast<std::size_t>(uu)];
            for (auto it = bucket.rbegin(); it != bucket.rend(); ++it)
                queues.queue(uu).push_front(std::move(*it));
        }
    }
    return res;
}

} // namespace isacsim::urllc

#endif
