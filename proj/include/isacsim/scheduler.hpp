// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_SCHEDULER_HPP
#define ISACSIM_SCHEDULER_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace isacsim::sched {

enum class SchedulerKind { Nbs, RoundRobin };

/// Guaranteed minima of the two bargainers plus the symbol budget.
struct DisagreementPoints {
    long m_req_s = 0;  // minimum sensing symbols
    long m_req_c = 0;  // minimum communication symbols
    long n_tot = 0;    // symbols per cycle

    bool feasible() const { return m_req_s + m_req_c <= n_tot; }
};

/// Per-cycle split. The budget is always spent in full: both utilities are
/// strictly increasing in their own share, so idle symbols are never optimal.
struct ScheduleDecision {
    long n_sym_s = 0;
    long n_sym_c = 0;
    double u_sens_s = 0.0;  // (n_sym_s - m_req_s) * T_sym
    double u_com_s = 0.0;   // (n_sym_c - m_req_c) * T_sym
    bool feasible = true;
    SchedulerKind scheduler = SchedulerKind::Nbs;
};

/// Product of the two utility gains for a candidate sensing share.
inline double nash_product(const DisagreementPoints& d, long n_sym_s, double symbol_s) {
    const double us = static_cast<double>(n_sym_s - d.m_req_s) * symbol_s;
    const double uc = static_cast<double>(d.n_tot - n_sym_s - d.m_req_c) * symbol_s;
    return us * uc;
}

namespace detail {
inline ScheduleDecision finish(const DisagreementPoints& d, long n_sym_s, bool feasible,
                               SchedulerKind kind, double symbol_s) {
    ScheduleDecision dec;
    dec.n_sym_s = n_sym_s;
    dec.n_sym_c = d.n_tot - n_sym_s;
    dec.u_sens_s = static_cast<double>(dec.n_sym_s - d.m_req_s) * symbol_s;
    dec.u_com_s = static_cast<double>(dec.n_sym_c - d.m_req_c) * symbol_s;
    dec.feasible = feasible;
    dec.scheduler = kind;
    return dec;
}

/// Fallback when no split can cover both minima: share the budget in
/// proportion to the demands and flag the cycle.
inline ScheduleDecision infeasible_split(const DisagreementPoints& d, SchedulerKind kind,
                                         double symbol_s) {
    const double total = static_cast<double>(d.m_req_s + d.m_req_c);
    long n_s = static_cast<long>(
        std::llround(static_cast<double>(d.n_tot) * static_cast<double>(d.m_req_s) / total));
    n_s = std::max<long>(0, std::min(n_s, d.n_tot));
    return finish(d, n_s, false, kind, symbol_s);
}
} // namespace detail

/// Closed-form bargaining optimum: the continuous solution is the midpoint
/// n_s* = (M_s + N - M_c)/2; the returned integer split is whichever of its
/// floor/ceil pair has the larger utility product, ties toward sensing.
inline ScheduleDecision nbs_allocate(const DisagreementPoints& d, double symbol_s) {
    if (d.n_tot < 2) throw std::domain_error("nbs_allocate: need at least 2 symbols");
    if (d.m_req_s < 0 || d.m_req_c < 0)
        throw std::domain_error("nbs_allocate: negative disagreement point");
    if (!d.feasible()) return detail::infeasible_split(d, SchedulerKind::Nbs, symbol_s);

    const double cont = 0.5 * static_cast<double>(d.m_req_s + d.n_tot - d.m_req_c);
    auto clamp = [&](long v) {
        return std::max(d.m_req_s, std::min(v, d.n_tot - d.m_req_c));
    };
    const long lo = clamp(static_cast<long>(std::floor(cont)));
    const long hi = clamp(static_cast<long>(std::ceil(cont)));
    const long pick =
        nash_product(d, hi, symbol_s) >= nash_product(d, lo, symbol_s) ? hi : lo;
    return detail::finish(d, pick, true, SchedulerKind::Nbs, symbol_s);
}

/// Exhaustive argmax of the utility product over all integer splits with
/// nonnegative gains. Verification reference for nbs_allocate; ties toward
/// the larger sensing share.
inline ScheduleDecision nbs_oracle(const DisagreementPoints& d, double symbol_s) {
    if (d.n_tot < 2) throw std::domain_error("nbs_oracle: need at least 2 symbols");
    if (d.n_tot > 10000) throw std::domain_error("nbs_oracle: exhaustive bound is 1e4 symbols");
    if (!d.feasible()) return detail::infeasible_split(d, SchedulerKind::Nbs, symbol_s);

    long best = d.m_req_s;
    double best_prod = nash_product(d, best, symbol_s);
    for (long n = d.m_req_s; n <= d.n_tot - d.m_req_c; ++n) {
        const double prod = nash_product(d, n, symbol_s);
        if (prod >= best_prod) {
            best_prod = prod;
            best = n;
        }
    }
    return detail::finish(d, best, true, SchedulerKind::Nbs, symbol_s);
}

/// Static baseline: half the budget each, independent of the requirements.
/// The feasible flag records whether the fixed split happens to cover them.
inline ScheduleDecision round_robin_allocate(const DisagreementPoints& d, double symbol_s) {
    if (d.n_tot < 2 || d.n_tot % 2 != 0)
        throw std::domain_error("round_robin_allocate: budget must be even");
    const long half = d.n_tot / 2;
    const bool covers = half >= d.m_req_s && half >= d.m_req_c;
    return detail::finish(d, half, covers, SchedulerKind::RoundRobin, symbol_s);
}

/// Log-sum objective, defined on the strict interior of the bargaining set.
inline double log_nbs_objective(const DisagreementPoints& d, long n_sym_s, double symbol_s) {
    const double us = static_cast<double>(n_sym_s - d.m_req_s) * symbol_s;
    const double uc = static_cast<double>(d.n_tot - n_sym_s - d.m_req_c) * symbol_s;
    if (!(us > 0.0) || !(uc > 0.0))
        throw std::domain_error("log_nbs_objective: outside the strict interior");
    return std::log(us) + std::log(uc);
}

inline std::string to_string(SchedulerKind k) {
    return k == SchedulerKind::Nbs ? "nbs" : "rr";
}

} // namespace isacsim::sched

#endif
