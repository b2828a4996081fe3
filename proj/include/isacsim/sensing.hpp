// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_SENSING_HPP
#define ISACSIM_SENSING_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "units.hpp"

namespace isacsim::sensing {

// ---------------------------------------------------------------------------
// Marcum Q function of order 1
// ---------------------------------------------------------------------------
//
// Q1(a,b) = int_b^inf x exp(-(x^2+a^2)/2) I0(ax) dx
//
// Evaluated through the Poisson-mixture form of the noncentral chi-square
// right tail with 2 degrees of freedom and noncentrality a^2:
//
//   Q1(a,b) = sum_{k>=0} pois(k; a^2/2) * P[Pois(b^2/2) <= k]
//
// Every term is a product of two probabilities, so the partial sums are
// monotone and the truncation error is bounded by the remaining Poisson
// mass 1 - sum_k pois(k; a^2/2). Summation stays in linear space, which is
// safe up to a^2/2, b^2/2 ~ 600 (exp(-600) is still a normal double); the
// simulator never leaves that region because the |a-b| tail cutoffs fire
// first. Absolute error is below 1e-12 on a,b in [0,30].

inline double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::domain_error("marcum_q1: arguments must be nonnegative");
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);
    // With |a-b| >= 12 the function is 0 or 1 to ~1e-31.
    if (a - b >= 12.0) return 1.0;
    if (b - a >= 12.0) return 0.0;

    const double mu_a = 0.5 * a * a;
    const double mu_b = 0.5 * b * b;
    if (mu_a > 600.0 || mu_b > 600.0) {
        // Far outside the calibrated domain yet near the a=b diagonal:
        // Gaussian limit, accurate to O(1/a).
        return 0.5 * std::erfc((b - a) / std::sqrt(2.0));
    }

    double pmf_a = std::exp(-mu_a);  // Poisson(mu_a) pmf at k
    double pmf_b = std::exp(-mu_b);  // Poisson(mu_b) pmf at k
    double cdf_b = pmf_b;
    double mass_a = pmf_a;
    double sum = pmf_a * cdf_b;
    for (long k = 1; k < 200000; ++k) {
        pmf_a *= mu_a / static_cast<double>(k);
        pmf_b *= mu_b / static_cast<double>(k);
        mass_a += pmf_a;
        cdf_b += pmf_b;
        sum += pmf_a * cdf_b;
        if (1.0 - mass_a < 1e-15 && static_cast<double>(k) > mu_a) break;
    }
    return std::min(sum, 1.0);
}

// ---------------------------------------------------------------------------
// Radar detection chain
// ---------------------------------------------------------------------------

/// Static radar-side parameters of the sensing link.
struct RadarParams {
    double tx_power_dbm = 30.0;
    double beamwidth_rad = 0.4712388980384690;  // 27 degrees
    double rcs_dbsm = 7.0;
    double fc_hz = 3.5e9;
    double scs_hz = 30e3;
    long n_subcarriers = 3276;       // active sensing subcarriers
    double noise_figure_db = 9.0;
    double temperature_k = 290.0;
    double cp_fraction = 0.0703;     // T_CP / T

    /// Main-beam antenna gain G = 4*pi/phi^2.
    double antenna_gain() const {
        if (!(beamwidth_rad > 0.0 && beamwidth_rad <= 2.0 * kPi))
            throw std::domain_error("RadarParams: beamwidth must lie in (0, 2*pi]");
        return 4.0 * kPi / (beamwidth_rad * beamwidth_rad);
    }
    double tx_power_w() const { return dbm_to_watt(tx_power_dbm); }
    double rcs_sqm() const { return dbsm_to_sqm(rcs_dbsm); }
    double noise_factor() const { return db_to_linear(noise_figure_db); }
};

/// OFDM symbol timing derived from the numerology.
struct SymbolTiming {
    double symbol_s = 0.0;       // T_sym = (1 + cp_fraction) / scs
    long symbols_per_cycle = 0;  // symbols available per 1 ms cycle

    static SymbolTiming make(double scs_hz, double cp_fraction, long symbols_per_cycle) {
        if (!(scs_hz > 0.0)) throw std::domain_error("SymbolTiming: scs must be positive");
        if (!(cp_fraction > 0.0)) throw std::domain_error("SymbolTiming: cp fraction must be positive");
        SymbolTiming t;
        t.symbol_s = (1.0 + cp_fraction) / scs_hz;
        t.symbols_per_cycle = symbols_per_cycle;
        return t;
    }
};

/// Detection operating point.
struct DetectionTarget {
    double pd_target = 0.9;
    double pfa = 1e-4;
};

/// Which detection-probability expression to use. Paper keeps the threshold
/// argument sqrt(2*Pfa); Classical is the nonfluctuating-target form
/// Q1(sqrt(2*gamma), sqrt(-2 ln Pfa)).
enum class PdFormula { Paper, Classical };

/// Echo SNR on a single OFDM symbol. total_path_loss_db is the realized
/// one-way loss in dB; it enters squared because the echo traverses the path
/// twice.
inline double echo_snr_per_symbol(const RadarParams& p, double total_path_loss_db) {
    const double pl = db_to_linear(total_path_loss_db);
    const double g = p.antenna_gain();
    const double num = p.tx_power_w() * g * g * p.fc_hz * p.fc_hz * 4.0 * kPi * p.rcs_sqm();
    const double den = pl * pl * kSpeedOfLight * kSpeedOfLight * kBoltzmann *
                       p.temperature_k * p.noise_factor() *
                       static_cast<double>(p.n_subcarriers) * p.scs_hz;
    return num / den;
}

/// Coherent integration gain over n_sc subcarriers and n_sym symbols. The
/// subcarrier count cancels the per-symbol noise bandwidth term, so the
/// result is independent of n_sc; both routes must agree.
inline double integrated_snr(double gamma_per_symbol, long n_sym_s, long n_sc) {
    if (n_sym_s < 0) throw std::domain_error("integrated_snr: symbol count must be nonnegative");
    return gamma_per_symbol * static_cast<double>(n_sc) * static_cast<double>(n_sym_s);
}

/// Integrated sensing SNR from a two-way loss given as a linear power ratio.
inline double integrated_snr_from_two_way(const RadarParams& p, double two_way_loss_lin,
                                          double n_sym_s) {
    const double g = p.antenna_gain();
    const double num = p.tx_power_w() * g * g * p.fc_hz * p.fc_hz * 4.0 * kPi *
                       p.rcs_sqm() * n_sym_s;
    const double den = two_way_loss_lin * kSpeedOfLight * kSpeedOfLight * kBoltzmann *
                       p.temperature_k * p.noise_factor() * p.scs_hz;
    return num / den;
}

/// Closed-form integrated SNR (subcarrier count already cancelled).
inline double integrated_snr_closed_form(const RadarParams& p, double total_path_loss_db,
                                         long n_sym_s) {
    const double pl = db_to_linear(total_path_loss_db);
    return integrated_snr_from_two_way(p, pl * pl, static_cast<double>(n_sym_s));
}

/// Probability of detecting the target at integrated SNR gamma_sens.
inline double detection_probability(double gamma_sens, double pfa,
                                    PdFormula formula = PdFormula::Paper) {
    if (!(gamma_sens >= 0.0))
        throw std::domain_error("detection_probability: SNR must be nonnegative");
    if (!(pfa > 0.0 && pfa < 1.0))
        throw std::domain_error("detection_probability: Pfa must lie in (0,1)");
    if (formula == PdFormula::Paper)
        return marcum_q1(std::sqrt(gamma_sens), std::sqrt(2.0 * pfa));
    return marcum_q1(std::sqrt(2.0 * gamma_sens), std::sqrt(-2.0 * std::log(pfa)));
}

/// Smallest integrated SNR meeting the detection target, by bisection on the
/// monotone map gamma -> Pd. Returns 0 when the target is already met with no
/// integrated signal (possible under the Paper formula, whose Pd floor is
/// exp(-Pfa)). Throws if the target is unreachable below the search bound.
inline double required_snr(const DetectionTarget& t, PdFormula formula = PdFormula::Paper) {
    if (!(t.pfa > 0.0 && t.pfa < t.pd_target && t.pd_target < 1.0))
        throw std::domain_error("required_snr: need 0 < pfa < pd_target < 1");
    auto pd = [&](double g) { return detection_probability(g, t.pfa, formula); };
    if (pd(0.0) >= t.pd_target) return 0.0;
    double hi = 1.0;
    while (pd(hi) < t.pd_target) {
        hi *= 2.0;
        if (hi > 1e12)
            throw std::runtime_error("required_snr: pd target unreachable below 1e12");
    }
    double lo = hi > 1.0 ? hi * 0.5 : 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (pd(mid) < t.pd_target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Minimum symbol requirement, with an explicit over-budget marker instead of
/// a silently clamped count.
struct SensingRequirement {
    long symbols = 0;
    bool over_budget = false;
};

/// Pre-ceiling minimum symbol count for a two-way loss (linear power ratio).
inline double min_sensing_symbols_raw(const RadarParams& p, double gamma_min,
                                      double two_way_loss_lin) {
    if (!(gamma_min >= 0.0))
        throw std::domain_error("min_sensing_symbols: gamma_min must be nonnegative");
    const double g = p.antenna_gain();
    const double num = gamma_min * two_way_loss_lin * kSpeedOfLight * kSpeedOfLight *
                       kBoltzmann * p.temperature_k * p.noise_factor() * p.scs_hz;
    const double den = p.tx_power_w() * g * g * p.fc_hz * p.fc_hz * 4.0 * kPi * p.rcs_sqm();
    return num / den;
}

inline SensingRequirement min_sensing_symbols_from_two_way(const RadarParams& p,
                                                           double gamma_min,
                                                           double two_way_loss_lin,
                                                           long budget_symbols) {
    const double raw = min_sensing_symbols_raw(p, gamma_min, two_way_loss_lin);
    // Small guard so exact integer boundaries do not round up a step.
    long m = static_cast<long>(std::ceil(raw - 1e-9));
    if (m < 0) m = 0;
    return SensingRequirement{m, m > budget_symbols};
}

/// Convenience form taking the one-way loss in dB and the detection target.
inline SensingRequirement min_sensing_symbols(const RadarParams& p, const DetectionTarget& t,
                                              double path_loss_db, long budget_symbols,
                                              PdFormula formula = PdFormula::Paper) {
    const double pl = db_to_linear(path_loss_db);
    return min_sensing_symbols_from_two_way(p, required_snr(t, formula), pl * pl,
                                            budget_symbols);
}

} // namespace isacsim::sensing

#endif
