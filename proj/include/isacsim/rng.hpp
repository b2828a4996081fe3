// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_RNG_HPP
#define ISACSIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace isacsim {

/// Deterministic random stream. The engine (mt19937_64) is fully specified by
/// the standard and all variate transforms are implemented here rather than
/// taken from <random>, whose distributions are implementation-defined; this
/// keeps traces reproducible across standard libraries.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n == 0) throw std::domain_error("uniform_index: n must be positive");
        return eng_() % n;
    }

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        double s = 2.0 * kPi * u2;
        cached_ = r * std::sin(s);
        have_cached_ = true;
        return r * std::cos(s);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Exponential with the given rate (events per unit time).
    double exponential(double rate) {
        if (rate <= 0.0) throw std::domain_error("exponential: rate must be positive");
        return -std::log1p(-uniform01()) / rate;
    }

    /// Poisson count. Knuth's product method, chunked so that exp(-mean)
    /// never underflows for large means.
    long poisson(double mean) {
        if (mean < 0.0) throw std::domain_error("poisson: mean must be nonnegative");
        long total = 0;
        while (mean > 30.0) {
            total += poisson_small(30.0);
            mean -= 30.0;
        }
        return total + poisson_small(mean);
    }

private:
    long poisson_small(double mean) {
        if (mean == 0.0) return 0;
        const double limit = std::exp(-mean);
        long k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    static constexpr double kPi = 3.141592653589793238462643383279502884;

    std::mt19937_64 eng_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

namespace detail {
/// splitmix64, used only to derive substream seeds from the master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// Named substreams derived from one master seed. Each subsystem owns its
/// stream so that toggling one subsystem (e.g. the scheduler under test)
/// cannot perturb the draws seen by another.
struct RngStreams {
    RngStream traffic;
    RngStream channel;
    RngStream harq;
    RngStream mobility;
    RngStream detection;

    explicit RngStreams(std::uint64_t master_seed)
        : traffic(derive(master_seed, 1)),
          channel(derive(master_seed, 2)),
          harq(derive(master_seed, 3)),
          mobility(derive(master_seed, 4)),
          detection(derive(master_seed, 5)) {}

private:
    static std::uint64_t derive(std::uint64_t master, std::uint64_t idx) {
        std::uint64_t state = master;
        std::uint64_t s = 0;
        for (std::uint64_t i = 0; i <= idx; ++i) s = detail::splitmix64(state);
        return s;
    }
};

} // namespace isacsim

#endif
