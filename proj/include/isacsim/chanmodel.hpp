// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#ifndef ISACSIM_CHANMODEL_HPP
#define ISACSIM_CHANMODEL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "rng.hpp"
#include "units.hpp"

namespace isacsim::chan {

/// Indoor-factory path-loss family with the base station above the clutter.
/// SH = sparse clutter / high BS, DH = dense clutter / high BS. These are the
/// only two families with an NLoS fit for elevated antennas.
enum class PathLossFamily { SH, DH };

/// Branch used for the LoS-decay range r_sec. SL/DL keep the raw clutter
/// decay; SH/DH stretch it by (h_BS - h_UT)/(h_c - h_UT) because an antenna
/// above the clutter sees over it.
enum class LosBranch { SL, DL, SH, DH };

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double area() const { return (x1 - x0) * (y1 - y0); }
    /// Half-open containment; the max edges are treated as closed by callers
    /// that know the hall bounds (see simcore).
    bool contains(double x, double y) const {
        return x >= x0 && x < x1 && y >= y0 && y < y1;
    }
};

/// One clutter sector of the hall.
struct SectorProfile {
    int id = 0;
    double clutter_density = 0.0;   // r, fraction of floor area in (0,1)
    double clutter_size_m = 0.0;    // d_clutter
    double clutter_height_m = 0.0;  // h_c
    PathLossFamily pathloss = PathLossFamily::DH;
    LosBranch los_branch = LosBranch::DH;
    Rect bounds;
};

/// Vertical geometry of one BS-terminal link plus its ground distance.
struct Geometry {
    double bs_height_m = 8.0;
    double ut_height_m = 1.5;
    double d2d_m = 0.0;

    double d3d_m() const {
        return std::hypot(d2d_m, bs_height_m - ut_height_m);
    }
};

/// Realized large-scale state of one link for one scheduling cycle.
struct LinkState {
    bool is_los = false;
    double path_loss_db = 0.0;
    double shadow_db = 0.0;

    double total_db() const { return path_loss_db + shadow_db; }
};

inline void check_distance(double fc_ghz, double d3d_m) {
    if (!(fc_ghz > 0.0)) throw std::domain_error("path loss: fc must be positive");
    if (!(d3d_m >= 1.0))
        throw std::domain_error("path loss: d3d below 1 m model validity floor");
}

/// LoS path loss in dB; fc in GHz, distance in meters (valid from 1 m).
inline double path_loss_los_db(double fc_ghz, double d3d_m) {
    check_distance(fc_ghz, d3d_m);
    return 31.84 + 21.50 * std::log10(d3d_m) + 19.00 * std::log10(fc_ghz);
}

/// NLoS path loss in dB, floored at the LoS value.
inline double path_loss_nlos_db(PathLossFamily family, double fc_ghz, double d3d_m) {
    check_distance(fc_ghz, d3d_m);
    double pl = 0.0;
    switch (family) {
        case PathLossFamily::SH:
            pl = 32.40 + 23.00 * std::log10(d3d_m) + 20.00 * std::log10(fc_ghz);
            break;
        case PathLossFamily::DH:
            pl = 33.63 + 21.90 * std::log10(d3d_m) + 20.00 * std::log10(fc_ghz);
            break;
    }
    return std::max(pl, path_loss_los_db(fc_ghz, d3d_m));
}

/// Shadow-fading standard deviation in dB for the realized LoS/NLoS state.
inline double shadow_sigma_db(bool is_los, PathLossFamily family) {
    if (is_los) return 4.3;
    return family == PathLossFamily::SH ? 5.9 : 4.0;
}

/// LoS decay range r_sec in meters, strictly positive.
///
/// Note the sign: with r in (0,1), ln(1-r) is negative, so the clutter term
/// is -d_clutter/ln(1-r). Writing it without the minus sign would give a
/// negative range and LoS probabilities above one.
inline double r_sec_m(const SectorProfile& sector, const Geometry& geom) {
    const double r = sector.clutter_density;
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("r_sec: clutter density must lie in (0,1)");
    if (!(sector.clutter_size_m > 0.0))
        throw std::domain_error("r_sec: clutter size must be positive");
    double base = -sector.clutter_size_m / std::log1p(-r);
    if (sector.los_branch == LosBranch::SL || sector.los_branch == LosBranch::DL)
        return base;
    const double hc = sector.clutter_height_m;
    if (!(hc > geom.ut_height_m))
        throw std::domain_error("r_sec: clutter height must exceed terminal height");
    return base * (geom.bs_height_m - geom.ut_height_m) / (hc - geom.ut_height_m);
}

/// Probability that the link is LoS at ground distance d2d.
inline double los_probability(double d2d_m, double r_sec) {
    if (!(d2d_m >= 0.0)) throw std::domain_error("los_probability: d2d must be nonnegative");
    if (!(r_sec > 0.0)) throw std::domain_error("los_probability: r_sec must be positive");
    return std::exp(-d2d_m / r_sec);
}

/// Draw the LoS state, select the matching path loss and apply a fresh
/// shadow-fading realization. One Bernoulli and one normal variate are
/// consumed per call regardless of the outcome, so paired runs stay aligned.
inline LinkState sample_link_state(RngStream& rng, const SectorProfile& sector,
                                   const Geometry& geom, double fc_ghz,
                                   bool shadowing_enabled = true) {
    const double p_los = los_probability(geom.d2d_m, r_sec_m(sector, geom));
    LinkState ls;
    ls.is_los = rng.bernoulli(p_los);
    const double d3d = std::max(geom.d3d_m(), 1.0);
    ls.path_loss_db = ls.is_los ? path_loss_los_db(fc_ghz, d3d)
                                : path_loss_nlos_db(sector.pathloss, fc_ghz, d3d);
    const double draw = rng.normal();
    ls.shadow_db = shadowing_enabled
                       ? shadow_sigma_db(ls.is_los, sector.pathloss) * draw
                       : 0.0;
    return ls;
}

/// Expected two-way loss (linear power ratio of the doubled path), averaged
/// over the LoS state but excluding shadowing. This is what the scheduler
/// plans against: it depends on the sector's clutter, never on a realized
/// fading draw the BS could not know in advance.
inline double expected_two_way_loss(const SectorProfile& sector, const Geometry& geom,
                                    double fc_ghz) {
    const double p_los = los_probability(geom.d2d_m, r_sec_m(sector, geom));
    const double d3d = std::max(geom.d3d_m(), 1.0);
    const double lo = db_to_linear(path_loss_los_db(fc_ghz, d3d));
    const double nl = db_to_linear(path_loss_nlos_db(sector.pathloss, fc_ghz, d3d));
    return p_los * lo * lo + (1.0 - p_los) * nl * nl;
}

inline std::string to_string(PathLossFamily f) {
    return f == PathLossFamily::SH ? "SH" : "DH";
}

inline std::string to_string(LosBranch b) {
    switch (b) {
        case LosBranch::SL: return "SL";
        case LosBranch::DL: return "DL";
        case LosBranch::SH: return "SH";
        case LosBranch::DH: return "DH";
    }
    return "DH";
}

} // namespace isacsim::chan

#endif
