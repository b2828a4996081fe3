// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include <isacsim/config.hpp>
#include <isacsim/simcore.hpp>

using namespace isacsim;
using namespace isacsim::sim;

namespace {
cfg::SimConfig base_config(double horizon, std::uint64_t seed) {
    cfg::SimConfig c = cfg::default_config();
    c.run.horizon_s = horizon;
    c.run.seed = seed;
    return c;
}
} // namespace

TEST_CASE("track geometry", "[simcore]") {
    Track t({0.0, 25.0, 200.0, 25.0});
    CHECK(t.length() == 200.0);
    auto [x, y] = t.point_at(50.0);
    CHECK(x == 50.0);
    CHECK(y == 25.0);
    // clamped at the ends
    CHECK(t.point_at(-5.0).first == 0.0);
    CHECK(t.point_at(500.0).first == 200.0);

    Track bent({0.0, 0.0, 30.0, 40.0, 30.0, 140.0});
    CHECK(bent.length() == Catch::Approx(150.0));
    auto [bx, by] = bent.point_at(100.0);
    CHECK(bx == Catch::Approx(30.0));
    CHECK(by == Catch::Approx(90.0));

    CHECK_THROWS_AS(Track({1.0, 2.0}), std::domain_error);
}

TEST_CASE("AGV stepping: displacement and reflection", "[simcore]") {
    RngStream rng(1);
    AgvState agv;
    agv.track_pos_m = 100.0;
    agv.direction = 1;
    agv.speed_mps = 4.0;
    step_agv(rng, agv, 1e-3, 200.0, false);
    CHECK(agv.track_pos_m == Catch::Approx(100.004).epsilon(1e-12));

    // outward at the far endpoint: reflect and keep the remainder in bounds
    agv.track_pos_m = 199.999;
    agv.direction = 1;
    step_agv(rng, agv, 1e-3, 200.0, false);
    CHECK(agv.track_pos_m == Catch::Approx(199.997).epsilon(1e-9));
    CHECK(agv.direction == -1);

    agv.track_pos_m = 0.002;
    agv.direction = -1;
    step_agv(rng, agv, 1e-3, 200.0, false);
    CHECK(agv.track_pos_m == Catch::Approx(0.002).epsilon(1e-9));
    CHECK(agv.direction == 1);

    CHECK_THROWS_AS(step_agv(rng, agv, 0.0, 200.0, false), std::domain_error);
}

TEST_CASE("AGV never leaves the track over long fuzzed walks", "[simcore]") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        RngStream rng(seed);
        AgvState agv;
        agv.track_pos_m = 57.0;
        agv.speed_mps = 4.0;
        agv.direction = 1;
        for (int i = 0; i < 100000; ++i) {
            step_agv(rng, agv, 1e-3, 200.0, i % 1000 == 999);
            REQUIRE(agv.track_pos_m >= 0.0);
            REQUIRE(agv.track_pos_m <= 200.0);
        }
    }
}

TEST_CASE("hall sector lookup is total over the default map", "[simcore]") {
    cfg::SimConfig c = cfg::default_config();
    std::vector<chan::SectorProfile> sectors;
    for (std::size_t i = 0; i < c.sectors.size(); ++i) {
        const auto& s = c.sectors[i];
        chan::SectorProfile p;
        p.id = static_cast<int>(i);
        p.clutter_density = s.clutter_density;
        p.clutter_size_m = s.clutter_size_m;
        p.clutter_height_m = s.clutter_height_m;
        p.bounds = {s.x0, s.y0, s.x1, s.y1};
        sectors.push_back(p);
    }
    Hall hall(c.hall.width_m, c.hall.height_m, sectors);
    for (double x = 0.0; x <= 200.0; x += 3.7) {
        for (double y = 0.0; y <= 200.0; y += 11.1) {
            CHECK_NOTHROW(hall.sector_at(x, y));
        }
    }
    // outer boundary corners included
    CHECK(hall.sector_at(200.0, 200.0).id == 7);
    CHECK(hall.sector_at(0.0, 0.0).id == 0);
    CHECK_THROWS(hall.sector_at(-0.1, 10.0));
}

TEST_CASE("zero horizon gives an empty but well-formed report", "[simcore]") {
    auto report = run_simulation(base_config(0.0, 1));
    CHECK(report.cycles.empty());
    CHECK(report.packets.empty());
    CHECK(report.meta.config_hash.size() == 16);
}

TEST_CASE("cycle count follows the horizon", "[simcore]") {
    auto report = run_simulation(base_config(0.02, 1));
    CHECK(report.cycles.size() == 20);
    for (std::size_t i = 0; i < report.cycles.size(); ++i)
        CHECK(report.cycles[i].cycle == static_cast<std::int64_t>(i));
}

TEST_CASE("zero traffic under round robin: static split, no packets", "[simcore]") {
    cfg::SimConfig c = base_config(0.05, 3);
    c.traffic.lambda_min = 0.0;
    c.traffic.lambda_step = 1.0;
    c.traffic.lambda_max = 0.0;
    c.run.scheduler = sched::SchedulerKind::RoundRobin;
    auto report = run_simulation(c);
    CHECK(report.packets.empty());
    for (const auto& cyc : report.cycles) {
        CHECK(cyc.n_sym_s == 14);
        CHECK(cyc.n_sym_c == 14);
        CHECK(cyc.m_req_c == 0);
    }
}

TEST_CASE("error-free channel keeps small-backlog delays under the deadline", "[simcore]") {
    cfg::SimConfig c = base_config(1.0, 5);
    c.urllc.bler = 1e-12;
    c.traffic.fixed_lambda = 5000.0;  // well under capacity
    auto report = run_simulation(c);
    REQUIRE(!report.packets.empty());
    long completed = 0;
    for (const auto& p : report.packets) {
        if (!p.completed) continue;
        ++completed;
        CHECK(p.delay_s < c.urllc.survival_time);
        CHECK(p.attempts == 1);
    }
    CHECK(completed > 4000);
}

TEST_CASE("same seed, same config: identical record streams", "[simcore]") {
    auto a = run_simulation(base_config(0.3, 77));
    auto b = run_simulation(base_config(0.3, 77));
    REQUIRE(a.cycles.size() == b.cycles.size());
    REQUIRE(a.packets.size() == b.packets.size());
    for (std::size_t i = 0; i < a.cycles.size(); ++i) {
        CHECK(a.cycles[i].n_sym_s == b.cycles[i].n_sym_s);
        CHECK(a.cycles[i].pd == b.cycles[i].pd);
        CHECK(a.cycles[i].gamma_sens == b.cycles[i].gamma_sens);
        CHECK(a.cycles[i].agv_distance_m == b.cycles[i].agv_distance_m);
    }
    for (std::size_t i = 0; i < a.packets.size(); ++i) {
        CHECK(a.packets[i].arrival_s == b.packets[i].arrival_s);
        CHECK(a.packets[i].completion_s == b.packets[i].completion_s);
    }
}

TEST_CASE("paired schedulers see the same arrivals and channel", "[simcore]") {
    cfg::SimConfig nbs = base_config(0.3, 9);
    cfg::SimConfig rr = nbs;
    rr.run.scheduler = sched::SchedulerKind::RoundRobin;
    auto a = run_simulation(nbs);
    auto b = run_simulation(rr);
    REQUIRE(a.packets.size() == b.packets.size());
    for (std::size_t i = 0; i < a.packets.size(); ++i) {
        CHECK(a.packets[i].id == b.packets[i].id);
        CHECK(a.packets[i].user == b.packets[i].user);
        CHECK(a.packets[i].arrival_s == b.packets[i].arrival_s);
    }
    // same AGV path and same realized channel, only allocations differ
    REQUIRE(a.cycles.size() == b.cycles.size());
    for (std::size_t i = 0; i < a.cycles.size(); ++i) {
        CHECK(a.cycles[i].agv_distance_m == b.cycles[i].agv_distance_m);
        CHECK(a.cycles[i].sector_id == b.cycles[i].sector_id);
        CHECK(a.cycles[i].m_req_s == b.cycles[i].m_req_s);
    }
}

TEST_CASE("per-cycle invariants: budget, causality, coverage", "[simcore]") {
    cfg::SimConfig c = base_config(0.5, 13);
    c.traffic.fixed_lambda = 50000.0;
    auto report = run_simulation(c);
    for (const auto& cyc : report.cycles) {
        CHECK(cyc.n_sym_s + cyc.n_sym_c == 28);
        if (cyc.feasible) {
            CHECK(cyc.n_sym_s >= cyc.m_req_s);
            CHECK(cyc.n_sym_c >= cyc.m_req_c);
        }
        CHECK(cyc.pd >= 0.0);
        CHECK(cyc.pd <= 1.0);
    }
    for (const auto& p : report.packets) {
        if (p.completed) {
            CHECK(p.completion_s > p.arrival_s);
            CHECK(p.delay_s == p.completion_s - p.arrival_s);
            CHECK(p.violated_survival == (p.delay_s > c.urllc.survival_time));
        }
        CHECK(p.attempts <= 1 + c.urllc.retx_limit);
    }
}

TEST_CASE("held decisions still satisfy the budget when re-solving is slow", "[simcore]") {
    cfg::SimConfig c = base_config(0.1, 21);
    c.run.nbs_period_cycles = 10;
    auto report = run_simulation(c);
    for (const auto& cyc : report.cycles) CHECK(cyc.n_sym_s + cyc.n_sym_c == 28);
}
