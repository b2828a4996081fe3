// isacsim: link-level simulator for time-shared radar sensing and URLLC downlink
// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <isacsim/cli.hpp>

namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("isacsim-cli");
    for (const auto& a : args) argv.push_back(a.c_str());
    return isacsim::cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

fs::path fresh_dir(const char* name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("smoke run writes one export set and exits zero", "[cli]") {
    const fs::path out = fresh_dir("isacsim_cli_smoke");
    REQUIRE(run({"--duration", "0.01", "--seed", "1", "--out", out.string()}) == 0);

    // exactly one run directory, named by scheduler, seed and config hash
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(out)) dirs.push_back(e.path());
    REQUIRE(dirs.size() == 1);
    CHECK(dirs[0].filename().string().rfind("nbs_s1_", 0) == 0);

    const auto cycles = read_lines(dirs[0] / "cycles.csv");
    CHECK(cycles.size() == 11);  // header + 10 records
    CHECK(fs::exists(dirs[0] / "packets.csv"));
    CHECK(fs::exists(dirs[0] / "summary.json"));
    fs::remove_all(out);
}

TEST_CASE("missing config file fails and names the path", "[cli]") {
    CHECK(run({"--config", "missing.toml"}) != 0);
}

TEST_CASE("unknown flag is a usage error", "[cli]") {
    CHECK(run({"--definitely-not-a-flag"}) != 0);
}

TEST_CASE("invalid config key value fails with a nonzero code", "[cli]") {
    const fs::path bad = fs::temp_directory_path() / "isacsim_bad.toml";
    std::ofstream(bad) << "[urllc]\nsurvival_time = -1\n";
    CHECK(run({"--config", bad.string(), "--duration", "0.01"}) == 2);
    fs::remove(bad);
}

TEST_CASE("scheduler sweep arms share the arrival trace", "[cli]") {
    const fs::path out = fresh_dir("isacsim_cli_sweep");
    REQUIRE(run({"--sweep", "scheduler", "--seed", "7", "--duration", "0.05", "--out",
                 out.string()}) == 0);

    fs::path sweep_dir;
    for (const auto& e : fs::directory_iterator(out)) sweep_dir = e.path();
    const auto nbs = read_lines(sweep_dir / "nbs" / "packets.csv");
    const auto rr = read_lines(sweep_dir / "rr" / "packets.csv");
    REQUIRE(nbs.size() == rr.size());
    REQUIRE(nbs.size() > 100);
    for (std::size_t i = 1; i < nbs.size(); ++i) {
        // id, user, arrival and size columns agree row by row
        std::stringstream sa(nbs[i]), sb(rr[i]);
        std::string ca, cb;
        for (int col = 0; col < 4; ++col) {
            std::getline(sa, ca, ',');
            std::getline(sb, cb, ',');
            if (ca != cb) {
                CAPTURE(i, col);
                REQUIRE(ca == cb);
            }
        }
    }
    fs::remove_all(out);
}

TEST_CASE("fixed-lambda flag pins the rate", "[cli]") {
    const fs::path out = fresh_dir("isacsim_cli_fixed");
    REQUIRE(run({"--duration", "0.05", "--seed", "3", "--fixed-lambda", "1000", "--out",
                 out.string(), "--scheduler", "rr", "--pd-formula", "classical"}) == 0);
    fs::path dir;
    for (const auto& e : fs::directory_iterator(out)) dir = e.path();
    CHECK(dir.filename().string().rfind("rr_s3_", 0) == 0);
    const auto packets = read_lines(dir / "packets.csv");
    // ~50 expected arrivals at 1000 pkts/s over 50 ms; allow wide slack
    CHECK(packets.size() > 10);
    CHECK(packets.size() < 200);
    fs::remove_all(out);
}
