// SPDX-License-Identifier: Apache-2.0
//
// staircase-ttd: true-time-delay array codebook design and analysis
// Copyright (C) 2026 The staircase-ttd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "ttd/cli.hpp"
#include "ttd/config.hpp"
#include "ttd/io.hpp"
#include "ttd/numeric.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace ttd;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace
{
fs::path scratch_dir(const std::string &name)
{
    const fs::path dir = fs::temp_directory_path() / ("ttd_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path &path, const std::string &text) { std::ofstream(path) << text; }

std::string slurp(const fs::path &path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "ttd");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

std::string config_text(int n_t, int k, double t1, double t2, const std::string &formulation,
                        const std::string &extra = "")
{
    std::ostringstream os;
    os << R"({"scenario": "test", "grid": {"f_c": 60e9, "bw": 2e9, "m_tot": 4096},)"
       << R"("array": {"n_t": )" << n_t << "},"
       << R"("design": {"k_users": )" << k << R"(, "theta_1_deg": )" << t1 << R"(, "theta_2_deg": )" << t2
       << R"(, "formulation": ")" << formulation << R"("},)"
       << R"("link": {"snr_db": 10},)" << extra
       << R"("output": {"angle_grid_size": 2048, "freq_count": 32}})";
    return os.str();
}

nlohmann::json parse(const std::string &text) { return nlohmann::json::parse(text); }
} // namespace

TEST_CASE("shortest round-trip formatting", "[io]")
{
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.5e-11) == "-2.5e-11");
    CHECK(format_double(60e9) == "60000000000");
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i)
    {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        CHECK(std::stod(format_double(x)) == x);
    }
}

TEST_CASE("codebook JSON round trip is exact", "[io]")
{
    const OfdmGrid band(60e9, 2e9, 4096);
    const DesignResult r = two_stage_design({3, deg_to_rad(-30), deg_to_rad(45), band, ArrayConfig(32)});
    const std::string text = codebook_to_json(r.params, *r.profile).dump();
    const Codebook cb = codebook_from_json(parse(text));
    CHECK(cb.n_t == 32);
    CHECK(cb.params.formulation == Formulation::Modulo);
    CHECK(cb.params.d == r.params.d);
    CHECK(cb.params.dphi_step == r.params.dphi_step);
    CHECK(cb.profile.delays() == r.profile->delays());
    CHECK(cb.profile.phases() == r.profile->phases());
    // Re-serializing is byte-stable.
    CHECK(codebook_to_json(cb.params, cb.profile).dump() == text);

    const auto j = parse(text);
    for (const char *key : {"n_t", "formulation", "d", "dtau_jump_s", "dphi_jump_rad", "dtau_step_s",
                            "dphi_step_rad", "delays_s", "phases_rad"})
        CHECK(j.contains(key));
}

TEST_CASE("malformed codebooks are input errors", "[io]")
{
    auto base = parse(R"({"n_t": 2, "formulation": "modulo", "d": 1.5, "dtau_jump_s": 0, "dphi_jump_rad": 0,
                          "dtau_step_s": 1e-12, "dphi_step_rad": 0.1, "delays_s": [0, 1e-12], "phases_rad": [0, 0.1]})");
    CHECK_NOTHROW(codebook_from_json(base));
    auto missing = base;
    missing.erase("dtau_step_s");
    CHECK_THROWS_WITH(codebook_from_json(missing), ContainsSubstring("dtau_step_s"));
    auto short_delays = base;
    short_delays["delays_s"] = {0.0};
    CHECK_THROWS_AS(codebook_from_json(short_delays), input_error);
    auto bad_form = base;
    bad_form["formulation"] = "ramp";
    CHECK_THROWS_AS(codebook_from_json(bad_form), input_error);
    CHECK_THROWS_AS(codebook_from_json(parse("[1, 2]")), input_error);
}

TEST_CASE("CSV headers", "[io]")
{
    GainGrid g;
    g.angles = {-1.0, 0.0};
    g.freq_indices = {3};
    g.freqs = {59e9};
    g.values = {0.0, 32.0};
    std::ostringstream p;
    write_pattern_csv(p, g);
    CHECK(p.str() == "m,f_hz,sin_theta,gain_db\n3,59000000000,-1,-300\n3,59000000000,0,15.051499783199061\n");

    std::ostringstream b;
    write_beam_map_csv(b, extract_beam_map(g));
    CHECK(b.str().rfind("m,f_hz,sin_theta_peak,theta_peak_deg,gain_peak_db\n", 0) == 0);

    SweepResult s;
    s.variable = SweepVariable::SNR;
    s.values = {10.0};
    s.methods = {"ideal"};
    s.spectral_efficiency = {{8.5}};
    s.sectors_averaged = {64};
    s.sectors_skipped = {3};
    std::ostringstream w;
    write_sweep_csv(w, s);
    CHECK(w.str() ==
          "variable,value,method,spectral_efficiency_bps_hz,sectors_averaged,sectors_skipped\nSNR,10,ideal,8.5,64,3\n");
}

TEST_CASE("config parsing", "[config]")
{
    const RunConfig rc = parse_run_config(parse(config_text(32, 3, -30, 45, "modulo")));
    CHECK(rc.grid.f_c() == 60e9);
    CHECK(rc.cfg.n_t() == 32);
    REQUIRE(rc.design);
    CHECK(rc.design->theta_1 == Approx(-pi / 6));
    CHECK(rc.design->formulation == Formulation::Modulo);
    CHECK(rc.angle_grid_size == 2048);
    CHECK(rc.link_config().snr_linear == Approx(10.0));

    auto j = parse(config_text(32, 3, -30, 45, "modulo"));
    j["grid"].erase("f_c");
    CHECK_THROWS_WITH(parse_run_config(j), ContainsSubstring("/grid/f_c") && ContainsSubstring("missing"));

    j = parse(config_text(32, 3, -30, 45, "modulo"));
    j["array"]["n_t"] = 1;
    CHECK_THROWS_WITH(parse_run_config(j), ContainsSubstring("/array/n_t"));

    j = parse(config_text(32, 3, -30, 95, "modulo"));
    CHECK_THROWS_WITH(parse_run_config(j), ContainsSubstring("/design/theta_2_deg"));

    j = parse(config_text(32, 3, -30, 45, "modulo"));
    j["grid"]["bw"] = 200e9;
    CHECK_THROWS_WITH(parse_run_config(j), ContainsSubstring("/grid"));

    j = parse(config_text(32, 3, -30, 45, "modulo", R"("sweep": {"variable": "SNR", "values": [10, 0]},)"));
    CHECK_THROWS_WITH(parse_run_config(j), ContainsSubstring("/sweep/values"));

    j = parse(config_text(32, 3, -30, 45, "staircase"));
    CHECK_THROWS_WITH(parse_run_config(j), ContainsSubstring("/design/formulation"));
}

TEST_CASE("cli design", "[cli]")
{
    const fs::path dir = scratch_dir("design");
    write(dir / "k3.json", config_text(32, 3, -30, 45, "modulo"));
    CHECK(run_cli({"design", "--config", (dir / "k3.json").string(), "--out", (dir / "k3").string()}) == 0);
    const auto report = parse(slurp(dir / "k3" / "design_report.json"));
    CHECK(report["d"].get<double>() == Approx(3.2773).epsilon(1e-4));
    CHECK(report["feasible"].get<bool>());
    CHECK(fs::exists(dir / "k3" / "codebook.json"));

    write(dir / "tiny.json", config_text(4, 4, -75, 75, "modulo"));
    CHECK(run_cli({"design", "--config", (dir / "tiny.json").string(), "--out", (dir / "tiny").string()}) == 2);
    const auto tiny = parse(slurp(dir / "tiny" / "design_report.json"));
    CHECK_THAT(tiny["infeasible_reason"].get<std::string>(),
               ContainsSubstring("ceil(D) = 4") && ContainsSubstring("N_T = 4"));

    auto j = parse(config_text(32, 3, -30, 45, "modulo"));
    j["grid"].erase("f_c");
    write(dir / "broken.json", j.dump());
    CHECK(run_cli({"design", "--config", (dir / "broken.json").string(), "--out", (dir / "b").string()}) == 1);
    CHECK(run_cli({"design", "--config", (dir / "absent.json").string()}) == 1);
    CHECK(run_cli({"frobnicate"}) == 1);
    CHECK(run_cli({"design"}) == 1);
}

TEST_CASE("cli pattern and map", "[cli]")
{
    const fs::path dir = scratch_dir("pattern");
    write(dir / "cfg.json", config_text(8, 2, -30, 30, "modulo"));
    nlohmann::json zero{{"n_t", 8},           {"formulation", "uniform_integer"}, {"d", 1},
                        {"dtau_jump_s", 0.0}, {"dphi_jump_rad", 0.0},            {"dtau_step_s", 0.0},
                        {"dphi_step_rad", 0.0}, {"delays_s", std::vector<double>(8, 0.0)},
                        {"phases_rad", std::vector<double>(8, 0.0)}};
    write(dir / "zero.json", zero.dump());
    const std::string cfg = (dir / "cfg.json").string();
    const std::string cb = (dir / "zero.json").string();
    REQUIRE(run_cli({"pattern", "--config", cfg, "--codebook", cb, "--out", dir.string(), "--angles", "64"}) == 0);
    std::istringstream csv(slurp(dir / "pattern.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "m,f_hz,sin_theta,gain_db");
    int rows = 0;
    while (std::getline(csv, line))
        ++rows;
    CHECK(rows == 32 * 64);

    REQUIRE(run_cli({"map", "--config", cfg, "--codebook", cb, "--out", dir.string()}) == 0);
    std::istringstream map(slurp(dir / "beam_map.csv"));
    std::getline(map, line);
    CHECK(line == "m,f_hz,sin_theta_peak,theta_peak_deg,gain_peak_db");
    while (std::getline(map, line))
        CHECK(line.find(",0,0,") != std::string::npos);

    zero["n_t"] = 16;
    zero["delays_s"] = std::vector<double>(16, 0.0);
    zero["phases_rad"] = std::vector<double>(16, 0.0);
    write(dir / "big.json", zero.dump());
    CHECK(run_cli({"pattern", "--config", cfg, "--codebook", (dir / "big.json").string(), "--out", dir.string()}) ==
          2);
    write(dir / "corrupt.json", "{\"n_t\": 8, \"delays_s\": [");
    CHECK(run_cli({"map", "--config", cfg, "--codebook", (dir / "corrupt.json").string(), "--out", dir.string()}) ==
          1);
}

TEST_CASE("cli map reports the integer-D discrepancy", "[cli]")
{
    const fs::path dir = scratch_dir("map");
    write(dir / "int.json", config_text(32, 3, -30, 45, "uniform_integer"));
    const std::string cfg = (dir / "int.json").string();
    REQUIRE(run_cli({"design", "--config", cfg, "--out", dir.string()}) == 0);
    REQUIRE(run_cli({"map", "--config", cfg, "--codebook", (dir / "codebook.json").string(), "--out",
                     dir.string()}) == 0);
    const auto disc = parse(slurp(dir / "discrepancy.json"));
    CHECK(disc["mapping_discrepancy"][0].get<double>() < 1e-12);
    CHECK(disc["mapping_discrepancy"][1].get<double>() == Approx(0.10355).epsilon(1e-4));
}

TEST_CASE("cli validate", "[cli]")
{
    const fs::path dir = scratch_dir("validate");
    const std::string bare = R"({"grid": {"f_c": 60e9, "bw": 2e9}, "array": {"n_t": 32}})";
    write(dir / "bare.json", bare);
    const OfdmGrid band(60e9, 2e9, 4096);

    const StaircaseParams uni{4, 2.0 / 2e9, 0.3, -0.6 / 2e9, 0.1 * pi, Formulation::UniformInteger};
    write(dir / "uni.json", codebook_to_json(uni, build_uniform(uni, 32)).dump());
    CHECK(run_cli({"validate", "--config", (dir / "bare.json").string(), "--codebook", (dir / "uni.json").string(),
                   "--out", dir.string()}) == 0);
    auto report = parse(slurp(dir / "validation.json"));
    bool saw_factorization = false;
    for (const auto &c : report["checks"])
        if (c["name"] == "factorization_identity")
        {
            saw_factorization = true;
            CHECK(c["status"] == "pass");
        }
    CHECK(saw_factorization);

    const DesignResult r = two_stage_design({3, deg_to_rad(-30), deg_to_rad(45), band, ArrayConfig(32)});
    write(dir / "mod.json", codebook_to_json(r.params, *r.profile).dump());
    run_cli({"validate", "--config", (dir / "bare.json").string(), "--codebook", (dir / "mod.json").string(), "--out",
             dir.string()});
    report = parse(slurp(dir / "validation.json"));
    for (const auto &c : report["checks"])
        if (c["name"] == "factorization_identity")
        {
            CHECK(c["status"] == "skipped");
            CHECK_FALSE(c["note"].get<std::string>().empty());
        }

    // A tampered profile fails the consistency check.
    auto tampered = codebook_to_json(uni, build_uniform(uni, 32));
    tampered["delays_s"][5] = 1e-9;
    write(dir / "bad.json", tampered.dump());
    CHECK(run_cli({"validate", "--config", (dir / "bare.json").string(), "--codebook", (dir / "bad.json").string(),
                   "--out", dir.string()}) == 3);
    write(dir / "corrupt.json", "not json");
    CHECK(run_cli({"validate", "--config", (dir / "bare.json").string(), "--codebook",
                   (dir / "corrupt.json").string(), "--out", dir.string()}) == 1);
}

TEST_CASE("cli sweep is byte-stable under a fixed seed", "[cli]")
{
    const fs::path dir = scratch_dir("sweep");
    write(dir / "s.json", config_text(32, 2, -30, 45, "modulo",
                                      R"("sweep": {"variable": "SNR", "values": [-10, 0, 10, 20], "sector_samples": 3, "seed": 5},)"));
    const std::string cfg = (dir / "s.json").string();
    REQUIRE(run_cli({"sweep", "--config", cfg, "--out", (dir / "a").string()}) == 0);
    REQUIRE(run_cli({"sweep", "--config", cfg, "--out", (dir / "b").string()}) == 0);
    const std::string a = slurp(dir / "a" / "sweep.csv");
    CHECK(a == slurp(dir / "b" / "sweep.csv"));
    CHECK(a.rfind("variable,value,method,spectral_efficiency_bps_hz,sectors_averaged,sectors_skipped\n", 0) == 0);
    CHECK(a.find("SNR,0,ideal,5.044394119358453,3,") != std::string::npos);

    write(dir / "none.json", config_text(4, 2, -30, 45, "modulo",
                                         R"("sweep": {"variable": "K", "values": [10], "sector_samples": 2},)"));
    CHECK(run_cli({"sweep", "--config", (dir / "none.json").string(), "--out", (dir / "c").string()}) == 2);
}
