// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "tlsim/error.hpp"
#include "tlsim/pipeline/cli.hpp"
#include "tlsim/pipeline/config.hpp"
#include "tlsim/pipeline/run.hpp"

using namespace tlsim;
using namespace tlsim::pipeline;
namespace fs = std::filesystem;

namespace
{
ExperimentConfig small(std::string name = "fig4a", std::size_t n = 24)
{
    auto cfg = preset(name);
    cfg.ensemble_size = n;
    cfg.powers_w = {0, 4, 9};
    return cfg;
}

std::string slurp(fs::path const& p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

fs::path scratch_dir(char const* name)
{
    auto dir = fs::temp_directory_path() / "tlsim_unit" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}
}  // namespace

TEST_CASE("presets encode the laboratory geometry")
{
    for (auto const& name : {"fig2", "fig3", "fig4a"})
    {
        auto cfg = preset(name);
        CHECK(cfg.geometry.period_nm == 991);
        CHECK(cfg.geometry.separation_m == 0.38);
        CHECK(cfg.heating.beams.size() == 16);
        CHECK(cfg.heating.beams[0].waist_um == 40);
        CHECK(cfg.heating.beams[0].wavelength_nm == 514.5);
        CHECK(cfg.heating.beam_spacing_mm == 0.3);
        CHECK(cfg.heating.drift_to_interferometer_cm == 7.2);
        CHECK(cfg.velocity.mean_mps == 190);
    }
    auto b = preset("fig4b");
    CHECK(b.heating.beams.size() == 10);
    CHECK(b.velocity.mean_mps == 100);
    CHECK(preset("custom").heating.ionization.activation_energy_ev == 7.6);
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
}

TEST_CASE("config parsing")
{
    std::istringstream doc(R"({
        // comments are allowed
        "base_scenario": "fig4b",
        "scenario": "mine",
        "seed": 7,
        "powers_w": [0, 1.5],
        "heating": {"beam_count": 4, "ionization": {"activation_energy_ev": 5.0}},
        "interferometer": {"baseline_visibility": null},
        "emission": {"visible_band_nm": [380, 780]}
    })");
    auto cfg = parse_config(doc);
    CHECK(cfg.scenario == "mine");
    CHECK(cfg.seed == 7);
    CHECK(cfg.velocity.mean_mps == 100);
    CHECK(cfg.heating.beams.size() == 4);
    CHECK(cfg.heating.ionization.activation_energy_ev == 5.0);
    CHECK_FALSE(cfg.baseline_visibility.has_value());
    CHECK(cfg.emission.visible_lower_nm == 380);

    std::istringstream unknown(R"({"heating": {"beams": 3}})");
    CHECK_THROWS_AS(parse_config(unknown), ConfigError);
    std::istringstream negative(R"({"powers_w": [-1]})");
    CHECK_THROWS_AS(parse_config(negative), ConfigError);
    std::istringstream broken("{ not json");
    CHECK_THROWS_AS(parse_config(broken), ConfigError);
    std::istringstream spread(R"({"velocity": {"relative_spread": -0.1}})");
    CHECK_THROWS_AS(parse_config(spread), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/tlsim.json"), ConfigError);
}

TEST_CASE("shipped example config loads")
{
    auto cfg = load_config(fs::path(TLSIM_SOURCE_DIR) / "configs"
                           / "example.json");
    CHECK_FALSE(cfg.powers_w.empty());
}

TEST_CASE("csv dialect")
{
    std::ostringstream os;
    CsvWriter w(os, {"a", "b"});
    w.row({1.0 / 3.0, 2e-12});
    CHECK(os.str() == "a,b\n0.333333333,2e-12\n");
    CHECK_THROWS_AS(w.row({1.0}), ConfigError);
}

TEST_CASE("spectrum export")
{
    auto cfg = preset("fig3");
    auto rows = spectrum_rows({0.0, 2000.0, 3000.0}, cfg);
    std::size_t per = rows.size() / 3;
    for (std::size_t i = 0; i < per; ++i)
        CHECK(rows[i].r_lambda == 0);
    auto cs = physics::default_cross_section();
    physics::HeatCapacity cv;
    for (std::size_t i = 0; i < per; i += 37)
    {
        auto const& a = rows[per + i];
        auto const& b = rows[2 * per + i];
        if (a.r_lambda == 0)
            continue;
        double expect = physics::spectral_rate_lambda(b.lambda_nm, 3000, cs, cv)
                        / physics::spectral_rate_lambda(a.lambda_nm, 2000, cs, cv);
        CHECK(b.r_lambda / a.r_lambda == doctest::Approx(expect));
    }
}

TEST_CASE("scenario run")
{
    auto cfg = small();
    Simulation sim(cfg, 1);
    auto table = sim.run();
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].visibility == doctest::Approx(0.47).epsilon(1e-4));
    CHECK(table.rows[0].relative_count_rate == 1);
    CHECK(table.rows[2].visibility < table.rows[1].visibility);
    CHECK(table.rows[1].visibility < table.rows[0].visibility);
    for (auto const& r : table.rows)
    {
        CHECK(r.visibility >= 0);
        CHECK(r.visibility <= 1);
    }

    SUBCASE("scan visibility matches the table")
    {
        auto scans = sim.scans({4.0});
        CHECK(scans[0].visibility
              == doctest::Approx(table.rows[1].visibility).epsilon(1e-6));
        CHECK(interferometer::scan_visibility(scans[0].normalized_counts)
              == doctest::Approx(table.rows[1].visibility).epsilon(1e-6));
        double mean = 0;
        for (double c : scans[0].normalized_counts)
        {
            CHECK(c >= 0);
            mean += c;
        }
        mean /= scans[0].normalized_counts.size();
        CHECK(mean == doctest::Approx(table.rows[1].relative_count_rate));
    }
    SUBCASE("results do not depend on the thread count")
    {
        auto threaded = Simulation(cfg, 4).run();
        std::ostringstream a;
        std::ostringstream b;
        write_results(a, table);
        write_results(b, threaded);
        CHECK(a.str() == b.str());
    }
    SUBCASE("empty sweep")
    {
        auto c = cfg;
        c.powers_w.clear();
        CHECK_THROWS_AS(run_scenario(c), ConfigError);
    }
}

TEST_CASE("idealized coefficients without an override")
{
    auto cfg = small("custom", 8);
    cfg.powers_w = {0};
    auto table = run_scenario(cfg);
    CHECK(table.rows[0].visibility > 0.05);
    CHECK(table.rows[0].visibility < 0.3);
}

TEST_CASE("command line")
{
    auto dir = scratch_dir("cli");
    auto run = [&](std::vector<std::string> args, std::string* err_text = nullptr) {
        std::vector<char const*> argv{"tlsim"};
        for (auto const& a : args)
            argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        if (err_text)
            *err_text = err.str();
        return rc;
    };
    std::string d = dir.string();

    std::string err;
    CHECK(run({"simulate", "--scenario", "custom"}, &err) != 0);
    CHECK(err.find("error") != std::string::npos);
    CHECK(run({"simulate", "--scenario", "fig7"}) != 0);
    CHECK(run({"simulate", "--config", "/nonexistent.json"}) != 0);
    CHECK(run({"bogus"}) != 0);
    CHECK(run({"fit", "--scenario", "fig4a", "--out", d}) != 0);

    std::vector<std::string> sim{"simulate", "--scenario", "fig2", "--seed",
                                 "3", "--ensemble", "6", "--out", d};
    auto one = sim;
    one.insert(one.end(), {"--threads", "1"});
    REQUIRE(run(one) == 0);
    auto first = slurp(dir / "fig2_visibility.csv");
    auto eight = sim;
    eight.insert(eight.end(), {"--threads", "8"});
    REQUIRE(run(eight) == 0);
    CHECK(slurp(dir / "fig2_visibility.csv") == first);
    CHECK(first.find('\r') == std::string::npos);
    CHECK(first.rfind("power_W,", 0) == 0);

    setenv(thread_env_var, "3", 1);
    REQUIRE(run(sim) == 0);
    CHECK(slurp(dir / "fig2_visibility.csv") == first);
    setenv(thread_env_var, "zero", 1);
    CHECK(run(sim) != 0);
    // --threads wins over a bad environment value
    CHECK(run(one) == 0);
    unsetenv(thread_env_var);

    REQUIRE(run({"spectrum", "--scenario", "fig3", "--out", d}) == 0);
    CHECK(fs::exists(dir / "fig3_spectrum.csv"));
    REQUIRE(run({"scan", "--scenario", "fig4b", "--ensemble", "4", "--out", d}) == 0);
    CHECK(fs::exists(dir / "fig4b_scan.csv"));

    auto blocked = dir / "file";
    std::ofstream(blocked) << "x";
    CHECK(run({"spectrum", "--scenario", "fig3", "--out",
               (blocked / "sub").string()}) != 0);
}
