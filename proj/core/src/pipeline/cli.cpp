// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/pipeline/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tlsim/error.hpp"
#include "tlsim/pipeline/config.hpp"
#include "tlsim/pipeline/run.hpp"

namespace tlsim::pipeline
{
namespace
{
struct Arguments
{
    std::string config;
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<unsigned> threads;
    std::optional<std::size_t> ensemble;
    std::string data;
};

unsigned thread_count(Arguments const& a)
{
    if (a.threads)
        return *a.threads;
    if (char const* env = std::getenv(thread_env_var))
    {
        try
        {
            std::size_t used = 0;
            long n = std::stol(env, &used);
            if (used == std::string(env).size() && n > 0)
                return static_cast<unsigned>(n);
        }
        catch (std::exception const&)
        {
        }
        throw ConfigError(std::string(thread_env_var)
                          + " must be a positive integer");
    }
    return 0;
}

ExperimentConfig resolve_config(Arguments const& a)
{
    ExperimentConfig cfg;
    if (!a.config.empty())
    {
        cfg = load_config(a.config, a.scenario.empty() ? "custom" : a.scenario);
        if (!a.scenario.empty() && a.scenario != "custom")
            cfg.scenario = a.scenario;
    }
    else
    {
        std::string name = a.scenario.empty() ? "fig4a" : a.scenario;
        if (name == "custom")
            throw ConfigError("scenario 'custom' requires --config PATH");
        cfg = preset(name);
    }
    if (a.seed)
        cfg.seed = *a.seed;
    if (a.ensemble)
        cfg.ensemble_size = *a.ensemble;
    if (!a.out.empty())
        cfg.output_dir = a.out;
    cfg.validate();
    return cfg;
}

std::filesystem::path output_path(ExperimentConfig const& cfg,
                                  std::string const& subject)
{
    std::error_code ec;
    std::filesystem::create_directories(cfg.output_dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory "
                          + cfg.output_dir.string() + ": " + ec.message());
    return cfg.output_dir / (cfg.scenario + "_" + subject + ".csv");
}

template<class Writer>
void write_file(std::filesystem::path const& path, Writer&& writer,
                std::ostream& out)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw ConfigError("cannot write output file " + path.string());
    writer(os);
    os.flush();
    if (!os)
        throw ConfigError("failed writing output file " + path.string());
    out << path.string() << '\n';
}

}  // namespace

int cli_main(int argc, char const* const* argv, std::ostream& out,
             std::ostream& err)
{
    CLI::App app{"Talbot-Lau interferometer decoherence simulator", "tlsim"};
    app.require_subcommand(1);
    app.fallthrough();

    Arguments a;
    std::string scenarios;
    for (auto const& s : scenario_names())
        scenarios += (scenarios.empty() ? "" : ",") + s;
    app.add_option("--config", a.config, "JSON configuration file");
    app.add_option("--scenario", a.scenario, "Preset: " + scenarios)
        ->check(CLI::IsMember(scenario_names()));
    app.add_option("--seed", a.seed, "Master random seed");
    app.add_option("--out", a.out, "Output directory");
    app.add_option("--threads", a.threads, "Worker threads (default: "
                                               + std::string(thread_env_var)
                                               + " or all cores)")
        ->check(CLI::PositiveNumber);
    app.add_option("--ensemble", a.ensemble, "Molecules per power point")
        ->check(CLI::PositiveNumber);

    auto* simulate = app.add_subcommand("simulate",
                                        "Visibility and count rate vs power");
    auto* spectrum = app.add_subcommand("spectrum",
                                        "Spectral emission rate tables");
    auto* scan = app.add_subcommand("scan", "Third-grating fringe scans");
    auto* fit = app.add_subcommand("fit",
                                   "Fit heating parameters to ion yields");
    fit->add_option("--data", a.data, "Ion-yield observation file");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const&)
    {
        out << app.help();
        return 0;
    }
    catch (CLI::ParseError const& e)
    {
        err << "tlsim: error: " << e.what() << '\n';
        return 2;
    }

    try
    {
        auto cfg = resolve_config(a);
        unsigned threads = thread_count(a);
        if (*simulate)
        {
            auto table = run_scenario(cfg, threads);
            write_file(output_path(cfg, "visibility"),
                       [&](std::ostream& os) { write_results(os, table); }, out);
        }
        else if (*spectrum)
        {
            auto rows = spectrum_rows(cfg.spectrum.temperatures_k, cfg);
            write_file(output_path(cfg, "spectrum"),
                       [&](std::ostream& os) { write_spectrum(os, rows); }, out);
        }
        else if (*scan)
        {
            auto powers = cfg.scan_powers_w;
            if (powers.empty())
                powers = {0.0};
            auto result = Simulation(cfg, threads).scans(powers);
            write_file(output_path(cfg, "scan"),
                       [&](std::ostream& os) { write_scans(os, result); }, out);
        }
        else if (*fit)
        {
            std::filesystem::path data = a.data.empty()
                                             ? cfg.observations_file
                                             : std::filesystem::path(a.data);
            if (data.empty())
                throw ConfigError("fit needs observations: --data PATH or "
                                  "fit.observations in the config");
            auto report = run_fit(cfg, heating::read_observations(data),
                                  threads);
            write_file(output_path(cfg, "fit"),
                       [&](std::ostream& os) { write_fit(os, report); }, out);
            write_file(output_path(cfg, "fit_yields"),
                       [&](std::ostream& os) { write_fit_yields(os, report); },
                       out);
        }
    }
    catch (std::exception const& e)
    {
        err << "tlsim: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int cli_main(int argc, char const* const* argv)
{
    return cli_main(argc, argv, std::cout, std::cerr);
}

}  // namespace tlsim::pipeline
