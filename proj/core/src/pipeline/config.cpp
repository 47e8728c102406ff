// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/pipeline/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include <json.hpp>

#include "tlsim/error.hpp"

namespace tlsim::pipeline
{
namespace
{
using nlohmann::json;

std::vector<double> power_grid(double hi, double step)
{
    std::vector<double> p;
    auto n = static_cast<int>(std::llround(hi / step));
    for (int i = 0; i <= n; ++i)
        p.push_back(i * step);
    return p;
}

ExperimentConfig laboratory(std::string name,
                            double velocity,
                            std::size_t beams,
                            double baseline)
{
    ExperimentConfig cfg;
    cfg.scenario = std::move(name);
    cfg.heating = heating::HeatingStageConfig::uniform(beams, 0.0);
    cfg.heating.beam_offset_um = 31;
    cfg.heating.ionization.activation_energy_ev = 4.8;
    cfg.velocity = {velocity, 0.15};
    cfg.baseline_visibility = baseline;
    return cfg;
}

//! Reject keys outside the allowed set
void check_keys(json const& j, char const* section,
                std::initializer_list<char const*> allowed)
{
    if (!j.is_object())
        throw ConfigError(std::string("config section '") + section
                          + "' must be an object");
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (auto const& [key, value] : j.items())
    {
        if (!names.count(key))
            throw ConfigError(std::string("unknown key '") + key
                              + "' in config section '" + section + "'");
    }
}

template<class T>
void read(json const& j, char const* key, T& out)
{
    if (auto it = j.find(key); it != j.end())
    {
        try
        {
            out = it->get<T>();
        }
        catch (json::exception const& e)
        {
            throw ConfigError(std::string("config key '") + key
                              + "': " + e.what());
        }
    }
}

void read_path(json const& j, char const* key,
               std::filesystem::path const& base,
               std::filesystem::path& out)
{
    std::string s;
    if (j.contains(key) && !j.at(key).is_null())
    {
        read(j, key, s);
        std::filesystem::path p(s);
        out = (p.is_relative() && !base.empty()) ? base / p : p;
    }
}

}  // namespace

//---------------------------------------------------------------------------//
void ExperimentConfig::validate() const
{
    if (ensemble_size < 1)
        throw ConfigError("ensemble size must be >= 1");
    for (double p : powers_w)
    {
        if (!(p >= 0))
            throw ConfigError("laser powers must be >= 0");
    }
    for (double p : scan_powers_w)
    {
        if (!(p >= 0))
            throw ConfigError("scan powers must be >= 0");
    }
    velocity.validate();
    heating.validate();
    geometry.validate();
    if (baseline_visibility && !(*baseline_visibility >= 0
                                 && *baseline_visibility <= 1))
        throw ConfigError("baseline visibility must lie in [0, 1]");
    if (!(oven_temperature_k >= 0))
        throw ConfigError("oven temperature must be >= 0");
    if (!(emission.heat_capacity_kb > 0) || !(emission.cutoff_ev > 0))
        throw ConfigError("heat capacity and cutoff energy must be positive");
    if (!(emission.visible_upper_nm > emission.visible_lower_nm))
        throw ConfigError("visible band must have upper > lower");
    if (numerics.cooling_samples == 0 || numerics.time_panels_per_half == 0
        || numerics.scan_points < 3 || numerics.scan_max_order < 1)
        throw ConfigError("numerics settings out of range");
    if (!(spectrum.lambda_step_nm > 0)
        || !(spectrum.lambda_max_nm > spectrum.lambda_min_nm)
        || !(spectrum.lambda_min_nm > 0))
        throw ConfigError("spectrum wavelength grid is invalid");
    for (double t : spectrum.temperatures_k)
    {
        if (!(t >= 0))
            throw ConfigError("spectrum temperatures must be >= 0");
    }
}

std::vector<std::string> const& scenario_names()
{
    static std::vector<std::string> const names{
        "fig2", "fig3", "fig4a", "fig4b", "custom"};
    return names;
}

ExperimentConfig preset(std::string_view name)
{
    if (name == "fig2")
    {
        auto cfg = laboratory("fig2", 190, 16, 0.47);
        cfg.powers_w = {0, 3, 6, 10.5};
        cfg.scan_powers_w = cfg.powers_w;
        return cfg;
    }
    if (name == "fig3")
    {
        auto cfg = laboratory("fig3", 190, 16, 0.47);
        cfg.powers_w = {0, 10};
        cfg.scan_powers_w = {0};
        return cfg;
    }
    if (name == "fig4a")
    {
        auto cfg = laboratory("fig4a", 190, 16, 0.47);
        cfg.powers_w = power_grid(10.5, 0.5);
        cfg.scan_powers_w = {0, 3, 6, 10.5};
        return cfg;
    }
    if (name == "fig4b")
    {
        auto cfg = laboratory("fig4b", 100, 10, 0.19);
        cfg.powers_w = power_grid(6.0, 0.5);
        cfg.scan_powers_w = {0, 3};
        return cfg;
    }
    if (name == "custom")
    {
        ExperimentConfig cfg;
        cfg.heating = heating::HeatingStageConfig::uniform(16, 0.0);
        return cfg;
    }
    throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

ExperimentConfig parse_config(std::istream& is,
                              std::filesystem::path const& base_dir,
                              std::string_view default_base)
{
    json root;
    try
    {
        root = json::parse(is, nullptr, true, true);
    }
    catch (json::parse_error const& e)
    {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(root, "top level",
               {"base_scenario", "scenario", "seed", "ensemble_size",
                "powers_w", "output_dir", "oven_temperature_k", "velocity",
                "heating", "interferometer", "detector", "emission",
                "numerics", "spectrum", "scan", "fit"});

    std::string base(default_base);
    read(root, "base_scenario", base);
    ExperimentConfig cfg = preset(base);
    read(root, "scenario", cfg.scenario);
    read(root, "seed", cfg.seed);
    read(root, "ensemble_size", cfg.ensemble_size);
    read(root, "powers_w", cfg.powers_w);
    read(root, "oven_temperature_k", cfg.oven_temperature_k);
    read_path(root, "output_dir", base_dir, cfg.output_dir);

    if (root.contains("velocity"))
    {
        auto const& j = root["velocity"];
        check_keys(j, "velocity", {"mean_mps", "relative_spread"});
        read(j, "mean_mps", cfg.velocity.mean_mps);
        read(j, "relative_spread", cfg.velocity.relative_spread);
    }
    if (root.contains("heating"))
    {
        auto const& j = root["heating"];
        check_keys(j, "heating",
                   {"beam_count", "waist_um", "wavelength_nm",
                    "beam_spacing_mm", "drift_cm",
                    "absorption_cross_section_cm2", "beam_offset_um",
                    "height_spread_um", "ionization"});
        auto& h = cfg.heating;
        std::size_t count = h.beams.size();
        heating::LaserBeam beam = h.beams.empty() ? heating::LaserBeam{}
                                                  : h.beams.front();
        read(j, "beam_count", count);
        read(j, "waist_um", beam.waist_um);
        read(j, "wavelength_nm", beam.wavelength_nm);
        h.beams.assign(count, beam);
        read(j, "beam_spacing_mm", h.beam_spacing_mm);
        read(j, "drift_cm", h.drift_to_interferometer_cm);
        read(j, "absorption_cross_section_cm2", h.triplet_sigma_cm2);
        read(j, "beam_offset_um", h.beam_offset_um);
        read(j, "height_spread_um", h.height_spread_um);
        if (j.contains("ionization"))
        {
            auto const& ji = j["ionization"];
            check_keys(ji, "heating.ionization",
                       {"prefactor_per_s", "activation_energy_ev"});
            read(ji, "prefactor_per_s", h.ionization.arrhenius_prefactor);
            read(ji, "activation_energy_ev", h.ionization.activation_energy_ev);
        }
    }
    if (root.contains("interferometer"))
    {
        auto const& j = root["interferometer"];
        check_keys(j, "interferometer",
                   {"period_nm", "slit_width_nm", "separation_m", "mass_amu",
                    "baseline_visibility"});
        auto& g = cfg.geometry;
        read(j, "period_nm", g.period_nm);
        read(j, "slit_width_nm", g.slit_width_nm);
        read(j, "separation_m", g.separation_m);
        if (j.contains("mass_amu"))
        {
            double amu = 0;
            read(j, "mass_amu", amu);
            g.mass_kg = amu * constants::amu;
        }
        if (j.contains("baseline_visibility"))
        {
            if (j["baseline_visibility"].is_null())
                cfg.baseline_visibility.reset();
            else
            {
                double v = 0;
                read(j, "baseline_visibility", v);
                cfg.baseline_visibility = v;
            }
        }
    }
    if (root.contains("detector"))
    {
        auto const& j = root["detector"];
        check_keys(j, "detector",
                   {"enabled", "deposited_photons", "photon_wavelength_nm",
                    "window_s"});
        read(j, "enabled", cfg.detector_enabled);
        read(j, "deposited_photons", cfg.detector.deposited_photons);
        read(j, "photon_wavelength_nm", cfg.detector.photon_wavelength_nm);
        read(j, "window_s", cfg.detector.window_s);
    }
    if (root.contains("emission"))
    {
        auto const& j = root["emission"];
        check_keys(j, "emission",
                   {"heat_capacity_kb", "cross_section_file", "cutoff_ev",
                    "visible_band_nm", "spectral_nodes_per_panel"});
        auto& e = cfg.emission;
        read(j, "heat_capacity_kb", e.heat_capacity_kb);
        read_path(j, "cross_section_file", base_dir, e.cross_section_file);
        read(j, "cutoff_ev", e.cutoff_ev);
        read(j, "spectral_nodes_per_panel", e.spectral_nodes_per_panel);
        if (j.contains("visible_band_nm"))
        {
            std::vector<double> band;
            read(j, "visible_band_nm", band);
            if (band.size() != 2)
                throw ConfigError("visible_band_nm needs two values");
            e.visible_lower_nm = band[0];
            e.visible_upper_nm = band[1];
        }
    }
    if (root.contains("numerics"))
    {
        auto const& j = root["numerics"];
        check_keys(j, "numerics",
                   {"cooling_samples", "time_panels_per_half", "time_nodes",
                    "scan_max_order", "scan_points", "jackknife_blocks"});
        auto& n = cfg.numerics;
        read(j, "cooling_samples", n.cooling_samples);
        read(j, "time_panels_per_half", n.time_panels_per_half);
        read(j, "time_nodes", n.time_nodes);
        read(j, "scan_max_order", n.scan_max_order);
        read(j, "scan_points", n.scan_points);
        read(j, "jackknife_blocks", n.jackknife_blocks);
    }
    if (root.contains("spectrum"))
    {
        auto const& j = root["spectrum"];
        check_keys(j, "spectrum",
                   {"temperatures_k", "lambda_min_nm", "lambda_max_nm",
                    "lambda_step_nm"});
        read(j, "temperatures_k", cfg.spectrum.temperatures_k);
        read(j, "lambda_min_nm", cfg.spectrum.lambda_min_nm);
        read(j, "lambda_max_nm", cfg.spectrum.lambda_max_nm);
        read(j, "lambda_step_nm", cfg.spectrum.lambda_step_nm);
    }
    if (root.contains("scan"))
    {
        auto const& j = root["scan"];
        check_keys(j, "scan", {"powers_w"});
        read(j, "powers_w", cfg.scan_powers_w);
    }
    if (root.contains("fit"))
    {
        auto const& j = root["fit"];
        check_keys(j, "fit",
                   {"observations", "molecules", "grid_points", "levels",
                    "sigma_center_cm2", "prefactor_center",
                    "sigma_half_span_decades", "prefactor_half_span_decades"});
        auto& f = cfg.fit;
        read_path(j, "observations", base_dir, cfg.observations_file);
        read(j, "molecules", f.molecules);
        read(j, "grid_points", f.grid_points);
        read(j, "levels", f.levels);
        read(j, "sigma_center_cm2", f.sigma_center_cm2);
        read(j, "prefactor_center", f.prefactor_center);
        read(j, "sigma_half_span_decades", f.sigma_half_span_decades);
        read(j, "prefactor_half_span_decades", f.prefactor_half_span_decades);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(std::filesystem::path const& path,
                             std::string_view default_base)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot read config file " + path.string());
    return parse_config(is, path.parent_path(), default_base);
}

}  // namespace tlsim::pipeline
