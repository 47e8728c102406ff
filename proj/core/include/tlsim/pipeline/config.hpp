// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlsim/heating/fit.hpp"
#include "tlsim/heating/stage.hpp"
#include "tlsim/interferometer/geometry.hpp"
#include "tlsim/interferometer/visibility.hpp"

namespace tlsim::pipeline
{
struct EmissionSettings
{
    double heat_capacity_kb = 202;
    //! Empty: use the built-in default table
    std::filesystem::path cross_section_file;
    double cutoff_ev = 1.5;
    double visible_lower_nm = 400;
    double visible_upper_nm = 800;
    unsigned spectral_nodes_per_panel = 4;
};

struct NumericsSettings
{
    unsigned cooling_samples = 48;  //!< trajectory samples in the interferometer
    unsigned time_panels_per_half = 24;
    unsigned time_nodes = 4;
    int scan_max_order = 8;
    unsigned scan_points = 64;
    unsigned jackknife_blocks = 20;
};

struct SpectrumSettings
{
    std::vector<double> temperatures_k{2000, 2500, 3000, 3500, 4000};
    double lambda_min_nm = 200;
    double lambda_max_nm = 1000;
    double lambda_step_nm = 2;
};

struct ExperimentConfig
{
    std::string scenario = "custom";
    heating::HeatingStageConfig heating;
    heating::VelocityDistribution velocity;
    double oven_temperature_k = 900;
    interferometer::InterferometerGeometry geometry;
    //! Replaces the idealized grating visibility when set
    std::optional<double> baseline_visibility;
    bool detector_enabled = true;
    heating::DetectorModel detector;
    EmissionSettings emission;
    NumericsSettings numerics;
    std::vector<double> powers_w;
    std::size_t ensemble_size = 2000;
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = ".";
    SpectrumSettings spectrum;
    std::vector<double> scan_powers_w;
    std::filesystem::path observations_file;
    heating::FitOptions fit;

    void validate() const;
};

//! Names accepted by \c preset
std::vector<std::string> const& scenario_names();

//! Built-in scenario; "custom" is the plain defaults with no power sweep.
ExperimentConfig preset(std::string_view name);

/*!
 * Read a JSON configuration (comments allowed).
 *
 * A "base_scenario" key starts from that preset (else \c default_base);
 * other keys override it.
 * Relative paths resolve against \c base_dir.
 */
ExperimentConfig parse_config(std::istream& is,
                              std::filesystem::path const& base_dir = {},
                              std::string_view default_base = "custom");
ExperimentConfig load_config(std::filesystem::path const& path,
                             std::string_view default_base = "custom");

}  // namespace tlsim::pipeline
