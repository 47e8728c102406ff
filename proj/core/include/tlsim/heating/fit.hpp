// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "tlsim/heating/stage.hpp"

namespace tlsim::heating
{
//! One row of an ion-yield measurement: power_W, velocity_mps, yield, yield_err
struct IonYieldObservation
{
    double power_w = 0;
    double velocity_mps = 0;
    double yield = 0;
    double yield_err = 0;
};

//! Whitespace or comma separated rows; '#' starts a comment.
std::vector<IonYieldObservation> read_observations(std::istream& is);
std::vector<IonYieldObservation>
read_observations(std::filesystem::path const& path);
void write_observations(std::ostream& os,
                        std::span<IonYieldObservation const> rows);

struct FitOptions
{
    double sigma_center_cm2 = 1e-17;
    double prefactor_center = 1e9;
    double sigma_half_span_decades = 1.0;
    double prefactor_half_span_decades = 2.0;
    unsigned grid_points = 9;
    unsigned levels = 4;
    std::size_t molecules = 200;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct HeatingFit
{
    double sigma_cm2 = 0;
    double arrhenius_prefactor = 0;
    double objective = 0;
    std::size_t evaluations = 0;
};

/*!
 * Model ion yields for each observation.
 *
 * Each observation uses fixed velocity and its own random channel; molecule
 * \c i of observation \c o always draws from the same stream.
 */
std::vector<double>
model_yields(std::span<IonYieldObservation const> observations,
             HeatingStageConfig const& cfg,
             physics::CoolingIntegrator const& cooler,
             double initial_energy_ev,
             FitOptions const& opts);

/*!
 * Fit the absorption cross section and the ionization prefactor.
 *
 * Minimizes the weighted squared log-yield residual on a log-spaced grid,
 * then re-centers and shrinks the grid around the best point. The activation
 * energy is held at the value in \c cfg. Throws NumericalError when the
 * objective is flat across the first grid.
 */
HeatingFit fit_heating_params(std::span<IonYieldObservation const> observations,
                              HeatingStageConfig const& cfg,
                              physics::CoolingIntegrator const& cooler,
                              double initial_energy_ev,
                              FitOptions const& opts);

}  // namespace tlsim::heating
