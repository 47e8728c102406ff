// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "tlsim/physics/thermo.hpp"

namespace tlsim::heating
{
//! Thermally activated electron emission, k = A exp(-E_a / k_B T_m).
struct IonizationModel
{
    double arrhenius_prefactor = 5e9;  //!< 1/s
    double activation_energy_ev = 7.6;

    double rate(double temperature_k) const;
    //! exp(-E_a/k_B T), the rate per unit prefactor
    double boltzmann_factor(double temperature_k) const;
    void validate() const;
};

//! (time, internal energy) sample of a trajectory
struct EnergySample
{
    double time_s = 0;
    double energy_ev = 0;
};

/*!
 * Survival probability exp(-int k(T(t)) dt) along a sampled segment.
 *
 * The energy is taken piecewise linear between samples; each interval is
 * integrated with 10-point Gauss-Legendre.
 */
double ionization_survival(std::span<EnergySample const> segment,
                           physics::HeatCapacity cv,
                           IonizationModel const& model);

/*!
 * Qualitative detection efficiency of the ionizing detector behind the
 * interferometer.
 *
 * The detection laser deposits a fixed number of photons on top of the
 * arrival energy; the molecule is counted if it ionizes thermally within the
 * extraction window.
 */
struct DetectorModel
{
    double deposited_photons = 22.0;
    double photon_wavelength_nm = 488.0;
    double window_s = 1e-5;

    double efficiency(double arrival_energy_ev,
                      physics::HeatCapacity cv,
                      IonizationModel const& model) const;
};

}  // namespace tlsim::heating
