// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tlsim/physics/constants.hpp"

namespace tlsim::physics
{
//! Heat capacity in units of k_B (C70: 202).
struct HeatCapacity
{
    double in_kb = 202.0;

    //! Heat capacity in eV/K
    constexpr double ev_per_kelvin() const
    {
        return in_kb * constants::k_boltzmann_ev;
    }
};

//! Vibrational internal energy of one molecule, eV.
struct InternalState
{
    double energy_ev = 0.0;
};

//! Microcanonical temperature T_m = E / C_V, in K.
constexpr double micro_temperature(InternalState state, HeatCapacity cv)
{
    return state.energy_ev / cv.ev_per_kelvin();
}

//! Inverse of micro_temperature, in eV.
constexpr double internal_energy(double temperature_k, HeatCapacity cv)
{
    return temperature_k * cv.ev_per_kelvin();
}

}  // namespace tlsim::physics
