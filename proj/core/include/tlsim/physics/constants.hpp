// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>

namespace tlsim::constants
{
//! Exact SI values (2019 redefinition) plus CODATA 2018 derived values.
inline constexpr double planck = 6.62607015e-34;  // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);  // J s
inline constexpr double c_light = 299792458.0;  // m/s
inline constexpr double k_boltzmann = 1.380649e-23;  // J/K
inline constexpr double e_charge = 1.602176634e-19;  // J per eV
inline constexpr double k_boltzmann_ev = k_boltzmann / e_charge;  // eV/K
inline constexpr double amu = 1.66053906660e-27;  // kg

//! C70 fullerene, 70 x 12.011 u.
inline constexpr double c70_mass = 840.77 * amu;  // kg

//! h c in eV nm, for photon energy <-> wavelength.
inline constexpr double hc_ev_nm = planck * c_light / e_charge * 1e9;

//---------------------------------------------------------------------------//
// Conversion helpers. Wavelengths are in nm, energies in eV.
//---------------------------------------------------------------------------//
constexpr double photon_energy_ev(double wavelength_nm)
{
    return hc_ev_nm / wavelength_nm;
}

constexpr double photon_wavelength_nm(double energy_ev)
{
    return hc_ev_nm / energy_ev;
}

constexpr double photon_energy_joule(double wavelength_nm)
{
    return planck * c_light / (wavelength_nm * 1e-9);
}

//! Angular frequency (rad/s) of a photon with the given vacuum wavelength.
constexpr double wavelength_to_omega(double wavelength_nm)
{
    return 2.0 * std::numbers::pi * c_light / (wavelength_nm * 1e-9);
}

constexpr double omega_to_wavelength(double omega)
{
    return 2.0 * std::numbers::pi * c_light / omega * 1e9;
}

}  // namespace tlsim::constants
