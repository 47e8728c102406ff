// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tlsim/physics/constants.hpp"

namespace tlsim::interferometer
{
//! Three identical gratings with equal spacing L.
struct InterferometerGeometry
{
    double period_nm = 991;
    double slit_width_nm = 475;
    double separation_m = 0.38;
    double mass_kg = constants::c70_mass;

    double open_fraction() const { return slit_width_nm / period_nm; }
    //! Time from the first to the third grating
    double transit_time(double velocity_mps) const
    {
        return 2 * separation_m / velocity_mps;
    }
    void validate() const;
};

struct MatterWave
{
    double de_broglie_pm = 0;
    double talbot_length_m = 0;
};

MatterWave de_broglie_and_talbot(InterferometerGeometry const& geometry,
                                 double velocity_mps);

/*!
 * Separation of the interfering paths at time t after the first grating,
 * for unit diffraction order: d (L - |v t - L|) / L_T, in nm.
 */
double path_separation_nm(InterferometerGeometry const& geometry,
                          double velocity_mps,
                          double time_s);

}  // namespace tlsim::interferometer
