// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/interferometer/geometry.hpp"

#include <cmath>

#include "tlsim/error.hpp"

namespace tlsim::interferometer
{
void InterferometerGeometry::validate() const
{
    if (!(period_nm > 0) || !(slit_width_nm > 0)
        || !(slit_width_nm < period_nm))
        throw ConfigError("grating needs 0 < slit width < period");
    if (!(separation_m > 0) || !(mass_kg > 0))
        throw ConfigError("grating separation and mass must be positive");
}

MatterWave de_broglie_and_talbot(InterferometerGeometry const& geometry,
                                 double velocity_mps)
{
    if (!(velocity_mps > 0))
        throw ConfigError("velocity must be positive");
    double lambda = constants::planck / (geometry.mass_kg * velocity_mps);
    double d = geometry.period_nm * 1e-9;
    return {lambda * 1e12, d * d / lambda};
}

double path_separation_nm(InterferometerGeometry const& geometry,
                          double velocity_mps,
                          double time_s)
{
    auto wave = de_broglie_and_talbot(geometry, velocity_mps);
    double l = geometry.separation_m;
    double z = l - std::abs(velocity_mps * time_s - l);
    return geometry.period_nm * std::max(z, 0.0) / wave.talbot_length_m;
}

}  // namespace tlsim::interferometer
