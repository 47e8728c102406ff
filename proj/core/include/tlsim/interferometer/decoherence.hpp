// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "tlsim/interferometer/coefficients.hpp"
#include "tlsim/physics/emission.hpp"

namespace tlsim::interferometer
{
//! sin(x)/x
double sinc(double x);

//! 1 - sin(x)/x without cancellation near zero
double one_minus_sinc(double x);

/*!
 * Spectrally averaged kick factor eta(dr) = <sinc(2 pi dr / lambda)>.
 *
 * Each histogram bin is averaged with 8-point Gauss-Legendre; zero-width
 * bins are evaluated at their wavelength.
 */
double decoherence_function(double delta_r_nm,
                            physics::SpectralDensity const& spectrum);

//! A photon emitted at \c time_s after the first grating
struct EmissionEvent
{
    double time_s = 0;
    double wavelength_nm = 0;
};

//! Multiply C_l by sinc(2 pi l s(t) / lambda) for one photon.
FringeCoefficients apply_single_emission(FringeCoefficients c,
                                         EmissionEvent const& event,
                                         double velocity_mps,
                                         InterferometerGeometry const& geometry);

}  // namespace tlsim::interferometer
