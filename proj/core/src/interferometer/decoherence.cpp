// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/interferometer/decoherence.hpp"

#include <cmath>
#include <numbers>

#include "tlsim/error.hpp"
#include "tlsim/numerics/quadrature.hpp"

namespace tlsim::interferometer
{
using std::numbers::pi;

double sinc(double x)
{
    if (std::abs(x) < 1e-4)
        return 1 - x * x / 6;
    return std::sin(x) / x;
}

double one_minus_sinc(double x)
{
    double x2 = x * x;
    if (std::abs(x) < 1e-2)
        return x2 / 6 * (1 - x2 / 20 * (1 - x2 / 42));
    return 1 - std::sin(x) / x;
}

double decoherence_function(double delta_r_nm,
                            physics::SpectralDensity const& spectrum)
{
    if (spectrum.empty())
        throw DegenerateSpectrum("decoherence of an empty spectrum");
    auto const& edges = spectrum.edges_nm();
    auto const& p = spectrum.probability();
    auto const& rule = numerics::gauss_legendre(8);
    double sum = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        if (p[i] == 0)
            continue;
        double a = edges[i];
        double b = edges[i + 1];
        if (!(b > a))
        {
            sum += p[i] * sinc(2 * pi * delta_r_nm / a);
            continue;
        }
        double avg = 0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        {
            double wl = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[k];
            avg += 0.5 * rule.weights[k] * sinc(2 * pi * delta_r_nm / wl);
        }
        sum += p[i] * avg;
    }
    return sum / spectrum.norm();
}

FringeCoefficients apply_single_emission(FringeCoefficients c,
                                         EmissionEvent const& event,
                                         double velocity_mps,
                                         InterferometerGeometry const& geometry)
{
    if (!(event.wavelength_nm > 0))
        throw ConfigError("emission wavelength must be positive");
    double s = path_separation_nm(geometry, velocity_mps, event.time_s);
    for (int l = -c.max_order(); l <= c.max_order(); ++l)
        c[l] *= sinc(2 * pi * std::abs(l) * s / event.wavelength_nm);
    return c;
}

}  // namespace tlsim::interferometer
