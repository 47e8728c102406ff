// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/heating/ionization.hpp"

#include <cmath>

#include "tlsim/error.hpp"
#include "tlsim/numerics/quadrature.hpp"
#include "tlsim/physics/constants.hpp"

namespace tlsim::heating
{
namespace k = tlsim::constants;

double IonizationModel::boltzmann_factor(double temperature_k) const
{
    if (!(temperature_k > 0))
        return 0;
    return std::exp(-activation_energy_ev / (k::k_boltzmann_ev * temperature_k));
}

double IonizationModel::rate(double temperature_k) const
{
    return arrhenius_prefactor * boltzmann_factor(temperature_k);
}

void IonizationModel::validate() const
{
    if (!(arrhenius_prefactor >= 0) || !(activation_energy_ev > 0))
        throw ConfigError("ionization needs prefactor >= 0 and E_a > 0");
}

double ionization_survival(std::span<EnergySample const> segment,
                           physics::HeatCapacity cv,
                           IonizationModel const& model)
{
    auto const& rule = numerics::gauss_legendre(10);
    double depth = 0;
    double ev_per_k = cv.ev_per_kelvin();
    for (std::size_t i = 0; i + 1 < segment.size(); ++i)
    {
        auto const& a = segment[i];
        auto const& b = segment[i + 1];
        double dt = b.time_s - a.time_s;
        if (dt < 0)
            throw ConfigError("trajectory samples must be time ordered");
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        {
            double s = 0.5 * (1 + rule.nodes[j]);
            double e = a.energy_ev + s * (b.energy_ev - a.energy_ev);
            depth += 0.5 * dt * rule.weights[j] * model.rate(e / ev_per_k);
        }
    }
    return std::exp(-depth);
}

double DetectorModel::efficiency(double arrival_energy_ev,
                                 physics::HeatCapacity cv,
                                 IonizationModel const& model) const
{
    double e = arrival_energy_ev
               + deposited_photons * k::photon_energy_ev(photon_wavelength_nm);
    double rate = model.rate(e / cv.ev_per_kelvin());
    return -std::expm1(-rate * window_s);
}

}  // namespace tlsim::heating
