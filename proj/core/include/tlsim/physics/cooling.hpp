// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "tlsim/physics/emission.hpp"

namespace tlsim::physics
{
struct CoolingOptions
{
    double rel_tol = 1e-8;
    double abs_tol_ev = 1e-9;
    double initial_step_s = 1e-9;
    //! Abort with an error after this many steps on one call
    unsigned max_steps = 200000;
};

//! Energy after cooling plus the time integral of an auxiliary rate.
struct CoolingSegment
{
    double energy_ev = 0;
    double rate_integral = 0;
};

//! Optional auxiliary rate k(T) (1/s) integrated along the cooling path.
using TemperatureRate = std::function<double(double temperature_k)>;

/*!
 * Radiative cooling dE/dt = -P(T_m(E)) with an embedded Dormand-Prince 5(4)
 * pair. Throws NumericalError when the step size cannot meet the tolerance.
 */
class CoolingIntegrator
{
  public:
    explicit CoolingIntegrator(EmissionModel const& model,
                               CoolingOptions opts = {});

    //! Integrate over [0, dt] from the given energy
    CoolingSegment advance(double energy_ev,
                           double dt_s,
                           TemperatureRate const& aux = {}) const;

    //! Energies at the given (increasing, >= 0) offsets from the start.
    std::vector<double>
    sample(double energy_ev, std::span<double const> offsets_s) const;

    EmissionModel const& model() const { return *model_; }

  private:
    EmissionModel const* model_;
    CoolingOptions opts_;
};

//! Cool a single molecule for dt seconds.
InternalState cool(InternalState state,
                   double dt_s,
                   EmissionModel const& model,
                   CoolingOptions const& opts = {});

}  // namespace tlsim::physics
