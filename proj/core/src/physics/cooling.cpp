// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/physics/cooling.hpp"

#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "tlsim/error.hpp"

namespace tlsim::physics
{
namespace
{
namespace ode = boost::numeric::odeint;
using State = std::array<double, 2>;  // energy (eV), auxiliary integral
using Stepper = ode::runge_kutta_dopri5<State>;

struct CoolingRhs
{
    EmissionModel const* model;
    TemperatureRate const* aux;
    double ev_per_k;

    void operator()(State const& x, State& dxdt, double /*t*/) const
    {
        double energy = std::max(x[0], 0.0);
        double temp = energy / ev_per_k;
        dxdt[0] = -model->radiated_power_ev(temp);
        dxdt[1] = (aux && *aux) ? (*aux)(temp) : 0.0;
    }
};

[[noreturn]] void step_failure(char const* what)
{
    throw NumericalError(std::string("cooling integrator failed: ") + what);
}

}  // namespace

CoolingIntegrator::CoolingIntegrator(EmissionModel const& model,
                                     CoolingOptions opts)
    : model_(&model), opts_(opts)
{
}

CoolingSegment CoolingIntegrator::advance(double energy_ev,
                                          double dt_s,
                                          TemperatureRate const& aux) const
{
    if (!(dt_s >= 0) || !(energy_ev >= 0))
        throw ConfigError("cooling needs dt >= 0 and energy >= 0");
    if (dt_s == 0 || energy_ev == 0)
    {
        CoolingSegment result{energy_ev, 0};
        if (dt_s > 0 && aux)
            result.rate_integral = aux(0.0) * dt_s;
        return result;
    }

    CoolingRhs rhs{model_, &aux, model_->heat_capacity().ev_per_kelvin()};
    State x{energy_ev, 0.0};
    auto stepper = ode::make_controlled(
        opts_.abs_tol_ev, opts_.rel_tol, Stepper{});
    double t = 0;
    double h = std::min(opts_.initial_step_s, dt_s);
    unsigned steps = 0;
    while (t < dt_s)
    {
        if (++steps > opts_.max_steps)
            step_failure("maximum step count exceeded");
        bool last = (t + h >= dt_s);
        double trial = last ? dt_s - t : h;
        if (stepper.try_step(rhs, x, t, trial) == ode::success)
        {
            // try_step advanced t and proposed the next step in 'trial'
            if (last)
                t = dt_s;
            h = trial;
        }
        else
        {
            h = trial;
            if (h < dt_s * 1e-14 || t + h == t)
                step_failure("step size underflow");
        }
    }
    return {std::clamp(x[0], 0.0, energy_ev), x[1]};
}

std::vector<double>
CoolingIntegrator::sample(double energy_ev,
                          std::span<double const> offsets_s) const
{
    std::vector<double> result;
    result.reserve(offsets_s.size());
    double t = 0;
    double e = energy_ev;
    for (double target : offsets_s)
    {
        if (target < t)
            throw ConfigError("cooling sample offsets must be increasing");
        e = advance(e, target - t).energy_ev;
        t = target;
        result.push_back(e);
    }
    return result;
}

InternalState cool(InternalState state,
                   double dt_s,
                   EmissionModel const& model,
                   CoolingOptions const& opts)
{
    return {CoolingIntegrator(model, opts).advance(state.energy_ev, dt_s)
                .energy_ev};
}

}  // namespace tlsim::physics
