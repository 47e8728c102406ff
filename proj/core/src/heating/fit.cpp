// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/heating/fit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "tlsim/error.hpp"
#include "tlsim/numerics/parallel.hpp"
#include "tlsim/numerics/random.hpp"

namespace tlsim::heating
{
namespace
{
using Integrals = std::vector<std::vector<double>>;

//! Per molecule int exp(-E_a/kT) dt over the beam region
Integrals stage_integrals(std::span<IonYieldObservation const> obs,
                          HeatingStageConfig cfg,
                          double sigma_cm2,
                          physics::CoolingIntegrator const& cooler,
                          double initial_energy_ev,
                          FitOptions const& opts)
{
    cfg.triplet_sigma_cm2 = sigma_cm2;
    cfg.ionization.arrhenius_prefactor = 1.0;
    Integrals result(obs.size(), std::vector<double>(opts.molecules));
    for (std::size_t o = 0; o < obs.size(); ++o)
    {
        auto c = cfg;
        c.set_power(obs[o].power_w);
        auto& row = result[o];
        numerics::parallel_for(opts.molecules, opts.threads, [&](std::size_t i) {
            auto rng = numerics::molecule_stream(opts.seed, i, o + 1);
            auto traj = traverse_stage(
                obs[o].velocity_mps, c, initial_energy_ev, cooler, rng);
            row[i] = traj.stage_ionization_depth;
        });
    }
    return result;
}

std::vector<double> yields(Integrals const& j, double prefactor)
{
    std::vector<double> y;
    y.reserve(j.size());
    for (auto const& row : j)
    {
        double sum = 0;
        for (double v : row)
            sum += -std::expm1(-prefactor * v);
        y.push_back(sum / row.size());
    }
    return y;
}

double objective(std::span<IonYieldObservation const> obs,
                 std::vector<double> const& model)
{
    constexpr double floor = 1e-30;
    double chi2 = 0;
    for (std::size_t o = 0; o < obs.size(); ++o)
    {
        double rel = (obs[o].yield_err > 0 && obs[o].yield > 0)
                         ? obs[o].yield_err / obs[o].yield
                         : 1.0;
        double r = (std::log(std::max(model[o], floor))
                    - std::log(std::max(obs[o].yield, floor)))
                   / rel;
        chi2 += r * r;
    }
    return chi2;
}

std::vector<double> log_grid(double center, double half_decades, unsigned n)
{
    std::vector<double> g(n);
    for (unsigned i = 0; i < n; ++i)
    {
        double f = (n == 1) ? 0.0 : 2.0 * i / (n - 1) - 1.0;
        g[i] = center * std::pow(10.0, f * half_decades);
    }
    // Keep the center exact so a known optimum can be hit
    if (n % 2 == 1)
        g[n / 2] = center;
    return g;
}

}  // namespace

//---------------------------------------------------------------------------//
std::vector<IonYieldObservation> read_observations(std::istream& is)
{
    std::vector<IonYieldObservation> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos)
            line.erase(pos);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double vals[4];
        int count = 0;
        while (count < 4 && ss >> vals[count])
            ++count;
        if (count == 0 && ss.eof())
            continue;
        std::string rest;
        if (count != 4 || (ss >> rest))
        {
            // Allow a header row of names
            if (rows.empty() && count == 0)
                continue;
            throw ConfigError("observation line " + std::to_string(lineno)
                              + ": expected 4 numeric columns");
        }
        IonYieldObservation r{vals[0], vals[1], vals[2], vals[3]};
        if (!(r.power_w >= 0) || !(r.velocity_mps > 0) || !(r.yield >= 0)
            || !(r.yield_err >= 0))
            throw ConfigError("observation line " + std::to_string(lineno)
                              + ": values out of range");
        rows.push_back(r);
    }
    if (rows.empty())
        throw ConfigError("no observations found");
    return rows;
}

std::vector<IonYieldObservation>
read_observations(std::filesystem::path const& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open observation file " + path.string());
    return read_observations(is);
}

void write_observations(std::ostream& os,
                        std::span<IonYieldObservation const> rows)
{
    os << "power_W,velocity_mps,yield,yield_err\n";
    os << std::setprecision(9);
    for (auto const& r : rows)
        os << r.power_w << ',' << r.velocity_mps << ',' << r.yield << ','
           << r.yield_err << '\n';
}

//---------------------------------------------------------------------------//
std::vector<double>
model_yields(std::span<IonYieldObservation const> observations,
             HeatingStageConfig const& cfg,
             physics::CoolingIntegrator const& cooler,
             double initial_energy_ev,
             FitOptions const& opts)
{
    auto j = stage_integrals(observations, cfg, cfg.triplet_sigma_cm2, cooler,
                             initial_energy_ev, opts);
    return yields(j, cfg.ionization.arrhenius_prefactor);
}

HeatingFit fit_heating_params(std::span<IonYieldObservation const> observations,
                              HeatingStageConfig const& cfg,
                              physics::CoolingIntegrator const& cooler,
                              double initial_energy_ev,
                              FitOptions const& opts)
{
    if (observations.empty())
        throw ConfigError("fit needs at least one observation");
    if (opts.grid_points < 3 || opts.levels == 0 || opts.molecules == 0)
        throw ConfigError("fit needs >= 3 grid points, >= 1 level, "
                          ">= 1 molecule");
    if (!(opts.sigma_center_cm2 > 0) || !(opts.prefactor_center > 0))
        throw ConfigError("fit grid centers must be positive");

    std::map<double, Integrals> cache;
    HeatingFit best;
    best.objective = std::numeric_limits<double>::infinity();
    double s_center = opts.sigma_center_cm2;
    double a_center = opts.prefactor_center;
    double s_half = opts.sigma_half_span_decades;
    double a_half = opts.prefactor_half_span_decades;

    for (unsigned level = 0; level < opts.levels; ++level)
    {
        auto sg = log_grid(s_center, s_half, opts.grid_points);
        auto ag = log_grid(a_center, a_half, opts.grid_points);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (double s : sg)
        {
            auto it = cache.find(s);
            if (it == cache.end())
                it = cache
                         .emplace(s, stage_integrals(observations, cfg, s,
                                                     cooler, initial_energy_ev,
                                                     opts))
                         .first;
            for (double a : ag)
            {
                double f = objective(observations, yields(it->second, a));
                ++best.evaluations;
                lo = std::min(lo, f);
                hi = std::max(hi, f);
                if (f < best.objective)
                {
                    best.objective = f;
                    best.sigma_cm2 = s;
                    best.arrhenius_prefactor = a;
                }
            }
        }
        if (level == 0 && !(hi - lo > 1e-12 * (1 + std::abs(lo))))
            throw NumericalError(
                "fit objective is flat: data do not constrain the parameters");
        s_center = best.sigma_cm2;
        a_center = best.arrhenius_prefactor;
        s_half = 2 * s_half / (opts.grid_points - 1);
        a_half = 2 * a_half / (opts.grid_points - 1);
    }
    return best;
}

}  // namespace tlsim::heating
