// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/heating/stage.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tlsim/error.hpp"
#include "tlsim/numerics/parallel.hpp"
#include "tlsim/numerics/random.hpp"
#include "tlsim/physics/constants.hpp"

namespace tlsim::heating
{
namespace k = tlsim::constants;

HeatingStageConfig
HeatingStageConfig::uniform(std::size_t beam_count, double power_w)
{
    HeatingStageConfig cfg;
    cfg.beams.assign(beam_count, LaserBeam{power_w});
    return cfg;
}

void HeatingStageConfig::set_power(double power_w)
{
    for (auto& b : beams)
        b.power_w = power_w;
}

void HeatingStageConfig::validate() const
{
    for (auto const& b : beams)
    {
        if (!(b.power_w >= 0) || !(b.waist_um > 0) || !(b.wavelength_nm > 0))
            throw ConfigError("laser beams need power >= 0, waist > 0 and "
                              "wavelength > 0");
    }
    if (!(beam_spacing_mm > 0))
        throw ConfigError("beam spacing must be positive");
    if (!(drift_to_interferometer_cm * 10 > 0.5 * beam_spacing_mm))
        throw ConfigError("drift must exceed half a beam spacing");
    if (!(triplet_sigma_cm2 >= 0))
        throw ConfigError("absorption cross section must be >= 0");
    if (!(height_spread_um >= 0))
        throw ConfigError("height spread must be >= 0");
    ionization.validate();
}

//---------------------------------------------------------------------------//
double TemperatureTrajectory::survival_probability() const
{
    return std::exp(-ionization_depth);
}

double TemperatureTrajectory::energy_at(double time_s) const
{
    if (samples.empty())
        throw ConfigError("empty trajectory");
    if (time_s <= samples.front().time_s)
        return samples.front().energy_ev;
    if (time_s >= samples.back().time_s)
        return samples.back().energy_ev;
    auto it = std::upper_bound(
        samples.begin(), samples.end(), time_s,
        [](double t, EnergySample const& s) { return t < s.time_s; });
    auto const& b = *it;
    auto const& a = *(it - 1);
    double f = (time_s - a.time_s) / (b.time_s - a.time_s);
    return a.energy_ev + f * (b.energy_ev - a.energy_ev);
}

double TemperatureTrajectory::peak_energy_ev() const
{
    double peak = 0;
    for (auto const& s : samples)
        peak = std::max(peak, s.energy_ev);
    return peak;
}

void VelocityDistribution::validate() const
{
    if (!(mean_mps > 0) || !(relative_spread >= 0))
        throw ConfigError("velocity distribution needs mean > 0, spread >= 0");
}

//---------------------------------------------------------------------------//
double mean_absorbed_photons(LaserBeam const& beam,
                             double velocity_mps,
                             double sigma_cm2,
                             double impact_um)
{
    if (!(velocity_mps > 0))
        throw ConfigError("velocity must be positive");
    double w = beam.waist_um * 1e-6;
    double b = impact_um * 1e-6;
    double e_ph = k::photon_energy_joule(beam.wavelength_nm);
    return sigma_cm2 * 1e-4 * beam.power_w
           * std::sqrt(2 / std::numbers::pi) * std::exp(-2 * b * b / (w * w))
           / (w * velocity_mps * e_ph);
}

TemperatureTrajectory traverse_stage(double velocity_mps,
                                     HeatingStageConfig const& cfg,
                                     double initial_energy_ev,
                                     physics::CoolingIntegrator const& cooler,
                                     std::mt19937_64& rng)
{
    cfg.validate();
    if (!(velocity_mps > 0))
        throw ConfigError("velocity must be positive");

    auto const& ion = cfg.ionization;
    physics::TemperatureRate rate = [&ion](double t) { return ion.rate(t); };

    // Draw order per molecule: threshold, height, beams
    std::exponential_distribution<double> exp1(1.0);
    double threshold = exp1(rng);
    double height = 0;
    if (cfg.height_spread_um > 0)
    {
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        height = u(rng) * cfg.height_spread_um;
    }
    double impact = height - cfg.beam_offset_um;

    TemperatureTrajectory traj;
    traj.velocity_mps = velocity_mps;
    double gap = cfg.beam_spacing_mm * 1e-3 / velocity_mps;
    double drift = cfg.drift_to_interferometer_cm * 1e-2 / velocity_mps;
    std::size_t nb = cfg.beams.size();
    double t_first = -(drift + (nb > 0 ? (nb - 1) * gap : 0.0));
    double t = t_first - 0.5 * gap;
    double e = initial_energy_ev;
    double depth = 0;
    traj.samples.push_back({t, e});

    for (std::size_t i = 0; i < nb; ++i)
    {
        double tb = t_first + i * gap;
        auto seg = cooler.advance(e, tb - t, rate);
        e = seg.energy_ev;
        depth += seg.rate_integral;
        auto const& beam = cfg.beams[i];
        double mean = mean_absorbed_photons(
            beam, velocity_mps, cfg.triplet_sigma_cm2, impact);
        unsigned n = 0;
        if (mean > 0)
            n = std::poisson_distribution<unsigned>(mean)(rng);
        double e_ph = k::photon_energy_ev(beam.wavelength_nm);
        traj.crossings.push_back({tb, e, n, e_ph});
        e += n * e_ph;
        traj.samples.push_back({tb, e});
        t = tb;
    }

    double t_exit = (nb > 0 ? t + 0.5 * gap : t_first + 0.5 * gap);
    auto seg = cooler.advance(e, t_exit - t, rate);
    e = seg.energy_ev;
    depth += seg.rate_integral;
    traj.samples.push_back({t_exit, e});
    traj.stage_ionization_depth = depth;
    traj.stage_exit_time_s = t_exit;

    seg = cooler.advance(e, -t_exit, rate);
    depth += seg.rate_integral;
    traj.samples.push_back({0.0, seg.energy_ev});
    traj.ionization_depth = depth;

    traj.ionized_in_stage = traj.stage_ionization_depth > threshold;
    traj.survived = traj.ionization_depth <= threshold;
    return traj;
}

void extend_through_interferometer(TemperatureTrajectory& trajectory,
                                   double duration_s,
                                   unsigned panels,
                                   physics::CoolingIntegrator const& cooler,
                                   IonizationModel const& ionization)
{
    if (trajectory.samples.empty() || trajectory.end_time() != 0.0)
        throw ConfigError("trajectory must end at the first grating");
    if (!(duration_s > 0) || panels == 0)
        throw ConfigError("interferometer duration and panels must be > 0");
    physics::TemperatureRate rate = [&ionization](double t) {
        return ionization.rate(t);
    };
    double e = trajectory.samples.back().energy_ev;
    double t = 0;
    for (unsigned i = 1; i <= panels; ++i)
    {
        double tn = duration_s * i / panels;
        auto seg = cooler.advance(e, tn - t, rate);
        e = seg.energy_ev;
        trajectory.ionization_depth += seg.rate_integral;
        trajectory.samples.push_back({tn, e});
        t = tn;
    }
}

std::vector<YieldEstimate>
d1_ion_yield(HeatingStageConfig cfg,
             VelocityDistribution const& velocities,
             std::vector<double> const& powers_w,
             std::size_t n,
             std::uint64_t seed,
             physics::CoolingIntegrator const& cooler,
             double initial_energy_ev,
             unsigned threads)
{
    if (n < 2)
        throw ConfigError("yield estimate needs at least two molecules");
    velocities.validate();
    std::vector<YieldEstimate> result;
    std::vector<double> frac(n);
    for (double p : powers_w)
    {
        cfg.set_power(p);
        numerics::parallel_for(n, threads, [&](std::size_t i) {
            auto rng = numerics::molecule_stream(seed, i);
            double v = velocities.sample(rng);
            auto traj = traverse_stage(v, cfg, initial_energy_ev, cooler, rng);
            frac[i] = -std::expm1(-traj.stage_ionization_depth);
        });
        double mean = 0;
        for (double f : frac)
            mean += f;
        mean /= n;
        double var = 0;
        for (double f : frac)
            var += (f - mean) * (f - mean);
        var /= (n - 1);
        result.push_back({p, mean, std::sqrt(var / n)});
    }
    return result;
}

}  // namespace tlsim::heating
