// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <sstream>

#include <doctest.h>

#include "tlsim/error.hpp"
#include "tlsim/heating/fit.hpp"
#include "tlsim/heating/ionization.hpp"
#include "tlsim/heating/stage.hpp"
#include "tlsim/numerics/random.hpp"

using namespace tlsim;
using namespace tlsim::heating;

namespace
{
physics::EmissionModel const& model()
{
    static physics::EmissionModel const m(physics::default_cross_section(),
                                          physics::HeatCapacity{});
    return m;
}

physics::CoolingIntegrator const& cooler()
{
    static physics::CoolingIntegrator const c(model());
    return c;
}

double oven_energy()
{
    return physics::internal_energy(900, physics::HeatCapacity{});
}
}  // namespace

TEST_CASE("mean absorbed photons against a Riemann sum of the flux")
{
    LaserBeam beam{8.0, 40, 514.5};
    double v = 190;
    double b = 17;  // um
    double sigma = 2e-17;
    // n = int sigma I(x, b) / E_ph dx / v, Gaussian I = 2P/(pi w^2) e^{-2r^2/w^2}
    double w = beam.waist_um * 1e-6;
    double e_ph = constants::photon_energy_joule(beam.wavelength_nm);
    double sum = 0;
    int const n = 20000;
    double dx = 8 * w / n;
    for (int i = 0; i < n; ++i)
    {
        double x = -4 * w + (i + 0.5) * dx;
        double r2 = x * x + b * b * 1e-12;
        double intensity = 2 * beam.power_w / (std::numbers::pi * w * w)
                           * std::exp(-2 * r2 / (w * w));
        sum += sigma * 1e-4 * intensity / e_ph * dx / v;
    }
    CHECK(mean_absorbed_photons(beam, v, sigma, b)
          == doctest::Approx(sum).epsilon(1e-6));
    CHECK(mean_absorbed_photons(LaserBeam{0.0}, v, sigma) == 0);
    CHECK_THROWS_AS(mean_absorbed_photons(beam, 0, sigma), ConfigError);
}

TEST_CASE("photon counts are Poisson with the expected mean")
{
    auto cfg = HeatingStageConfig::uniform(4, 3.0);
    double v = 190;
    double mean = mean_absorbed_photons(cfg.beams[0], v, cfg.triplet_sigma_cm2);
    std::size_t const n = 4000;
    double sum = 0;
    double sum2 = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        auto rng = numerics::molecule_stream(7, i);
        auto traj = traverse_stage(v, cfg, oven_energy(), cooler(), rng);
        for (auto const& c : traj.crossings)
        {
            sum += c.photons;
            sum2 += double(c.photons) * c.photons;
        }
    }
    double m = sum / (4.0 * n);
    double var = sum2 / (4.0 * n) - m * m;
    double se = std::sqrt(mean / (4.0 * n));
    CHECK(std::abs(m - mean) < 4 * se);
    CHECK(var == doctest::Approx(mean).epsilon(0.1));
}

TEST_CASE("trajectory energy ledger")
{
    auto cfg = HeatingStageConfig::uniform(16, 8.0);
    auto rng = numerics::molecule_stream(3, 0);
    auto traj = traverse_stage(190, cfg, oven_energy(), cooler(), rng);
    REQUIRE(traj.crossings.size() == 16);
    REQUIRE(traj.samples.size() == 19);
    CHECK(traj.samples.front().time_s < traj.crossings.front().time_s);
    CHECK(traj.end_time() == 0.0);
    for (std::size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].time_s > traj.samples[i - 1].time_s);

    // Every jump is exactly n photons; every gap loses what cooling predicts
    double absorbed = 0;
    for (std::size_t i = 0; i < traj.crossings.size(); ++i)
    {
        auto const& c = traj.crossings[i];
        auto const& after = traj.samples[i + 1];
        CHECK(after.time_s == c.time_s);
        CHECK(after.energy_ev - c.energy_before_ev
              == doctest::Approx(c.photons * c.photon_ev));
        absorbed += c.photons * c.photon_ev;
        auto const& prev = traj.samples[i];
        double cooled = cooler()
                            .advance(prev.energy_ev, c.time_s - prev.time_s)
                            .energy_ev;
        CHECK(cooled == doctest::Approx(c.energy_before_ev).epsilon(1e-9));
    }
    double radiated = 0;
    for (std::size_t i = 0; i + 1 < traj.samples.size(); ++i)
    {
        double start = traj.samples[i].energy_ev;
        double end = (i < traj.crossings.size())
                         ? traj.crossings[i].energy_before_ev
                         : traj.samples[i + 1].energy_ev;
        radiated += start - end;
    }
    CHECK(traj.samples.back().energy_ev
          == doctest::Approx(oven_energy() + absorbed - radiated));
    CHECK(absorbed > 0);
}

TEST_CASE("interferometer extension and interpolation")
{
    auto cfg = HeatingStageConfig::uniform(16, 6.0);
    auto rng = numerics::molecule_stream(5, 1);
    auto traj = traverse_stage(190, cfg, oven_energy(), cooler(), rng);
    double depth = traj.ionization_depth;
    extend_through_interferometer(traj, 4e-3, 8, cooler(), cfg.ionization);
    CHECK(traj.end_time() == doctest::Approx(4e-3));
    CHECK(traj.ionization_depth >= depth);
    CHECK(traj.energy_at(2e-3) == doctest::Approx(traj.samples[traj.samples.size() - 5].energy_ev));
    CHECK_THROWS_AS(
        extend_through_interferometer(traj, 4e-3, 8, cooler(), cfg.ionization),
        ConfigError);
}

TEST_CASE("ionization survival")
{
    IonizationModel ion{5e9, 4.8};
    physics::HeatCapacity cv;
    double t = 3000;
    double e = physics::internal_energy(t, cv);
    EnergySample seg[] = {{0, e}, {1e-4, e}, {3e-4, e}};
    CHECK(ionization_survival(seg, cv, ion)
          == doctest::Approx(std::exp(-ion.rate(t) * 3e-4)));
    // Linear ramp against a midpoint sum
    double e1 = physics::internal_energy(4000, cv);
    EnergySample ramp[] = {{0, e}, {1e-4, e1}};
    double sum = 0;
    int const n = 100000;
    for (int i = 0; i < n; ++i)
    {
        double en = e + (i + 0.5) / n * (e1 - e);
        sum += ion.rate(en / cv.ev_per_kelvin()) * 1e-4 / n;
    }
    CHECK(ionization_survival(ramp, cv, ion)
          == doctest::Approx(std::exp(-sum)).epsilon(1e-8));
    CHECK(IonizationModel{}.rate(0) == 0);
}

TEST_CASE("detector efficiency rises with arrival energy")
{
    DetectorModel det;
    IonizationModel ion{5e9, 4.8};
    physics::HeatCapacity cv;
    double cold = det.efficiency(physics::internal_energy(900, cv), cv, ion);
    double hot = det.efficiency(physics::internal_energy(2500, cv), cv, ion);
    CHECK(cold > 0);
    CHECK(hot > cold);
    CHECK(hot <= 1);
}

TEST_CASE("ion yield grows with power")
{
    auto cfg = HeatingStageConfig::uniform(16, 0);
    cfg.ionization.activation_energy_ev = 4.8;
    VelocityDistribution vel{190, 0.15};
    auto y = d1_ion_yield(cfg, vel, {0, 4, 8, 12}, 200, 11, cooler(),
                          oven_energy());
    REQUIRE(y.size() == 4);
    CHECK(y[0].mean < 1e-6);
    for (std::size_t i = 1; i < y.size(); ++i)
        CHECK(y[i].mean > y[i - 1].mean);
}

TEST_CASE("velocity distribution")
{
    VelocityDistribution vel{190, 0.15};
    std::mt19937_64 rng(1);
    double sum = 0;
    for (int i = 0; i < 20000; ++i)
    {
        double v = vel.sample(rng);
        CHECK_FALSE(v < 0.2 * 190);
        sum += v;
    }
    CHECK(sum / 20000 == doctest::Approx(190).epsilon(0.005));
    VelocityDistribution sharp{100, 0};
    CHECK(sharp.sample(rng) == 100);
}

TEST_CASE("observation file parsing")
{
    std::istringstream good(
        "# power velocity yield err\n"
        "power_W,velocity_mps,yield,yield_err\n"
        "4, 190, 0.01, 0.001\n"
        "8 190 0.1 0.01  # trailing comment\n");
    auto rows = read_observations(good);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].yield == 0.1);
    std::istringstream bad("4 190 0.01\n");
    CHECK_THROWS_AS(read_observations(bad), ConfigError);

    std::stringstream round;
    write_observations(round, rows);
    auto back = read_observations(round);
    CHECK(back.size() == 2);
    CHECK(back[0].yield_err == rows[0].yield_err);
}

TEST_CASE("heating fit recovers generating parameters")
{
    auto cfg = HeatingStageConfig::uniform(16, 0);
    cfg.beam_offset_um = 31;
    cfg.ionization = {5e9, 4.8};
    FitOptions opts;
    opts.molecules = 60;
    opts.seed = 9;
    std::vector<IonYieldObservation> obs;
    for (double p : {6.0, 8.0, 10.0, 12.0})
        obs.push_back({p, 190, 0, 0});
    auto y = model_yields(obs, cfg, cooler(), oven_energy(), opts);
    for (std::size_t i = 0; i < obs.size(); ++i)
    {
        obs[i].yield = y[i];
        obs[i].yield_err = 0.05 * y[i];
    }

    SUBCASE("grid containing the truth has its minimum there")
    {
        auto o = opts;
        o.sigma_center_cm2 = 2e-17;
        o.prefactor_center = 5e9;
        o.sigma_half_span_decades = 0.4;
        o.prefactor_half_span_decades = 1.0;
        o.levels = 1;
        auto fit = fit_heating_params(obs, cfg, cooler(), oven_energy(), o);
        CHECK(fit.sigma_cm2 == 2e-17);
        CHECK(fit.arrhenius_prefactor == 5e9);
        CHECK(fit.objective == doctest::Approx(0).epsilon(1e-12));
    }
    SUBCASE("off-center start converges to within a factor two")
    {
        auto o = opts;
        o.sigma_center_cm2 = 1e-17;
        o.prefactor_center = 1e9;
        o.sigma_half_span_decades = 0.6;
        o.prefactor_half_span_decades = 1.5;
        o.levels = 3;
        auto fit = fit_heating_params(obs, cfg, cooler(), oven_energy(), o);
        CHECK(fit.sigma_cm2 / 2e-17 == doctest::Approx(1).epsilon(0.5));
        CHECK(fit.arrhenius_prefactor / 5e9 > 0.5);
        CHECK(fit.arrhenius_prefactor / 5e9 < 2);
    }
    SUBCASE("flat objective is reported")
    {
        // No yield anywhere on the grid: the data cannot pin anything down
        auto cold = cfg;
        cold.ionization.activation_energy_ev = 60;
        std::vector<IonYieldObservation> flat{{2, 190, 0.1, 0.01}};
        auto o = opts;
        o.molecules = 4;
        CHECK_THROWS_AS(
            fit_heating_params(flat, cold, cooler(), oven_energy(), o),
            NumericalError);
    }
}
