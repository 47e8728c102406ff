// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <doctest.h>

#include "tlsim/error.hpp"
#include "tlsim/heating/stage.hpp"
#include "tlsim/interferometer/coefficients.hpp"
#include "tlsim/interferometer/decoherence.hpp"
#include "tlsim/interferometer/visibility.hpp"
#include "tlsim/numerics/random.hpp"

using namespace tlsim;
using namespace tlsim::interferometer;
using std::numbers::pi;

namespace
{
physics::EmissionModel const& model()
{
    static physics::EmissionModel const m(physics::default_cross_section(),
                                          physics::HeatCapacity{});
    return m;
}

DecoherenceIntegrator const& integrator()
{
    static DecoherenceIntegrator const d(model(), InterferometerGeometry{});
    return d;
}

heating::TemperatureTrajectory constant_trajectory(double temp, double v)
{
    heating::TemperatureTrajectory t;
    t.velocity_mps = v;
    double e = physics::internal_energy(temp, physics::HeatCapacity{});
    double end = InterferometerGeometry{}.transit_time(v);
    t.samples = {{0, e}, {end, e}};
    return t;
}

//! Talbot-Lau sum over grating orders, truncated at |k| <= kmax
std::complex<double> double_sum(int l, double xi, double f, int kmax)
{
    std::complex<double> s = 0;
    for (int k = -kmax; k <= kmax; ++k)
        s += grating_coefficient(k + 2 * l, f) * grating_coefficient(k, f)
             * std::polar(1.0, -2 * pi * l * (k + l) * xi);
    return grating_coefficient(l, f) * grating_coefficient(-l, f) * s;
}
}  // namespace

TEST_CASE("de Broglie wavelength and Talbot length")
{
    InterferometerGeometry g;
    auto w = de_broglie_and_talbot(g, 190);
    CHECK(w.de_broglie_pm == doctest::Approx(2.4979).epsilon(1e-4));
    CHECK(w.talbot_length_m == doctest::Approx(0.39316).epsilon(1e-4));
    CHECK(g.transit_time(190) == doctest::Approx(4e-3));
    CHECK(path_separation_nm(g, 190, 0) == 0);
    CHECK(path_separation_nm(g, 190, g.transit_time(190)) == 0);
    CHECK(path_separation_nm(g, 190, 0.5 * g.transit_time(190))
          == doctest::Approx(991 * 0.38 / w.talbot_length_m));
    CHECK_THROWS_AS(de_broglie_and_talbot(g, 0), ConfigError);
}

TEST_CASE("base coefficients against the grating-order double sum")
{
    InterferometerGeometry g;
    double f = g.open_fraction();
    for (double v : {100.0, 150.0, 190.0, 230.0})
    {
        auto w = de_broglie_and_talbot(g, v);
        double xi = g.separation_m / w.talbot_length_m;
        auto c = base_coefficients(g, w.de_broglie_pm);
        CHECK(c.max_order() >= 8);
        for (int l = 0; l <= 4; ++l)
        {
            auto ref = double_sum(l, xi, f, 400000);
            CHECK(std::abs(c[l] - ref)
                  < 1e-4 * std::abs(c[0]) + 1e-4 * std::abs(ref));
        }
        for (int l = 1; l <= c.max_order(); ++l)
            CHECK(std::abs(c[-l] - std::conj(c[l])) < 1e-15);
    }
}

TEST_CASE("fringe pattern is periodic, non-negative and matches its scan")
{
    InterferometerGeometry g;
    for (double v : {100.0, 190.0})
    {
        auto c = base_coefficients(g, de_broglie_and_talbot(g, v).de_broglie_pm);
        std::vector<double> x;
        for (int k = 0; k < 64; ++k)
            x.push_back(g.period_nm * k / 64.0);
        auto w = fringe_pattern(c, x, g.period_nm);
        std::vector<double> shifted = x;
        for (auto& s : shifted)
            s += 3 * g.period_nm;
        auto w2 = fringe_pattern(c, shifted, g.period_nm);
        for (std::size_t i = 0; i < w.size(); ++i)
        {
            CHECK(w[i] >= -1e-12);
            CHECK(w2[i] == doctest::Approx(w[i]).epsilon(1e-9));
        }
        CHECK(scan_visibility(w) == doctest::Approx(c.visibility()).epsilon(1e-9));
    }
}

TEST_CASE("visibility override")
{
    InterferometerGeometry g;
    auto c = base_coefficients(g, de_broglie_and_talbot(g, 190).de_broglie_pm);
    auto o = with_visibility(c, 0.47);
    CHECK(o.visibility() == doctest::Approx(0.47));
    CHECK(o[0] == c[0]);
    CHECK(o[2] == c[2]);
    CHECK_THROWS_AS(with_visibility(c, -0.1), ConfigError);
}

TEST_CASE("decoherence function")
{
    auto mono = physics::SpectralDensity::monochromatic(600);
    CHECK(decoherence_function(0, mono) == doctest::Approx(1));
    CHECK(decoherence_function(150, mono)
          == doctest::Approx(std::sin(pi / 2) / (pi / 2)));
    CHECK(one_minus_sinc(1e-3) == doctest::Approx(1e-6 / 6).epsilon(1e-9));
    CHECK(one_minus_sinc(0.5) == doctest::Approx(1 - std::sin(0.5) / 0.5));

    SUBCASE("isotropic kick Monte Carlo")
    {
        auto d = physics::total_rate_and_density(
            3000, model().cross_section(), physics::HeatCapacity{});
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(-1, 1);
        for (double dr : {100.0, 400.0})
        {
            int const n = 200000;
            double s = 0;
            double s2 = 0;
            for (int i = 0; i < n; ++i)
            {
                double wl = physics::sample_photon(d, rng);
                double x = std::cos(2 * pi * dr * u(rng) / wl);
                s += x;
                s2 += x * x;
            }
            double m = s / n;
            double se = std::sqrt((s2 / n - m * m) / n);
            CHECK(std::abs(decoherence_function(dr, d) - m) < 4 * se);
        }
    }
    SUBCASE("empty spectrum")
    {
        CHECK_THROWS_AS(decoherence_function(10, physics::SpectralDensity{}),
                        DegenerateSpectrum);
    }
}

TEST_CASE("single emission")
{
    InterferometerGeometry g;
    auto c = base_coefficients(g, de_broglie_and_talbot(g, 190).de_broglie_pm);
    auto same = apply_single_emission(c, {0.0, 550}, 190, g);
    CHECK(same[1] == c[1]);
    double t = 0.5 * g.transit_time(190);
    auto hit = apply_single_emission(c, {t, 550}, 190, g);
    double s = path_separation_nm(g, 190, t);
    CHECK(std::abs(hit[1] - c[1] * sinc(2 * pi * s / 550)) < 1e-15);
    CHECK(std::abs(hit[2] - c[2] * sinc(4 * pi * s / 550)) < 1e-15);
    CHECK(hit[0] == c[0]);
}

TEST_CASE("closed form against a Riemann-sum oracle")
{
    double temp = 2800;
    double v = 170;
    auto traj = constant_trajectory(temp, v);
    auto ex = integrator().exponents(traj, 3);
    CHECK(ex.gamma[0] == 0);

    auto const& cs = model().cross_section();
    physics::HeatCapacity cv;
    InterferometerGeometry g;
    double t_end = g.transit_time(v);
    double lo = cs.support_lower_nm();
    double hi = cs.support_upper_nm();
    int const nl = 4000;
    int const nt = 4000;
    double dl = (hi - lo) / nl;
    std::vector<double> wl(nl), rate(nl);
    double vis = 0;
    double total = 0;
    for (int i = 0; i < nl; ++i)
    {
        wl[i] = lo + (i + 0.5) * dl;
        rate[i] = physics::spectral_rate_lambda(wl[i], temp, cs, cv) * dl;
        total += rate[i];
        if (wl[i] >= 400 && wl[i] <= 800)
            vis += rate[i];
    }
    double gamma[4] = {0, 0, 0, 0};
    double dt = t_end / nt;
    for (int k = 0; k < nt; ++k)
    {
        double s = path_separation_nm(g, v, (k + 0.5) * dt);
        for (int l = 1; l <= 3; ++l)
            for (int i = 0; i < nl; ++i)
                gamma[l] += dt * rate[i] * (1 - sinc(2 * pi * l * s / wl[i]));
    }
    for (int l = 1; l <= 3; ++l)
        CHECK(ex.gamma[l] == doctest::Approx(gamma[l]).epsilon(1e-4));
    CHECK(ex.total_photons == doctest::Approx(total * t_end).epsilon(1e-4));
    CHECK(ex.visible_photons == doctest::Approx(vis * t_end).epsilon(1e-3));
}

TEST_CASE("closed form against Poisson emission Monte Carlo")
{
    double temp = 2300;
    double v = 190;
    auto traj = constant_trajectory(temp, v);
    auto ex = integrator().exponents(traj, 1);
    REQUIRE(ex.gamma[1] > 0.3);
    REQUIRE(ex.gamma[1] < 3);
    auto d = physics::total_rate_and_density(temp, model().cross_section(),
                                             physics::HeatCapacity{});
    InterferometerGeometry g;
    double t_end = g.transit_time(v);
    std::mt19937_64 rng(5);
    std::poisson_distribution<int> count(d.total_rate() * t_end);
    std::uniform_real_distribution<double> u(0, t_end);
    int const n = 100000;
    double s = 0;
    double s2 = 0;
    for (int i = 0; i < n; ++i)
    {
        double prod = 1;
        for (int k = count(rng); k > 0; --k)
        {
            double wl = physics::sample_photon(d, rng);
            prod *= sinc(2 * pi * path_separation_nm(g, v, u(rng)) / wl);
        }
        s += prod;
        s2 += prod * prod;
    }
    double m = s / n;
    double se = std::sqrt((s2 / n - m * m) / n);
    CHECK(std::abs(std::exp(-ex.gamma[1]) - m) < 4 * se);
}

TEST_CASE("closed form and master equation agree on a cooling trajectory")
{
    physics::CoolingIntegrator cooler(model());
    auto cfg = heating::HeatingStageConfig::uniform(16, 7.0);
    auto rng = numerics::molecule_stream(2, 3);
    auto traj = heating::traverse_stage(
        190, cfg, physics::internal_energy(900, physics::HeatCapacity{}),
        cooler, rng);
    heating::extend_through_interferometer(traj, 4e-3, 16, cooler,
                                           cfg.ionization);
    InterferometerGeometry g;
    auto base = base_coefficients(g, de_broglie_and_talbot(g, 190).de_broglie_pm)
                    .resized(3);
    auto closed = closed_form_visibility(traj, base, integrator());
    auto ode = evolve_visibility_ode(traj, base, integrator());
    CHECK(closed.visibility < closed.baseline);
    CHECK(ode.visibility == doctest::Approx(closed.visibility).epsilon(1e-6));
    auto c = integrator().decohere(base, traj);
    auto o = integrator().evolve_ode(base, traj);
    for (int l = -3; l <= 3; ++l)
        CHECK(std::abs(c[l] - o[l]) < 1e-6 * std::abs(base[0]));
}

TEST_CASE("trajectory must cover the interferometer")
{
    auto traj = constant_trajectory(2000, 190);
    traj.samples.back().time_s = 1e-3;
    auto base = FringeCoefficients(1);
    base[0] = 1;
    CHECK_THROWS_AS(integrator().exponents(traj, 1), ConfigError);
}

TEST_CASE("ensemble averaging")
{
    InterferometerGeometry g;
    auto base = with_visibility(
        base_coefficients(g, de_broglie_and_talbot(g, 190).de_broglie_pm), 0.47)
                    .resized(1);
    DetectionOptions det;
    auto one = analyse_trajectory(constant_trajectory(3000, 190), base,
                                  integrator(), det);
    std::vector<TrajectoryFringe> single{one};
    auto r = ensemble_visibility(single);
    CHECK(r.visibility == doctest::Approx(one.coefficients.visibility()));
    CHECK(r.std_error == 0);

    auto cold = analyse_trajectory(constant_trajectory(1000, 190), base,
                                   integrator(), det);
    std::vector<TrajectoryFringe> pair{one, cold};
    pair[0].weight = 1;
    pair[1].weight = 3;
    auto rp = ensemble_visibility(pair);
    auto c1 = 0.25 * one.coefficients[1] + 0.75 * cold.coefficients[1];
    auto c0 = 0.25 * one.coefficients[0] + 0.75 * cold.coefficients[0];
    CHECK(rp.visibility == doctest::Approx(2 * std::abs(c1 / c0)));
    CHECK(rp.mean_weight == doctest::Approx(2));
    CHECK(rp.max_peak_temperature_k == doctest::Approx(3000));
}
