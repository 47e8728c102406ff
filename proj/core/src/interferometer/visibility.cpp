// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/interferometer/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "tlsim/error.hpp"
#include "tlsim/interferometer/decoherence.hpp"
#include "tlsim/numerics/quadrature.hpp"

namespace tlsim::interferometer
{
namespace
{
using std::numbers::pi;
using heating::TemperatureTrajectory;

//! Angle 2 pi s(t) / lambda per nm of wavelength, for unit order
struct SeparationPhase
{
    double period_nm;
    double separation_m;
    double velocity;
    double inv_talbot;

    SeparationPhase(InterferometerGeometry const& g, double v)
        : period_nm(g.period_nm), separation_m(g.separation_m), velocity(v)
    {
        inv_talbot = 1.0 / de_broglie_and_talbot(g, v).talbot_length_m;
    }

    double operator()(double t) const
    {
        double z = separation_m - std::abs(velocity * t - separation_m);
        return 2 * pi * period_nm * std::max(z, 0.0) * inv_talbot;
    }
};

}  // namespace

DecoherenceIntegrator::DecoherenceIntegrator(
    physics::EmissionModel const& model,
    InterferometerGeometry geometry,
    VisibilityOptions opts)
    : model_(&model), geometry_(geometry), opts_(opts)
{
    geometry_.validate();
    if (opts_.time_panels_per_half == 0)
        throw ConfigError("need at least one time panel");
    for (auto const& n : model.nodes())
        visible_.push_back(n.wavelength_nm >= opts_.visible_lower_nm
                           && n.wavelength_nm <= opts_.visible_upper_nm);
}

void DecoherenceIntegrator::check_span(TemperatureTrajectory const& traj) const
{
    if (traj.samples.empty() || !(traj.velocity_mps > 0))
        throw ConfigError("trajectory needs samples and a positive velocity");
    double t_end = geometry_.transit_time(traj.velocity_mps);
    if (traj.start_time() > 0 || traj.end_time() < t_end * (1 - 1e-12))
        throw ConfigError("trajectory does not span the interferometer");
}

std::vector<double>
DecoherenceIntegrator::time_breakpoints(TemperatureTrajectory const& traj) const
{
    double t_end = geometry_.transit_time(traj.velocity_mps);
    unsigned n = 2 * opts_.time_panels_per_half;
    std::vector<double> b;
    b.reserve(n + traj.samples.size() + 1);
    for (unsigned i = 0; i <= n; ++i)
        b.push_back(t_end * i / n);
    for (auto const& s : traj.samples)
    {
        if (s.time_s > 0 && s.time_s < t_end)
            b.push_back(s.time_s);
    }
    std::sort(b.begin(), b.end());
    double eps = 1e-12 * t_end;
    b.erase(std::unique(b.begin(), b.end(),
                        [eps](double x, double y) { return y - x < eps; }),
            b.end());
    b.back() = t_end;
    return b;
}

DecoherenceExponents
DecoherenceIntegrator::exponents(TemperatureTrajectory const& traj,
                                 int max_order) const
{
    check_span(traj);
    if (max_order < 0)
        throw ConfigError("max order must be >= 0");
    auto breaks = time_breakpoints(traj);
    auto const& rule = numerics::gauss_legendre(opts_.time_nodes);
    auto nodes = model_->nodes();
    double ev_per_k = model_->heat_capacity().ev_per_kelvin();
    SeparationPhase phase(geometry_, traj.velocity_mps);

    DecoherenceExponents out;
    out.gamma.assign(max_order + 1, 0.0);
    std::vector<double> rates(nodes.size());
    std::vector<double> acc(max_order + 1);

    for (std::size_t p = 0; p + 1 < breaks.size(); ++p)
    {
        double half = 0.5 * (breaks[p + 1] - breaks[p]);
        double mid = 0.5 * (breaks[p + 1] + breaks[p]);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
        {
            double t = mid + half * rule.nodes[k];
            double wt = half * rule.weights[k];
            double temp = traj.energy_at(t) / ev_per_k;
            model_->node_rates(temp, rates);
            double theta_nm = phase(t);
            std::fill(acc.begin(), acc.end(), 0.0);
            double total = 0;
            double vis = 0;
            for (std::size_t i = 0; i < nodes.size(); ++i)
            {
                double r = rates[i];
                total += r;
                if (visible_[i])
                    vis += r;
                if (max_order == 0)
                    continue;
                double theta = theta_nm / nodes[i].wavelength_nm;
                double s_prev = 0;
                double s_cur = std::sin(theta);
                double two_cos = 2 * std::cos(theta);
                for (int l = 1; l <= max_order; ++l)
                {
                    double x = l * theta;
                    acc[l] += r * (x < 1e-2 ? one_minus_sinc(x) : 1 - s_cur / x);
                    double s_next = two_cos * s_cur - s_prev;
                    s_prev = s_cur;
                    s_cur = s_next;
                }
            }
            out.total_photons += wt * total;
            out.visible_photons += wt * vis;
            for (int l = 1; l <= max_order; ++l)
                out.gamma[l] += wt * acc[l];
        }
    }
    return out;
}

FringeCoefficients
DecoherenceIntegrator::decohere(FringeCoefficients const& base,
                                TemperatureTrajectory const& traj,
                                DecoherenceExponents* info) const
{
    auto ex = exponents(traj, base.max_order());
    FringeCoefficients c = base;
    for (int l = -base.max_order(); l <= base.max_order(); ++l)
        c[l] *= std::exp(-ex.gamma[std::abs(l)]);
    if (info)
        *info = std::move(ex);
    return c;
}

FringeCoefficients
DecoherenceIntegrator::evolve_ode(FringeCoefficients const& base,
                                  TemperatureTrajectory const& traj) const
{
    namespace ode = boost::numeric::odeint;
    using State = std::vector<double>;
    check_span(traj);
    int m = base.max_order();
    auto nodes = model_->nodes();
    double ev_per_k = model_->heat_capacity().ev_per_kelvin();
    SeparationPhase phase(geometry_, traj.velocity_mps);
    std::vector<double> rates(nodes.size());

    State x(2 * (2 * m + 1));
    for (int l = -m; l <= m; ++l)
    {
        x[2 * (l + m)] = base[l].real();
        x[2 * (l + m) + 1] = base[l].imag();
    }
    std::vector<double> growth(m + 1);
    auto rhs = [&](State const& y, State& dydt, double t) {
        model_->node_rates(traj.energy_at(t) / ev_per_k, rates);
        double theta_nm = phase(t);
        double total = 0;
        for (double r : rates)
            total += r;
        for (int l = 0; l <= m; ++l)
        {
            double eta_sum = 0;
            for (std::size_t i = 0; i < nodes.size(); ++i)
                eta_sum += rates[i] * sinc(l * theta_nm / nodes[i].wavelength_nm);
            double eta = total > 0 ? eta_sum / total : 1.0;
            growth[l] = total * (eta - 1);
        }
        for (int l = -m; l <= m; ++l)
        {
            double g = growth[std::abs(l)];
            std::size_t j = 2 * (l + m);
            dydt[j] = g * y[j];
            dydt[j + 1] = g * y[j + 1];
        }
    };

    double scale = std::abs(base[0]);
    auto stepper = ode::make_controlled(
        opts_.ode_rel_tol * 1e-4 * (scale > 0 ? scale : 1.0),
        opts_.ode_rel_tol,
        ode::runge_kutta_dopri5<State>{});
    auto breaks = time_breakpoints(traj);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p)
    {
        double dt0 = 0.1 * (breaks[p + 1] - breaks[p]);
        ode::integrate_adaptive(stepper, rhs, x, breaks[p], breaks[p + 1], dt0);
    }
    FringeCoefficients c(m);
    for (int l = -m; l <= m; ++l)
        c[l] = {x[2 * (l + m)], x[2 * (l + m) + 1]};
    return c;
}

VisibilityResult
closed_form_visibility(TemperatureTrajectory const& traj,
                       FringeCoefficients const& base,
                       DecoherenceIntegrator const& integrator)
{
    DecoherenceExponents info;
    auto c = integrator.decohere(base, traj, &info);
    return {c.visibility(), base.visibility(), info.visible_photons,
            info.total_photons};
}

VisibilityResult
evolve_visibility_ode(TemperatureTrajectory const& traj,
                      FringeCoefficients const& base,
                      DecoherenceIntegrator const& integrator)
{
    auto c = integrator.evolve_ode(base, traj);
    auto info = integrator.exponents(traj, 0);
    return {c.visibility(), base.visibility(), info.visible_photons,
            info.total_photons};
}

//---------------------------------------------------------------------------//
TrajectoryFringe analyse_trajectory(TemperatureTrajectory const& traj,
                                    FringeCoefficients const& base,
                                    DecoherenceIntegrator const& integrator,
                                    DetectionOptions const& detection)
{
    auto cv = integrator.model().heat_capacity();
    double t_end = integrator.geometry().transit_time(traj.velocity_mps);
    DecoherenceExponents info;
    TrajectoryFringe r;
    r.coefficients = integrator.decohere(base, traj, &info);
    r.visible_photons = info.visible_photons;
    r.entry_temperature_k = traj.energy_at(0) / cv.ev_per_kelvin();
    r.peak_temperature_k = traj.peak_energy_ev() / cv.ev_per_kelvin();
    r.weight = 1;
    if (detection.enabled)
    {
        r.weight = traj.survival_probability()
                   * detection.detector.efficiency(
                       traj.energy_at(t_end), cv, detection.ionization);
    }
    return r;
}

namespace
{
double block_visibility(std::span<TrajectoryFringe const> m,
                        std::size_t skip_lo,
                        std::size_t skip_hi)
{
    std::complex<double> c0 = 0;
    std::complex<double> c1 = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
    {
        if (i >= skip_lo && i < skip_hi)
            continue;
        c0 += m[i].weight * m[i].coefficients[0];
        c1 += m[i].weight * m[i].coefficients[1];
    }
    return std::abs(c0) > 0 ? 2 * std::abs(c1) / std::abs(c0) : 0.0;
}
}  // namespace

EnsembleResult ensemble_visibility(std::span<TrajectoryFringe const> members,
                                   unsigned jackknife_blocks)
{
    if (members.empty())
        throw ConfigError("empty ensemble");
    int m = members.front().coefficients.max_order();
    if (m < 1)
        throw ConfigError("ensemble needs first-order coefficients");

    EnsembleResult r;
    r.size = members.size();
    r.mean = FringeCoefficients(m);
    double wsum = 0;
    for (auto const& t : members)
    {
        auto c = t.coefficients;
        c *= t.weight;
        r.mean += c;
        wsum += t.weight;
        r.mean_visible_photons += t.weight * t.visible_photons;
        r.mean_entry_temperature_k += t.entry_temperature_k;
        r.mean_peak_temperature_k += t.peak_temperature_k;
        r.max_peak_temperature_k
            = std::max(r.max_peak_temperature_k, t.peak_temperature_k);
    }
    double n = static_cast<double>(members.size());
    r.mean_weight = wsum / n;
    r.mean_entry_temperature_k /= n;
    r.mean_peak_temperature_k /= n;
    if (wsum > 0)
    {
        r.mean *= 1.0 / wsum;
        r.mean_visible_photons /= wsum;
    }
    r.visibility = r.mean.visibility();

    std::size_t blocks = std::min<std::size_t>(jackknife_blocks, members.size());
    if (blocks >= 2)
    {
        std::vector<double> v(blocks);
        double mean = 0;
        for (std::size_t k = 0; k < blocks; ++k)
        {
            std::size_t lo = k * members.size() / blocks;
            std::size_t hi = (k + 1) * members.size() / blocks;
            v[k] = block_visibility(members, lo, hi);
            mean += v[k];
        }
        mean /= blocks;
        double var = 0;
        for (double x : v)
            var += (x - mean) * (x - mean);
        r.std_error = std::sqrt(var * (blocks - 1) / blocks);
    }
    return r;
}

}  // namespace tlsim::interferometer
