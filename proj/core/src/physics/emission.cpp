// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/physics/emission.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "tlsim/error.hpp"
#include "tlsim/numerics/quadrature.hpp"
#include "tlsim/physics/constants.hpp"

namespace tlsim::physics
{
namespace
{
using std::numbers::pi;
namespace k = constants;

//! Mode density times sigma per unit wavelength (per nm), no occupation.
double mode_factor_lambda(double wavelength_nm, double sigma)
{
    double omega = k::wavelength_to_omega(wavelength_nm);
    double lambda_m = wavelength_nm * 1e-9;
    double jacobian = 2 * pi * k::c_light / (lambda_m * lambda_m) * 1e-9;
    return omega * omega / (pi * pi * k::c_light * k::c_light) * sigma
           * jacobian;
}

double occupation_factor(double photon_ev, double temperature_k, double cv_kb)
{
    double x = photon_ev / (k::k_boltzmann_ev * temperature_k);
    return std::exp(-x - x * x / (2 * cv_kb));
}

}  // namespace

//---------------------------------------------------------------------------//
double spectral_rate_omega(double omega,
                           double temperature_k,
                           CrossSectionTable const& cs,
                           HeatCapacity cv)
{
    if (!(temperature_k > 0) || !(omega > 0))
        return 0;
    double sigma = cs.sigma(k::omega_to_wavelength(omega));
    if (sigma == 0)
        return 0;
    double x = k::hbar * omega / (k::k_boltzmann * temperature_k);
    return omega * omega / (pi * pi * k::c_light * k::c_light) * sigma
           * std::exp(-x - x * x / (2 * cv.in_kb));
}

double spectral_rate_lambda(double wavelength_nm,
                            double temperature_k,
                            CrossSectionTable const& cs,
                            HeatCapacity cv)
{
    if (!(wavelength_nm > 0))
        return 0;
    double omega = k::wavelength_to_omega(wavelength_nm);
    double lambda_m = wavelength_nm * 1e-9;
    return spectral_rate_omega(omega, temperature_k, cs, cv) * 2 * pi
           * k::c_light / (lambda_m * lambda_m) * 1e-9;
}

double boltzmann_rate_lambda(double wavelength_nm,
                             double temperature_k,
                             CrossSectionTable const& cs)
{
    if (!(temperature_k > 0) || !(wavelength_nm > 0))
        return 0;
    double x = k::photon_energy_ev(wavelength_nm)
               / (k::k_boltzmann_ev * temperature_k);
    return mode_factor_lambda(wavelength_nm, cs.sigma(wavelength_nm))
           * std::exp(-x);
}

//---------------------------------------------------------------------------//
SpectralDensity::SpectralDensity(std::vector<double> edges_nm,
                                 std::vector<double> probability,
                                 double total_rate)
    : edges_(std::move(edges_nm))
    , probability_(std::move(probability))
    , total_rate_(total_rate)
{
    if (probability_.empty())
    {
        edges_.clear();
        total_rate_ = 0;
        return;
    }
    if (edges_.size() != probability_.size() + 1)
        throw ConfigError("spectral density needs one more edge than bins");
    for (std::size_t i = 0; i + 1 < edges_.size(); ++i)
    {
        if (!(edges_[i + 1] >= edges_[i]) || !(edges_[i] > 0))
            throw ConfigError("spectral density edges must be positive and "
                              "non-decreasing");
    }
    cdf_.resize(edges_.size());
    cdf_[0] = 0;
    for (std::size_t i = 0; i < probability_.size(); ++i)
    {
        if (!(probability_[i] >= 0))
            throw ConfigError("spectral density probabilities must be >= 0");
        cdf_[i + 1] = cdf_[i] + probability_[i];
    }
    if (!(total_rate_ >= 0))
        throw ConfigError("total emission rate must be >= 0");
}

SpectralDensity
SpectralDensity::monochromatic(double wavelength_nm, double total_rate)
{
    return SpectralDensity(
        {wavelength_nm, wavelength_nm}, {1.0}, total_rate);
}

double SpectralDensity::norm() const
{
    return cdf_.empty() ? 0.0 : cdf_.back();
}

double SpectralDensity::mean_photon_energy_ev() const
{
    double sum = 0;
    for (std::size_t i = 0; i < probability_.size(); ++i)
    {
        double a = edges_[i];
        double b = edges_[i + 1];
        double mean_inv = (b > a) ? std::log(b / a) / (b - a) : 1.0 / a;
        sum += probability_[i] * k::hc_ev_nm * mean_inv;
    }
    return sum / norm();
}

double SpectralDensity::inverse_cdf(double u) const
{
    if (empty())
        throw DegenerateSpectrum("cannot sample from an empty spectrum");
    double target = std::clamp(u, 0.0, 1.0) * cdf_.back();
    auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), target);
    if (it == cdf_.end())
        --it;
    auto bin = static_cast<std::size_t>(it - cdf_.begin()) - 1;
    while (probability_[bin] == 0 && bin > 0)
        --bin;
    double frac = probability_[bin] > 0
                      ? (target - cdf_[bin]) / probability_[bin]
                      : 0.0;
    frac = std::clamp(frac, 0.0, 1.0);
    return edges_[bin] + frac * (edges_[bin + 1] - edges_[bin]);
}

//---------------------------------------------------------------------------//
SpectralDensity total_rate_and_density(double temperature_k,
                                       CrossSectionTable const& cs,
                                       HeatCapacity cv,
                                       SpectralQuadrature const& q)
{
    if (!(temperature_k > 0))
        return {};
    auto breaks = cs.breakpoints_nm();
    auto rate = [&](double wl) {
        return spectral_rate_lambda(wl, temperature_k, cs, cv);
    };
    double total = numerics::integrate_panels(
        rate, breaks, q.rel_tol, q.max_depth);
    if (!(total > 0))
        return {};

    unsigned const nsub = std::max(1u, q.bins_per_interval);
    std::vector<double> edges;
    std::vector<double> prob;
    edges.reserve((breaks.size() - 1) * nsub + 1);
    edges.push_back(breaks.front());
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double a = breaks[i];
        double h = (breaks[i + 1] - a) / nsub;
        for (unsigned j = 0; j < nsub; ++j)
        {
            double lo = a + j * h;
            double hi = (j + 1 == nsub) ? breaks[i + 1] : a + (j + 1) * h;
            double bin[] = {lo, hi};
            prob.push_back(numerics::gauss_panels(rate, bin, 10) / total);
            edges.push_back(hi);
        }
    }
    return SpectralDensity(std::move(edges), std::move(prob), total);
}

double band_rate(double temperature_k,
                 double lower_nm,
                 double upper_nm,
                 CrossSectionTable const& cs,
                 HeatCapacity cv,
                 SpectralQuadrature const& q)
{
    if (!(temperature_k > 0) || !(upper_nm > lower_nm))
        return 0;
    std::vector<double> breaks{lower_nm};
    for (double b : cs.breakpoints_nm())
    {
        if (b > lower_nm && b < upper_nm)
            breaks.push_back(b);
    }
    breaks.push_back(upper_nm);
    return numerics::integrate_panels(
        [&](double wl) {
            return spectral_rate_lambda(wl, temperature_k, cs, cv);
        },
        breaks,
        q.rel_tol,
        q.max_depth);
}

double radiated_power(double temperature_k,
                      CrossSectionTable const& cs,
                      HeatCapacity cv,
                      SpectralQuadrature const& q)
{
    if (!(temperature_k > 0))
        return 0;
    auto breaks = cs.breakpoints_nm();
    double ev_per_s = numerics::integrate_panels(
        [&](double wl) {
            return k::photon_energy_ev(wl)
                   * spectral_rate_lambda(wl, temperature_k, cs, cv);
        },
        breaks,
        q.rel_tol,
        q.max_depth);
    return ev_per_s * k::e_charge;
}

//---------------------------------------------------------------------------//
struct EmissionModel::PowerTable
{
    double t_min;
    double t_max;
    boost::math::interpolators::cardinal_cubic_b_spline<double> log_power;
};

EmissionModel::EmissionModel(CrossSectionTable cs, HeatCapacity cv)
    : EmissionModel(std::move(cs), cv, Options{})
{
}

EmissionModel::EmissionModel(CrossSectionTable cs, HeatCapacity cv, Options opts)
    : cs_(std::move(cs)), cv_(cv), opts_(std::move(opts))
{
    if (!(cv_.in_kb > 0))
        throw ConfigError("heat capacity must be positive");

    auto breaks = cs_.breakpoints_nm();
    double lo = cs_.support_lower_nm();
    double hi = cs_.support_upper_nm();
    for (double b : opts_.extra_breakpoints_nm)
    {
        if (b > lo && b < hi)
            breaks.push_back(b);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto const& rule = numerics::gauss_legendre(opts_.nodes_per_panel);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double half = 0.5 * (breaks[i + 1] - breaks[i]);
        double mid = 0.5 * (breaks[i + 1] + breaks[i]);
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        {
            double wl = mid + half * rule.nodes[j];
            double w = half * rule.weights[j]
                       * mode_factor_lambda(wl, cs_.sigma(wl));
            if (w > 0)
                nodes_.push_back({wl, k::photon_energy_ev(wl), w});
        }
    }

    // Radiated power table from a 10-point rule on the same panels
    auto const& fine = numerics::gauss_legendre(10);
    std::vector<Node> fine_nodes;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    {
        double half = 0.5 * (breaks[i + 1] - breaks[i]);
        double mid = 0.5 * (breaks[i + 1] + breaks[i]);
        for (std::size_t j = 0; j < fine.nodes.size(); ++j)
        {
            double wl = mid + half * fine.nodes[j];
            double w = half * fine.weights[j]
                       * mode_factor_lambda(wl, cs_.sigma(wl));
            if (w > 0)
                fine_nodes.push_back({wl, k::photon_energy_ev(wl), w});
        }
    }
    fine_nodes_ = std::move(fine_nodes);

    if (fine_nodes_.empty())
        return;
    std::size_t n = static_cast<std::size_t>(std::llround(
                        (opts_.table_max_k - opts_.table_min_k)
                        / opts_.table_step_k))
                    + 1;
    std::vector<double> logp(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double p = exact_power_ev(opts_.table_min_k + i * opts_.table_step_k);
        logp[i] = std::log(std::max(p, 1e-300));
    }
    power_ = std::make_shared<PowerTable const>(PowerTable{
        opts_.table_min_k,
        opts_.table_min_k + (n - 1) * opts_.table_step_k,
        boost::math::interpolators::cardinal_cubic_b_spline<double>(
            logp.begin(), logp.end(), opts_.table_min_k, opts_.table_step_k)});
}

double EmissionModel::occupation(double photon_ev, double temperature_k) const
{
    if (!(temperature_k > 0))
        return 0;
    return occupation_factor(photon_ev, temperature_k, cv_.in_kb);
}

void EmissionModel::node_rates(double temperature_k, std::span<double> out) const
{
    if (!(temperature_k > 0))
    {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    double inv_kt = 1.0 / (k::k_boltzmann_ev * temperature_k);
    double half_inv_c = 0.5 / cv_.in_kb;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
    {
        double x = nodes_[i].photon_ev * inv_kt;
        out[i] = nodes_[i].weight * std::exp(-x - half_inv_c * x * x);
    }
}

double EmissionModel::total_rate(double temperature_k) const
{
    if (!(temperature_k > 0))
        return 0;
    double sum = 0;
    for (auto const& n : nodes_)
        sum += n.weight * occupation(n.photon_ev, temperature_k);
    return sum;
}

double EmissionModel::exact_power_ev(double temperature_k) const
{
    if (!(temperature_k > 0))
        return 0;
    double sum = 0;
    for (auto const& n : fine_nodes_)
        sum += n.weight * n.photon_ev * occupation(n.photon_ev, temperature_k);
    return sum;
}

double EmissionModel::radiated_power_ev(double temperature_k) const
{
    if (!(temperature_k > 0) || !power_)
        return 0;
    if (temperature_k < power_->t_min || temperature_k > power_->t_max)
        return exact_power_ev(temperature_k);
    return std::exp(power_->log_power(temperature_k));
}

}  // namespace tlsim::physics
