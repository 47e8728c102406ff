// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/interferometer/coefficients.hpp"

#include <cmath>
#include <numbers>

#include "tlsim/error.hpp"

namespace tlsim::interferometer
{
namespace
{
using std::numbers::pi;
using cplx = std::complex<double>;

//! (1/d) int t(x) t(x + s d) exp(-4 pi i l x / d) dx, s in periods
cplx shifted_overlap(int order, double shift, double f)
{
    double a = 0.5 * f;
    shift -= std::round(shift);
    cplx total = 0;
    for (int j = -1; j <= 1; ++j)
    {
        double lo = std::max(-a, j - a - shift);
        double hi = std::min(a, j + a - shift);
        if (!(hi > lo))
            continue;
        if (order == 0)
        {
            total += hi - lo;
            continue;
        }
        cplx q(0, -4 * pi * order);
        total += (std::exp(q * hi) - std::exp(q * lo)) / q;
    }
    return total;
}

}  // namespace

FringeCoefficients::FringeCoefficients(int max_order)
    : max_order_(max_order), c_(2 * max_order + 1)
{
    if (max_order < 0)
        throw ConfigError("max order must be >= 0");
}

std::size_t FringeCoefficients::index(int order) const
{
    if (order < -max_order_ || order > max_order_)
        throw std::out_of_range("fringe order out of range");
    return static_cast<std::size_t>(order + max_order_);
}

double FringeCoefficients::visibility() const
{
    if (max_order_ < 1)
        return 0;
    double c0 = std::abs((*this)[0]);
    return c0 > 0 ? 2 * std::abs((*this)[1]) / c0 : 0.0;
}

FringeCoefficients FringeCoefficients::resized(int max_order) const
{
    FringeCoefficients r(max_order);
    int m = std::min(max_order, max_order_);
    for (int l = -m; l <= m; ++l)
        r[l] = (*this)[l];
    return r;
}

FringeCoefficients& FringeCoefficients::operator+=(FringeCoefficients const& o)
{
    if (o.max_order_ != max_order_)
        throw ConfigError("cannot add coefficients of different order");
    for (std::size_t i = 0; i < c_.size(); ++i)
        c_[i] += o.c_[i];
    return *this;
}

FringeCoefficients& FringeCoefficients::operator*=(double factor)
{
    for (auto& c : c_)
        c *= factor;
    return *this;
}

double grating_coefficient(int n, double open_fraction)
{
    if (n == 0)
        return open_fraction;
    return std::sin(pi * n * open_fraction) / (pi * n);
}

FringeCoefficients base_coefficients(InterferometerGeometry const& geometry,
                                     double de_broglie_pm,
                                     BaseCoefficientOptions const& opts)
{
    geometry.validate();
    if (!(de_broglie_pm > 0))
        throw ConfigError("de Broglie wavelength must be positive");
    double d = geometry.period_nm * 1e-9;
    double xi = geometry.separation_m * de_broglie_pm * 1e-12 / (d * d);
    double f = geometry.open_fraction();

    auto coefficient = [&](int l) {
        double b = grating_coefficient(l, f);
        double phase = -2 * pi * std::fmod(double(l) * l * xi, 1.0);
        return b * b * std::polar(1.0, phase) * shifted_overlap(l, l * xi, f);
    };

    cplx c0 = coefficient(0);
    int m = std::max(opts.max_order, 1);
    while (m < opts.order_limit
           && std::abs(coefficient(m)) > opts.truncation_tolerance * std::abs(c0))
        ++m;

    FringeCoefficients c(m);
    for (int l = -m; l <= m; ++l)
        c[l] = coefficient(l);
    return c;
}

FringeCoefficients with_visibility(FringeCoefficients c, double visibility)
{
    if (!(visibility >= 0) || !(visibility <= 2))
        throw ConfigError("visibility override must lie in [0, 2]");
    if (c.max_order() < 1)
        c = c.resized(1);
    double c1 = 0.5 * visibility * std::abs(c[0]);
    c[1] = c1;
    c[-1] = c1;
    return c;
}

std::vector<double> fringe_pattern(FringeCoefficients const& c,
                                   std::span<double const> positions_nm,
                                   double period_nm)
{
    std::vector<double> w;
    w.reserve(positions_nm.size());
    for (double x : positions_nm)
    {
        double phase = 2 * pi * x / period_nm;
        double sum = c[0].real();
        for (int l = 1; l <= c.max_order(); ++l)
        {
            cplx e = std::polar(1.0, l * phase);
            sum += (c[l] * e + c[-l] * std::conj(e)).real();
        }
        w.push_back(sum);
    }
    return w;
}

double scan_visibility(std::span<double const> counts)
{
    std::size_t n = counts.size();
    if (n < 3)
        throw ConfigError("scan needs at least three points");
    cplx c0 = 0;
    cplx c1 = 0;
    for (std::size_t k = 0; k < n; ++k)
    {
        c0 += counts[k];
        c1 += counts[k] * std::polar(1.0, -2 * pi * double(k) / double(n));
    }
    return std::abs(c0) > 0 ? 2 * std::abs(c1) / std::abs(c0) : 0.0;
}

}  // namespace tlsim::interferometer
