// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tlsim/error.hpp"

namespace tlsim::numerics
{
//! Gauss-Legendre rule on [-1, 1]
struct GaussRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

//! Supported orders: 2-10, 15, 20.
GaussRule const& gauss_legendre(unsigned order);

/*!
 * Adaptive Gauss-Kronrod (7-15) over consecutive panels [b_i, b_{i+1}].
 *
 * Each panel is refined independently to the relative tolerance.
 */
template<class F>
double integrate_panels(F&& f,
                        std::span<double const> breakpoints,
                        double rel_tol = 1e-10,
                        unsigned max_depth = 12)
{
    using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double total = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    {
        double a = breakpoints[i];
        double b = breakpoints[i + 1];
        if (!(b > a))
            continue;
        double err = 0;
        double l1 = 0;
        double value = Rule::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
        if (!std::isfinite(value))
            throw NumericalError("non-finite value in panel quadrature");
        total += value;
    }
    return total;
}

//! Fixed-order composite Gauss-Legendre over consecutive panels.
template<class F>
double gauss_panels(F&& f, std::span<double const> breakpoints, unsigned order)
{
    auto const& rule = gauss_legendre(order);
    double total = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    {
        double half = 0.5 * (breakpoints[i + 1] - breakpoints[i]);
        double mid = 0.5 * (breakpoints[i + 1] + breakpoints[i]);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            total += half * rule.weights[k] * f(mid + half * rule.nodes[k]);
    }
    return total;
}

}  // namespace tlsim::numerics
