// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/numerics/quadrature.hpp"

#include <array>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

namespace tlsim::numerics
{
namespace
{
template<unsigned N>
GaussRule make_rule()
{
    // Boost stores the non-negative half of the symmetric rule.
    using G = boost::math::quadrature::gauss<double, N>;
    auto const& x = G::abscissa();
    auto const& w = G::weights();
    GaussRule rule;
    for (std::size_t i = x.size(); i-- > 0;)
    {
        if (x[i] == 0)
            continue;
        rule.nodes.push_back(-x[i]);
        rule.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        rule.nodes.push_back(x[i]);
        rule.weights.push_back(w[i]);
    }
    return rule;
}
}  // namespace

GaussRule const& gauss_legendre(unsigned order)
{
    static std::array<GaussRule, 11> const small = {
        make_rule<1>(), make_rule<1>(), make_rule<2>(), make_rule<3>(),
        make_rule<4>(), make_rule<5>(), make_rule<6>(), make_rule<7>(),
        make_rule<8>(), make_rule<9>(), make_rule<10>()};
    static GaussRule const r15 = make_rule<15>();
    static GaussRule const r20 = make_rule<20>();
    if (order >= 2 && order <= 10)
        return small[order];
    if (order == 15)
        return r15;
    if (order == 20)
        return r20;
    throw ConfigError("unsupported Gauss-Legendre order "
                      + std::to_string(order));
}

}  // namespace tlsim::numerics
