// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "tlsim/interferometer/geometry.hpp"

namespace tlsim::interferometer
{
/*!
 * Fourier coefficients C_l, l in [-max_order, max_order], of the molecular
 * count rate behind the third grating as a function of its lateral position.
 */
class FringeCoefficients
{
  public:
    using value_type = std::complex<double>;

    FringeCoefficients() = default;
    explicit FringeCoefficients(int max_order);

    int max_order() const { return max_order_; }
    value_type operator[](int order) const { return c_.at(index(order)); }
    value_type& operator[](int order) { return c_.at(index(order)); }

    //! 2 |C_1 / C_0|
    double visibility() const;

    //! Same coefficients truncated or zero-padded to a new order.
    FringeCoefficients resized(int max_order) const;

    FringeCoefficients& operator+=(FringeCoefficients const& other);
    FringeCoefficients& operator*=(double factor);

  private:
    int max_order_ = 0;
    std::vector<value_type> c_;

    std::size_t index(int order) const;
};

//! Fourier coefficients of a binary grating with open fraction f.
double grating_coefficient(int n, double open_fraction);

struct BaseCoefficientOptions
{
    int max_order = 8;
    //! Raise max_order until the outermost |C_l| / |C_0| drops below this
    double truncation_tolerance = 1e-6;
    int order_limit = 64;
};

/*!
 * Undisturbed coefficients for the given de Broglie wavelength.
 *
 * The near-field Talbot-Lau sum over grating orders is evaluated in closed
 * form as an overlap integral of the grating transmission with its copy
 * shifted by l L / L_T periods.
 */
FringeCoefficients base_coefficients(InterferometerGeometry const& geometry,
                                     double de_broglie_pm,
                                     BaseCoefficientOptions const& opts = {});

//! Replace C_{+-1} so that the visibility equals \c visibility (real C_1).
FringeCoefficients with_visibility(FringeCoefficients c, double visibility);

//! Count rate w(x) = sum_l C_l exp(2 pi i l x / d) at each position (nm).
std::vector<double> fringe_pattern(FringeCoefficients const& c,
                                   std::span<double const> positions_nm,
                                   double period_nm);

//! 2 |c_1 / c_0| from the discrete Fourier transform of a uniform scan.
double scan_visibility(std::span<double const> counts);

}  // namespace tlsim::interferometer
