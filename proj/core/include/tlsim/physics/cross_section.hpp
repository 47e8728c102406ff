// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace tlsim::physics
{
//---------------------------------------------------------------------------//
/*!
 * Tabulated photo-absorption cross section sigma(lambda).
 *
 * The grid is strictly increasing in wavelength. Between grid points sigma is
 * interpolated log-linearly (linear when an endpoint is zero). Queries below
 * the first wavelength clamp to the first entry; queries above the last entry
 * return zero. Photons with energy below the cutoff are never absorbed.
 */
class CrossSectionTable
{
  public:
    CrossSectionTable(std::vector<double> wavelength_nm,
                      std::vector<double> sigma_m2,
                      double cutoff_ev = 1.5);

    //! Cross section in m^2.
    double sigma(double wavelength_nm) const;

    //! Wavelength support where sigma may be non-zero: [lower, upper] in nm.
    double support_lower_nm() const { return wavelength_.front(); }
    double support_upper_nm() const;

    //! Grid points inside the support, including both support edges.
    std::vector<double> breakpoints_nm() const;

    double cutoff_ev() const { return cutoff_ev_; }
    std::vector<double> const& wavelengths_nm() const { return wavelength_; }
    std::vector<double> const& sigmas_m2() const { return sigma_; }

    //! Read two-column text (wavelength_nm sigma_m2); '#' starts a comment.
    static CrossSectionTable read(std::istream& is, double cutoff_ev = 1.5);
    static CrossSectionTable read(std::filesystem::path const& path,
                                  double cutoff_ev = 1.5);
    void write(std::ostream& os) const;

  private:
    std::vector<double> wavelength_;
    std::vector<double> sigma_;
    double cutoff_ev_;
};

//---------------------------------------------------------------------------//
/*!
 * Smooth C70 surrogate: sigma = scale * (E - E_cut)^exponent (E in eV).
 *
 * The scale is frozen so that a 2500 K molecule emits 3.0 photons between
 * 400 and 800 nm in 4 ms with C_V = 202 k_B.
 */
struct SurrogateCrossSection
{
    static constexpr double exponent = 2.5;
    static constexpr double scale_m2 = 3.60921161e-21;
    static constexpr double cutoff_ev = 1.5;
    static constexpr double lower_nm = 200.0;
    static constexpr double step_nm = 5.0;

    static double sigma(double wavelength_nm);
};

//! Default table: the surrogate sampled on a 5 nm grid from 200 nm to cutoff.
CrossSectionTable default_cross_section();

}  // namespace tlsim::physics
