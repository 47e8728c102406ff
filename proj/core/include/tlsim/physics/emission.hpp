// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <random>
#include <span>
#include <vector>

#include "tlsim/physics/cross_section.hpp"
#include "tlsim/physics/thermo.hpp"

namespace tlsim::physics
{
//---------------------------------------------------------------------------//
// Thermal photon emission of a hot, isolated molecule into a cold
// environment. The rate is the absorption cross section times the vacuum mode
// density, with the microcanonical (finite heat bath) Boltzmann factor
//
//   R_w = w^2/(pi^2 c^2) sigma(w) exp[-x - (k_B/2C_V) x^2],  x = hbar w/k_B T
//
// No stimulated emission term appears.
//---------------------------------------------------------------------------//

//! Photons per second per unit angular frequency (rad/s).
double spectral_rate_omega(double omega,
                           double temperature_k,
                           CrossSectionTable const& cs,
                           HeatCapacity cv);

//! Photons per second per nm of wavelength: R_w |dw/dlambda|.
double spectral_rate_lambda(double wavelength_nm,
                            double temperature_k,
                            CrossSectionTable const& cs,
                            HeatCapacity cv);

//! Pure Boltzmann rate (no finite heat capacity correction), per nm.
double boltzmann_rate_lambda(double wavelength_nm,
                             double temperature_k,
                             CrossSectionTable const& cs);

//---------------------------------------------------------------------------//
/*!
 * Normalized emission spectrum as a wavelength histogram plus the total rate.
 *
 * Bin \c i spans [edges[i], edges[i+1]] and holds probability \c
 * probability[i]; the density is uniform inside a bin. Zero-width bins
 * represent monochromatic lines. An empty density means "no emission".
 */
class SpectralDensity
{
  public:
    SpectralDensity() = default;
    SpectralDensity(std::vector<double> edges_nm,
                    std::vector<double> probability,
                    double total_rate);

    //! Single line at the given wavelength.
    static SpectralDensity monochromatic(double wavelength_nm,
                                         double total_rate = 1.0);

    bool empty() const { return probability_.empty() || total_rate_ <= 0; }
    double total_rate() const { return total_rate_; }
    std::size_t num_bins() const { return probability_.size(); }
    std::vector<double> const& edges_nm() const { return edges_; }
    std::vector<double> const& probability() const { return probability_; }
    std::vector<double> const& cdf() const { return cdf_; }

    //! Sum of the bin probabilities (1 up to quadrature error).
    double norm() const;

    //! Mean photon energy in eV.
    double mean_photon_energy_ev() const;

    //! Inverse CDF: wavelength for a uniform deviate u in [0, 1).
    double inverse_cdf(double u) const;

  private:
    std::vector<double> edges_;
    std::vector<double> probability_;
    std::vector<double> cdf_;
    double total_rate_ = 0;
};

//! Quadrature controls for the adaptive spectral integrals.
struct SpectralQuadrature
{
    double rel_tol = 1e-10;
    unsigned max_depth = 12;
    unsigned bins_per_interval = 32;
};

/*!
 * Total emission rate (photons/s) and normalized spectrum at T_m.
 *
 * The rate is integrated over the table support by adaptive Gauss-Kronrod on
 * each table interval. At T_m = 0 the result is an empty density.
 */
SpectralDensity total_rate_and_density(double temperature_k,
                                       CrossSectionTable const& cs,
                                       HeatCapacity cv,
                                       SpectralQuadrature const& q = {});

//! Emission rate inside [lower_nm, upper_nm] in photons/s.
double band_rate(double temperature_k,
                 double lower_nm,
                 double upper_nm,
                 CrossSectionTable const& cs,
                 HeatCapacity cv,
                 SpectralQuadrature const& q = {});

//! Radiated power in W (integral of hbar w R_w).
double radiated_power(double temperature_k,
                      CrossSectionTable const& cs,
                      HeatCapacity cv,
                      SpectralQuadrature const& q = {});

//! Draw a photon wavelength (nm) from the spectrum by inverse CDF.
template<class URBG>
double sample_photon(SpectralDensity const& density, URBG& rng);

//---------------------------------------------------------------------------//
/*!
 * Precomputed emission model for repeated evaluation.
 *
 * Holds a fixed Gauss-Legendre node set over the cross-section support (one
 * panel per table interval, split at any extra breakpoints) and a cubic
 * B-spline of ln P(T) for the radiated power. Both are built once; every
 * query afterwards is a pure function.
 */
class EmissionModel
{
  public:
    struct Options
    {
        unsigned nodes_per_panel = 4;
        std::vector<double> extra_breakpoints_nm{400.0, 800.0};
        double table_min_k = 300.0;
        double table_max_k = 20000.0;
        double table_step_k = 5.0;
    };

    //! One spectral quadrature node: contributes weight * exp(-x - x^2/2C)
    struct Node
    {
        double wavelength_nm;
        double photon_ev;
        double weight;  //!< quadrature weight * mode density * sigma, per s
    };

    EmissionModel(CrossSectionTable cs, HeatCapacity cv);
    EmissionModel(CrossSectionTable cs, HeatCapacity cv, Options opts);

    CrossSectionTable const& cross_section() const { return cs_; }
    HeatCapacity heat_capacity() const { return cv_; }
    std::span<Node const> nodes() const { return nodes_; }

    //! Boltzmann-type factor exp[-x - x^2 k_B/(2 C_V)] for a node
    double occupation(double photon_ev, double temperature_k) const;

    //! Fill \c out (size nodes().size()) with node rate contributions.
    void node_rates(double temperature_k, std::span<double> out) const;

    //! Radiated power in eV/s from the interpolation table.
    double radiated_power_ev(double temperature_k) const;

    //! Total photon rate (photons/s) from the node set.
    double total_rate(double temperature_k) const;

  private:
    CrossSectionTable cs_;
    HeatCapacity cv_;
    Options opts_;
    std::vector<Node> nodes_;
    std::vector<Node> fine_nodes_;
    struct PowerTable;
    std::shared_ptr<PowerTable const> power_;

    double exact_power_ev(double temperature_k) const;
};

//---------------------------------------------------------------------------//
// INLINE DEFINITIONS
//---------------------------------------------------------------------------//
template<class URBG>
double sample_photon(SpectralDensity const& density, URBG& rng)
{
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    return density.inverse_cdf(uniform(rng));
}

}  // namespace tlsim::physics
