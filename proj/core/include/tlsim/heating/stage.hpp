// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tlsim/heating/ionization.hpp"
#include "tlsim/physics/cooling.hpp"

namespace tlsim::heating
{
//---------------------------------------------------------------------------//
// TYPES
//---------------------------------------------------------------------------//
struct LaserBeam
{
    double power_w = 0;
    double waist_um = 40;  //!< 1/e^2 intensity radius
    double wavelength_nm = 514.5;
};

/*!
 * Geometry and physics of the multi-pass heating stage.
 *
 * Molecules cross the beams in order, one every \c beam_spacing_mm, then
 * drift \c drift_to_interferometer_cm from the last beam to the first
 * grating. \c beam_offset_um displaces the laser focus from the molecular
 * path; \c height_spread_um, when positive, gives each molecule a uniform
 * random height in [-h/2, h/2] relative to the path axis.
 */
struct HeatingStageConfig
{
    std::vector<LaserBeam> beams;
    double beam_spacing_mm = 0.3;
    double drift_to_interferometer_cm = 7.2;
    double triplet_sigma_cm2 = 2e-17;
    IonizationModel ionization;
    double beam_offset_um = 0;
    double height_spread_um = 0;

    static HeatingStageConfig
    uniform(std::size_t beam_count, double power_w);
    void set_power(double power_w);
    void validate() const;
};

//! Sampled internal-energy history of one molecule.
struct BeamCrossing
{
    double time_s = 0;
    double energy_before_ev = 0;
    unsigned photons = 0;
    double photon_ev = 0;
};

/*!
 * Time origin is the first interferometer grating; stage times are negative.
 *
 * Samples are strictly increasing in time. A sample at a beam crossing holds
 * the energy after absorption; the energy just before is in \c crossings.
 */
struct TemperatureTrajectory
{
    double velocity_mps = 0;
    std::vector<EnergySample> samples;
    std::vector<BeamCrossing> crossings;
    bool survived = true;
    bool ionized_in_stage = false;
    double stage_ionization_depth = 0;  //!< int k dt over the beam region
    double ionization_depth = 0;  //!< int k dt over the whole path
    double stage_exit_time_s = 0;

    double survival_probability() const;
    double energy_at(double time_s) const;
    double peak_energy_ev() const;
    double start_time() const { return samples.front().time_s; }
    double end_time() const { return samples.back().time_s; }
};

//! Gaussian velocity distribution truncated at 20% of the mean.
struct VelocityDistribution
{
    double mean_mps = 190;
    double relative_spread = 0.15;

    template<class URBG>
    double sample(URBG& rng) const;
    void validate() const;
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//
/*!
 * Mean photons absorbed on one pass through a Gaussian beam.
 *
 * Integrates the photon flux sigma I / E_ph along a straight path at the
 * given impact parameter: n = sigma P sqrt(2/pi) exp(-2b^2/w^2) / (w v E_ph).
 */
double mean_absorbed_photons(LaserBeam const& beam,
                             double velocity_mps,
                             double sigma_cm2,
                             double impact_um = 0);

//! Photons absorbed per crossing are Poisson, deposited instantly.
TemperatureTrajectory traverse_stage(double velocity_mps,
                                     HeatingStageConfig const& cfg,
                                     double initial_energy_ev,
                                     physics::CoolingIntegrator const& cooler,
                                     std::mt19937_64& rng);

//! Append cooled samples on a uniform grid over [0, duration].
void extend_through_interferometer(TemperatureTrajectory& trajectory,
                                   double duration_s,
                                   unsigned panels,
                                   physics::CoolingIntegrator const& cooler,
                                   IonizationModel const& ionization);

//! D1 ion yield estimate
struct YieldEstimate
{
    double power_w = 0;
    double mean = 0;
    double std_error = 0;
};

/*!
 * Expected fraction of molecules ionized inside the beam region, per power.
 *
 * Molecule \c i uses the same random stream at every power.
 */
std::vector<YieldEstimate>
d1_ion_yield(HeatingStageConfig cfg,
             VelocityDistribution const& velocities,
             std::vector<double> const& powers_w,
             std::size_t n,
             std::uint64_t seed,
             physics::CoolingIntegrator const& cooler,
             double initial_energy_ev,
             unsigned threads = 1);

//---------------------------------------------------------------------------//
// INLINE DEFINITIONS
//---------------------------------------------------------------------------//
template<class URBG>
double VelocityDistribution::sample(URBG& rng) const
{
    if (relative_spread <= 0)
        return mean_mps;
    std::normal_distribution<double> normal(mean_mps,
                                            relative_spread * mean_mps);
    for (;;)
    {
        double v = normal(rng);
        if (v >= 0.2 * mean_mps)
            return v;
    }
}

}  // namespace tlsim::heating
