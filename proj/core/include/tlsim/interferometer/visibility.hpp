// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "tlsim/heating/ionization.hpp"
#include "tlsim/heating/stage.hpp"
#include "tlsim/interferometer/coefficients.hpp"
#include "tlsim/physics/emission.hpp"

namespace tlsim::interferometer
{
struct VisibilityOptions
{
    //! Uniform time panels in each half [0, L/v] and [L/v, 2L/v]
    unsigned time_panels_per_half = 24;
    unsigned time_nodes = 4;
    double visible_lower_nm = 400;
    double visible_upper_nm = 800;
    double ode_rel_tol = 1e-10;
};

struct VisibilityResult
{
    double visibility = 0;
    double baseline = 0;
    double visible_photons = 0;
    double total_photons = 0;
};

//! Exponents Gamma_l, l = 0..max_order, and photon counts in transit
struct DecoherenceExponents
{
    std::vector<double> gamma;
    double visible_photons = 0;
    double total_photons = 0;
};

/*!
 * Decoherence of the fringe coefficients along a cooling trajectory.
 *
 * Uses the spectral node set of the emission model and composite
 * Gauss-Legendre in time. The trajectory must be sampled over at least
 * [0, 2L/v]; its energy is interpolated linearly between samples.
 */
class DecoherenceIntegrator
{
  public:
    DecoherenceIntegrator(physics::EmissionModel const& model,
                          InterferometerGeometry geometry,
                          VisibilityOptions opts = {});

    InterferometerGeometry const& geometry() const { return geometry_; }
    VisibilityOptions const& options() const { return opts_; }
    physics::EmissionModel const& model() const { return *model_; }

    //! Panel edges in [0, 2L/v], including L/v and interior samples.
    std::vector<double>
    time_breakpoints(heating::TemperatureTrajectory const& traj) const;

    //! Gamma_l = int dt sum_i r_i(T(t)) [1 - sinc(l theta_i(t))]
    DecoherenceExponents exponents(heating::TemperatureTrajectory const& traj,
                                   int max_order) const;

    //! C_l exp(-Gamma_l)
    FringeCoefficients decohere(FringeCoefficients const& base,
                                heating::TemperatureTrajectory const& traj,
                                DecoherenceExponents* info = nullptr) const;

    //! Integrate dC_l/dt = R_tot (eta_l - 1) C_l with an adaptive solver.
    FringeCoefficients
    evolve_ode(FringeCoefficients const& base,
               heating::TemperatureTrajectory const& traj) const;

  private:
    physics::EmissionModel const* model_;
    InterferometerGeometry geometry_;
    VisibilityOptions opts_;
    std::vector<char> visible_;  // per spectral node

    void check_span(heating::TemperatureTrajectory const& traj) const;
};

VisibilityResult
closed_form_visibility(heating::TemperatureTrajectory const& traj,
                       FringeCoefficients const& base,
                       DecoherenceIntegrator const& integrator);

VisibilityResult
evolve_visibility_ode(heating::TemperatureTrajectory const& traj,
                      FringeCoefficients const& base,
                      DecoherenceIntegrator const& integrator);

//---------------------------------------------------------------------------//
// ENSEMBLE
//---------------------------------------------------------------------------//
//! Per-molecule contribution to the detected fringe
struct TrajectoryFringe
{
    FringeCoefficients coefficients;
    double weight = 1;
    double visible_photons = 0;
    double entry_temperature_k = 0;
    double peak_temperature_k = 0;
};

struct DetectionOptions
{
    bool enabled = true;
    heating::DetectorModel detector;
    heating::IonizationModel ionization;
};

/*!
 * Decohered coefficients and detection weight for one molecule.
 *
 * The weight is the probability to survive un-ionized to the detector times
 * the detection efficiency; it is 1 when detection weighting is disabled.
 */
TrajectoryFringe analyse_trajectory(heating::TemperatureTrajectory const& traj,
                                    FringeCoefficients const& base,
                                    DecoherenceIntegrator const& integrator,
                                    DetectionOptions const& detection);

struct EnsembleResult
{
    FringeCoefficients mean;  //!< weight-averaged coefficients
    double visibility = 0;
    double std_error = 0;  //!< block jackknife
    double mean_weight = 0;
    double mean_visible_photons = 0;  //!< weighted
    double mean_entry_temperature_k = 0;
    double max_peak_temperature_k = 0;
    double mean_peak_temperature_k = 0;
    std::size_t size = 0;
};

EnsembleResult ensemble_visibility(std::span<TrajectoryFringe const> members,
                                   unsigned jackknife_blocks = 20);

}  // namespace tlsim::interferometer
