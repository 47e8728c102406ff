// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tlsim/heating/fit.hpp"
#include "tlsim/interferometer/visibility.hpp"
#include "tlsim/pipeline/config.hpp"
#include "tlsim/physics/cooling.hpp"

namespace tlsim::pipeline
{
struct ResultRow
{
    double power_w = 0;
    double mean_entry_temperature_k = 0;
    double visibility = 0;
    double visibility_std_error = 0;
    double relative_count_rate = 0;
    double mean_visible_photons = 0;
    double mean_peak_temperature_k = 0;
    double max_peak_temperature_k = 0;
};

struct ResultTable
{
    std::string scenario;
    double baseline_visibility = 0;
    std::vector<ResultRow> rows;  //!< ordered by power
};

struct ScanResult
{
    double power_w = 0;
    double visibility = 0;
    double relative_count_rate = 0;
    std::vector<double> x_position_nm;
    std::vector<double> normalized_counts;  //!< period mean = count rate
};

struct SpectrumRow
{
    double temperature_k = 0;
    double lambda_nm = 0;
    double r_lambda = 0;  //!< photons / (s nm)
};

struct FitReport
{
    heating::HeatingFit fit;
    double activation_energy_ev = 0;
    std::vector<heating::IonYieldObservation> observations;
    std::vector<double> model_yields;
};

/*!
 * Shared state for one configuration: emission model, cooling and
 * decoherence integrators. Every query is a pure function of its inputs and
 * the configured seed.
 */
class Simulation
{
  public:
    explicit Simulation(ExperimentConfig cfg, unsigned threads = 1);
    ~Simulation();
    Simulation(Simulation const&) = delete;
    Simulation& operator=(Simulation const&) = delete;

    ExperimentConfig const& config() const { return cfg_; }
    physics::EmissionModel const& emission() const;
    physics::CoolingIntegrator const& cooler() const;
    interferometer::DecoherenceIntegrator const& integrator() const;
    double initial_energy_ev() const;

    //! Undisturbed coefficients at this velocity, truncated to max_order.
    interferometer::FringeCoefficients base_for(double velocity_mps,
                                                int max_order) const;

    //! Heating and interferometer history of molecule \c index.
    heating::TemperatureTrajectory trajectory(double power_w,
                                              std::size_t index) const;

    std::vector<interferometer::TrajectoryFringe>
    members(double power_w, int max_order) const;
    interferometer::EnsembleResult ensemble(double power_w,
                                            int max_order = 1) const;

    ResultTable run() const;
    std::vector<ScanResult> scans(std::vector<double> const& powers_w) const;

  private:
    ExperimentConfig cfg_;
    unsigned threads_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ResultTable run_scenario(ExperimentConfig const& cfg, unsigned threads = 1);

std::vector<SpectrumRow> spectrum_rows(std::vector<double> const& temps_k,
                                       ExperimentConfig const& cfg);

ScanResult fringe_scan(ExperimentConfig const& cfg,
                       double power_w,
                       unsigned threads = 1);

FitReport run_fit(ExperimentConfig const& cfg,
                  std::vector<heating::IonYieldObservation> observations,
                  unsigned threads = 1);

//! Cross section from the config file, or the built-in default.
physics::CrossSectionTable load_cross_section(ExperimentConfig const& cfg);

//---------------------------------------------------------------------------//
// CSV OUTPUT
//---------------------------------------------------------------------------//
//! Comma separated, header row, LF endings, 9 significant digits.
class CsvWriter
{
  public:
    CsvWriter(std::ostream& os, std::vector<std::string> const& header);
    void row(std::initializer_list<double> values);
    void row(std::span<double const> values);

  private:
    std::ostream* os_;
    std::size_t columns_;
};

std::string format_number(double value);

void write_results(std::ostream& os, ResultTable const& table);
void write_scans(std::ostream& os, std::span<ScanResult const> scans);
void write_spectrum(std::ostream& os, std::span<SpectrumRow const> rows);
void write_fit(std::ostream& os, FitReport const& report);
void write_fit_yields(std::ostream& os, FitReport const& report);

//! export_spectrum(temps, cfg) as CSV text
void export_spectrum(std::ostream& os,
                     std::vector<double> const& temps_k,
                     ExperimentConfig const& cfg);

//! export_fringe_scan(cfg, power) as CSV text
void export_fringe_scan(std::ostream& os,
                        ExperimentConfig const& cfg,
                        double power_w,
                        unsigned threads = 1);

}  // namespace tlsim::pipeline
