// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/pipeline/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "tlsim/error.hpp"
#include "tlsim/numerics/parallel.hpp"
#include "tlsim/numerics/random.hpp"

namespace tlsim::pipeline
{
namespace
{
physics::EmissionModel make_emission(ExperimentConfig const& cfg)
{
    physics::EmissionModel::Options opts;
    opts.nodes_per_panel = cfg.emission.spectral_nodes_per_panel;
    opts.extra_breakpoints_nm = {cfg.emission.visible_lower_nm,
                                 cfg.emission.visible_upper_nm};
    return physics::EmissionModel(load_cross_section(cfg),
                                  physics::HeatCapacity{cfg.emission.heat_capacity_kb},
                                  opts);
}

interferometer::VisibilityOptions visibility_options(ExperimentConfig const& cfg)
{
    interferometer::VisibilityOptions v;
    v.time_panels_per_half = cfg.numerics.time_panels_per_half;
    v.time_nodes = cfg.numerics.time_nodes;
    v.visible_lower_nm = cfg.emission.visible_lower_nm;
    v.visible_upper_nm = cfg.emission.visible_upper_nm;
    return v;
}

}  // namespace

physics::CrossSectionTable load_cross_section(ExperimentConfig const& cfg)
{
    if (cfg.emission.cross_section_file.empty())
        return physics::default_cross_section();
    return physics::CrossSectionTable::read(cfg.emission.cross_section_file,
                                            cfg.emission.cutoff_ev);
}

//---------------------------------------------------------------------------//
struct Simulation::Impl
{
    physics::EmissionModel emission;
    physics::CoolingIntegrator cooler;
    interferometer::DecoherenceIntegrator integrator;

    explicit Impl(ExperimentConfig const& cfg)
        : emission(make_emission(cfg))
        , cooler(emission)
        , integrator(emission, cfg.geometry, visibility_options(cfg))
    {
    }
};

Simulation::Simulation(ExperimentConfig cfg, unsigned threads)
    : cfg_(std::move(cfg)), threads_(numerics::resolve_threads(threads))
{
    cfg_.validate();
    impl_ = std::make_unique<Impl>(cfg_);
}

Simulation::~Simulation() = default;

physics::EmissionModel const& Simulation::emission() const
{
    return impl_->emission;
}
physics::CoolingIntegrator const& Simulation::cooler() const
{
    return impl_->cooler;
}
interferometer::DecoherenceIntegrator const& Simulation::integrator() const
{
    return impl_->integrator;
}

double Simulation::initial_energy_ev() const
{
    return physics::internal_energy(cfg_.oven_temperature_k,
                                    impl_->emission.heat_capacity());
}

interferometer::FringeCoefficients
Simulation::base_for(double velocity_mps, int max_order) const
{
    auto wave = interferometer::de_broglie_and_talbot(cfg_.geometry,
                                                      velocity_mps);
    auto c = interferometer::base_coefficients(cfg_.geometry,
                                               wave.de_broglie_pm);
    if (cfg_.baseline_visibility)
        c = interferometer::with_visibility(c, *cfg_.baseline_visibility);
    return c.resized(max_order);
}

heating::TemperatureTrajectory Simulation::trajectory(double power_w,
                                                      std::size_t index) const
{
    auto stage = cfg_.heating;
    stage.set_power(power_w);
    auto rng = numerics::molecule_stream(cfg_.seed, index);
    double v = cfg_.velocity.sample(rng);
    auto traj = heating::traverse_stage(
        v, stage, initial_energy_ev(), impl_->cooler, rng);
    heating::extend_through_interferometer(
        traj, cfg_.geometry.transit_time(v), cfg_.numerics.cooling_samples,
        impl_->cooler, stage.ionization);
    return traj;
}

std::vector<interferometer::TrajectoryFringe>
Simulation::members(double power_w, int max_order) const
{
    interferometer::DetectionOptions det;
    det.enabled = cfg_.detector_enabled;
    det.detector = cfg_.detector;
    det.ionization = cfg_.heating.ionization;

    std::vector<interferometer::TrajectoryFringe> out(cfg_.ensemble_size);
    try
    {
        numerics::parallel_for(out.size(), threads_, [&](std::size_t i) {
            auto traj = trajectory(power_w, i);
            auto base = base_for(traj.velocity_mps, max_order);
            out[i] = interferometer::analyse_trajectory(
                traj, base, impl_->integrator, det);
        });
    }
    catch (NumericalError const& e)
    {
        throw NumericalError("scenario " + cfg_.scenario + " at "
                             + format_number(power_w) + " W: " + e.what());
    }
    return out;
}

interferometer::EnsembleResult Simulation::ensemble(double power_w,
                                                    int max_order) const
{
    auto m = members(power_w, max_order);
    return interferometer::ensemble_visibility(m,
                                               cfg_.numerics.jackknife_blocks);
}

ResultTable Simulation::run() const
{
    if (cfg_.powers_w.empty())
        throw ConfigError("scenario " + cfg_.scenario + " has no powers");
    auto powers = cfg_.powers_w;
    std::sort(powers.begin(), powers.end());

    ResultTable table;
    table.scenario = cfg_.scenario;
    std::vector<interferometer::EnsembleResult> results;
    for (double p : powers)
        results.push_back(ensemble(p));
    double reference = (powers.front() == 0) ? results.front().mean_weight
                                             : ensemble(0.0).mean_weight;
    table.baseline_visibility
        = (powers.front() == 0) ? results.front().visibility
                                : base_for(cfg_.velocity.mean_mps, 1)
                                      .visibility();
    for (std::size_t i = 0; i < powers.size(); ++i)
    {
        auto const& r = results[i];
        ResultRow row;
        row.power_w = powers[i];
        row.mean_entry_temperature_k = r.mean_entry_temperature_k;
        row.visibility = std::min(r.visibility, 1.0);
        row.visibility_std_error = r.std_error;
        row.relative_count_rate = reference > 0 ? r.mean_weight / reference
                                                : 0.0;
        row.mean_visible_photons = r.mean_visible_photons;
        row.mean_peak_temperature_k = r.mean_peak_temperature_k;
        row.max_peak_temperature_k = r.max_peak_temperature_k;
        table.rows.push_back(row);
    }
    return table;
}

std::vector<ScanResult>
Simulation::scans(std::vector<double> const& powers_w) const
{
    int order = cfg_.numerics.scan_max_order;
    unsigned n = cfg_.numerics.scan_points;
    double period = cfg_.geometry.period_nm;
    double reference = ensemble(0.0, 1).mean_weight;
    std::vector<ScanResult> out;
    for (double p : powers_w)
    {
        auto r = ensemble(p, order);
        ScanResult s;
        s.power_w = p;
        s.visibility = r.visibility;
        s.relative_count_rate = reference > 0 ? r.mean_weight / reference : 0;
        for (unsigned k = 0; k < n; ++k)
            s.x_position_nm.push_back(period * k / n);
        auto w = interferometer::fringe_pattern(r.mean, s.x_position_nm,
                                                period);
        double c0 = r.mean[0].real();
        for (double x : w)
            s.normalized_counts.push_back(
                c0 > 0 ? s.relative_count_rate * x / c0 : 0.0);
        out.push_back(std::move(s));
    }
    return out;
}

//---------------------------------------------------------------------------//
ResultTable run_scenario(ExperimentConfig const& cfg, unsigned threads)
{
    return Simulation(cfg, threads).run();
}

std::vector<SpectrumRow> spectrum_rows(std::vector<double> const& temps_k,
                                       ExperimentConfig const& cfg)
{
    auto cs = load_cross_section(cfg);
    physics::HeatCapacity cv{cfg.emission.heat_capacity_kb};
    auto const& s = cfg.spectrum;
    auto n = static_cast<std::size_t>(
        std::floor((s.lambda_max_nm - s.lambda_min_nm) / s.lambda_step_nm
                   + 1e-9));
    std::vector<SpectrumRow> rows;
    for (double t : temps_k)
    {
        for (std::size_t i = 0; i <= n; ++i)
        {
            double wl = s.lambda_min_nm + i * s.lambda_step_nm;
            rows.push_back({t, wl, physics::spectral_rate_lambda(wl, t, cs, cv)});
        }
    }
    return rows;
}

ScanResult fringe_scan(ExperimentConfig const& cfg,
                       double power_w,
                       unsigned threads)
{
    return Simulation(cfg, threads).scans({power_w}).front();
}

FitReport run_fit(ExperimentConfig const& cfg,
                  std::vector<heating::IonYieldObservation> observations,
                  unsigned threads)
{
    Simulation sim(cfg, 1);
    auto opts = cfg.fit;
    opts.seed = cfg.seed;
    opts.threads = numerics::resolve_threads(threads);
    FitReport report;
    report.fit = heating::fit_heating_params(
        observations, cfg.heating, sim.cooler(), sim.initial_energy_ev(), opts);
    report.activation_energy_ev = cfg.heating.ionization.activation_energy_ev;
    auto fitted = cfg.heating;
    fitted.triplet_sigma_cm2 = report.fit.sigma_cm2;
    fitted.ionization.arrhenius_prefactor = report.fit.arrhenius_prefactor;
    report.model_yields = heating::model_yields(
        observations, fitted, sim.cooler(), sim.initial_energy_ev(), opts);
    report.observations = std::move(observations);
    return report;
}

//---------------------------------------------------------------------------//
std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    return buf;
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> const& header)
    : os_(&os), columns_(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i)
        *os_ << (i ? "," : "") << header[i];
    *os_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values)
{
    row(std::span<double const>(values.begin(), values.size()));
}

void CsvWriter::row(std::span<double const> values)
{
    if (values.size() != columns_)
        throw ConfigError("CSV row has the wrong number of columns");
    for (std::size_t i = 0; i < values.size(); ++i)
        *os_ << (i ? "," : "") << format_number(values[i]);
    *os_ << '\n';
}

void write_results(std::ostream& os, ResultTable const& table)
{
    CsvWriter w(os, {"power_W", "mean_entry_temperature_K", "visibility",
                     "visibility_std_error", "relative_count_rate",
                     "mean_visible_photons"});
    for (auto const& r : table.rows)
        w.row({r.power_w, r.mean_entry_temperature_k, r.visibility,
               r.visibility_std_error, r.relative_count_rate,
               r.mean_visible_photons});
}

void write_scans(std::ostream& os, std::span<ScanResult const> scans)
{
    CsvWriter w(os, {"power_W", "x_position_nm", "normalized_counts"});
    for (auto const& s : scans)
    {
        for (std::size_t i = 0; i < s.x_position_nm.size(); ++i)
            w.row({s.power_w, s.x_position_nm[i], s.normalized_counts[i]});
    }
}

void write_spectrum(std::ostream& os, std::span<SpectrumRow const> rows)
{
    CsvWriter w(os, {"temperature_K", "lambda_nm", "R_lambda_per_s_nm"});
    for (auto const& r : rows)
        w.row({r.temperature_k, r.lambda_nm, r.r_lambda});
}

void write_fit(std::ostream& os, FitReport const& report)
{
    CsvWriter w(os, {"sigma_cm2", "arrhenius_prefactor_per_s",
                     "activation_energy_eV", "objective", "evaluations"});
    w.row({report.fit.sigma_cm2, report.fit.arrhenius_prefactor,
           report.activation_energy_ev, report.fit.objective,
           static_cast<double>(report.fit.evaluations)});
}

void write_fit_yields(std::ostream& os, FitReport const& report)
{
    CsvWriter w(os, {"power_W", "velocity_mps", "yield", "yield_err",
                     "model_yield"});
    for (std::size_t i = 0; i < report.observations.size(); ++i)
    {
        auto const& o = report.observations[i];
        w.row({o.power_w, o.velocity_mps, o.yield, o.yield_err,
               report.model_yields[i]});
    }
}

void export_spectrum(std::ostream& os,
                     std::vector<double> const& temps_k,
                     ExperimentConfig const& cfg)
{
    auto rows = spectrum_rows(temps_k, cfg);
    write_spectrum(os, rows);
}

void export_fringe_scan(std::ostream& os,
                        ExperimentConfig const& cfg,
                        double power_w,
                        unsigned threads)
{
    auto s = fringe_scan(cfg, power_w, threads);
    write_scans(os, std::span<ScanResult const>(&s, 1));
}

}  // namespace tlsim::pipeline
