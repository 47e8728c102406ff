// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/physics/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "tlsim/error.hpp"
#include "tlsim/physics/constants.hpp"

namespace tlsim::physics
{
CrossSectionTable::CrossSectionTable(std::vector<double> wavelength_nm,
                                     std::vector<double> sigma_m2,
                                     double cutoff_ev)
    : wavelength_(std::move(wavelength_nm))
    , sigma_(std::move(sigma_m2))
    , cutoff_ev_(cutoff_ev)
{
    if (wavelength_.empty() || wavelength_.size() != sigma_.size())
    {
        throw ConfigError("cross-section table needs matching, non-empty "
                          "wavelength and sigma columns");
    }
    for (std::size_t i = 0; i < wavelength_.size(); ++i)
    {
        if (!(wavelength_[i] > 0))
            throw ConfigError("cross-section wavelengths must be positive");
        if (i > 0 && !(wavelength_[i] > wavelength_[i - 1]))
            throw ConfigError("cross-section wavelengths must be strictly "
                              "increasing");
        if (!(sigma_[i] >= 0) || !std::isfinite(sigma_[i]))
            throw ConfigError("cross sections must be finite and >= 0");
    }
    if (!(cutoff_ev_ >= 0))
        throw ConfigError("cross-section cutoff must be >= 0 eV");
}

double CrossSectionTable::support_upper_nm() const
{
    double upper = wavelength_.back();
    if (cutoff_ev_ > 0)
        upper = std::min(upper, constants::photon_wavelength_nm(cutoff_ev_));
    return upper;
}

double CrossSectionTable::sigma(double wavelength_nm) const
{
    if (!(wavelength_nm > 0))
        return 0;
    if (cutoff_ev_ > 0
        && constants::photon_energy_ev(wavelength_nm) < cutoff_ev_)
        return 0;
    if (wavelength_nm <= wavelength_.front())
        return sigma_.front();
    if (wavelength_nm > wavelength_.back())
        return 0;

    auto hi = std::upper_bound(
        wavelength_.begin(), wavelength_.end(), wavelength_nm);
    if (hi == wavelength_.end())
        return sigma_.back();
    auto i = static_cast<std::size_t>(hi - wavelength_.begin());
    double x0 = wavelength_[i - 1];
    double x1 = wavelength_[i];
    double y0 = sigma_[i - 1];
    double y1 = sigma_[i];
    double frac = (wavelength_nm - x0) / (x1 - x0);
    if (y0 > 0 && y1 > 0)
        return y0 * std::exp(frac * std::log(y1 / y0));
    return y0 + frac * (y1 - y0);
}

std::vector<double> CrossSectionTable::breakpoints_nm() const
{
    double lo = support_lower_nm();
    double hi = support_upper_nm();
    std::vector<double> result;
    if (!(hi > lo))
        return result;
    result.push_back(lo);
    for (double w : wavelength_)
    {
        if (w > lo && w < hi)
            result.push_back(w);
    }
    result.push_back(hi);
    return result;
}

CrossSectionTable CrossSectionTable::read(std::istream& is, double cutoff_ev)
{
    std::vector<double> wl;
    std::vector<double> sig;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line))
    {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        double w = 0;
        double s = 0;
        if (!(ls >> w))
            continue;
        if (!(ls >> s))
        {
            throw ConfigError("cross-section table line "
                              + std::to_string(lineno)
                              + ": expected two columns");
        }
        wl.push_back(w);
        sig.push_back(s);
    }
    return CrossSectionTable(std::move(wl), std::move(sig), cutoff_ev);
}

CrossSectionTable
CrossSectionTable::read(std::filesystem::path const& path, double cutoff_ev)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open cross-section table " + path.string());
    return read(is, cutoff_ev);
}

void CrossSectionTable::write(std::ostream& os) const
{
    os << "# wavelength_nm sigma_m2\n";
    os << std::setprecision(9);
    for (std::size_t i = 0; i < wavelength_.size(); ++i)
        os << wavelength_[i] << ' ' << sigma_[i] << '\n';
}

//---------------------------------------------------------------------------//
double SurrogateCrossSection::sigma(double wavelength_nm)
{
    double e = constants::photon_energy_ev(wavelength_nm);
    if (e <= cutoff_ev)
        return 0;
    return scale_m2 * std::pow(e - cutoff_ev, exponent);
}

CrossSectionTable default_cross_section()
{
    using S = SurrogateCrossSection;
    double const upper = constants::photon_wavelength_nm(S::cutoff_ev);
    std::vector<double> wl;
    for (int i = 0;; ++i)
    {
        double w = S::lower_nm + i * S::step_nm;
        if (w >= upper - 1e-9)
            break;
        wl.push_back(w);
    }
    wl.push_back(upper);
    std::vector<double> sig;
    sig.reserve(wl.size());
    for (double w : wl)
        sig.push_back(S::sigma(w));
    sig.back() = 0;
    return CrossSectionTable(std::move(wl), std::move(sig), S::cutoff_ev);
}

}  // namespace tlsim::physics
