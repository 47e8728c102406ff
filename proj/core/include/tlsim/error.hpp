// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace tlsim
{
//! Invalid configuration or precondition violation
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Integrator or quadrature failed to meet its tolerance
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Sampling from a spectrum with no emission
class DegenerateSpectrum : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

}  // namespace tlsim
