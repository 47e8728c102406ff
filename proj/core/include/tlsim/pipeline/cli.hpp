// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace tlsim::pipeline
{
//! Environment variable consulted when --threads is absent
inline constexpr char const thread_env_var[] = "TLSIM_THREADS";

/*!
 * Command-line entry point: simulate, spectrum, scan, fit.
 *
 * Returns 0 on success. Failures print one diagnostic line to \c err and
 * return nonzero.
 */
int cli_main(int argc, char const* const* argv, std::ostream& out,
             std::ostream& err);
int cli_main(int argc, char const* const* argv);

}  // namespace tlsim::pipeline
