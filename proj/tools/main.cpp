// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#include "tlsim/pipeline/cli.hpp"

int main(int argc, char** argv)
{
    return tlsim::pipeline::cli_main(argc, argv);
}
