// Copyright 2026 The tlsim Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace tlsim::numerics
{
//! SplitMix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

//! Independent engine for one molecule, derived from (master seed, index).
inline std::mt19937_64 molecule_stream(std::uint64_t master_seed,
                                       std::uint64_t index,
                                       std::uint64_t channel = 0)
{
    std::uint64_t a = mix64(master_seed ^ mix64(index));
    std::uint64_t b = mix64(a ^ mix64(channel + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a),
                      static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace tlsim::numerics
