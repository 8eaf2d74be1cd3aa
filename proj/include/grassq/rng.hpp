// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace grassq {

// splitmix64 finalizer, used to whiten (seed, stream) pairs into engine state.
inline std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Reproducible random source. The same (seed, stream) pair yields the same
/// sequence on every run; independent work items derive their own streams so
/// results do not depend on how samples are split across threads.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(mix64(mix64(seed) ^ mix64(stream ^ 0xa02bdbf7bb3c0a7ULL)))
    {
    }

    /// Independent child stream; derive(i) != derive(j) for i != j.
    Rng derive(std::uint64_t substream) const
    {
        return Rng(seed_, mix64(stream_ + 0x632be59bd9b4e019ULL) ^ mix64(substream));
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    double uniform() { return unif_(engine_); }

    double normal() { return norm_(engine_); }

    /// CN(0,1): real and imaginary parts i.i.d. N(0, 1/2).
    std::complex<double> cnormal()
    {
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        const double re = norm_(engine_);
        const double im = norm_(engine_);
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

    std::uint64_t bits() { return engine_(); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound)
    {
        return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> norm_{0.0, 1.0};
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
};

} // namespace grassq
