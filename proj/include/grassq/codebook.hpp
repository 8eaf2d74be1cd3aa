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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "grassq/plane.hpp"

namespace grassq {

enum class DesignMethod { random, maxmin, loaded };

const char *to_string(DesignMethod m);
DesignMethod design_method_from_string(const std::string &s);

struct DesignLogEntry {
    int iteration;
    double min_distance;
};

/// Ordered set of K codeword planes sharing (n, p, field).
class Codebook {
  public:
    Codebook(std::vector<Plane> planes, DesignMethod method, std::uint64_t seed,
             std::vector<DesignLogEntry> design_log = {});

    int size() const { return static_cast<int>(planes_.size()); }
    int n() const { return planes_.front().n(); }
    int p() const { return planes_.front().p(); }
    Field field() const { return planes_.front().field(); }
    DesignMethod method() const { return method_; }
    std::uint64_t seed() const { return seed_; }
    const Plane &operator[](int i) const { return planes_[static_cast<std::size_t>(i)]; }
    const std::vector<Plane> &planes() const { return planes_; }
    const std::vector<DesignLogEntry> &design_log() const { return design_log_; }

    /// Codewords stacked as a (K*p) x n adjoint block matrix, for batched
    /// distance evaluation.
    const Matrix &stacked_adjoint() const { return stacked_; }

    nlohmann::json to_json() const;
    static Codebook from_json(const nlohmann::json &j);

    void save(const std::string &path) const;
    static Codebook load(const std::string &path);

  private:
    std::vector<Plane> planes_;
    DesignMethod method_;
    std::uint64_t seed_;
    std::vector<DesignLogEntry> design_log_;
    Matrix stacked_;
};

struct QuantizeResult {
    int index;
    double distortion; // squared chordal distance to the chosen codeword
};

struct DistortionEstimate {
    double mean;
    double stderr_value; // sample stdev / sqrt(samples)
    std::int64_t samples;
};

/// K codewords drawn i.i.d. from the invariant distribution.
Codebook random_codebook(int n, int p, Field field, int K, const Rng &rng);

/// Nearest codeword in chordal distance; ties resolve to the lowest index.
/// The source plane may have a different dimension than the codewords.
QuantizeResult quantize(const Codebook &C, const Plane &Q);

/// Minimum pairwise chordal distance (not squared); exact pairwise scan.
double min_distance(const Codebook &C);

/// Monte Carlo mean of min-distortion over uniform sources in G_{n,q}.
DistortionEstimate estimate_distortion(const Codebook &C, int q, std::int64_t samples,
                                       const Rng &rng, int threads = 0);

/// Greedy max-min design: perturb one member of the closest pair toward a
/// fresh uniform plane with a geometrically annealed step, keep the change
/// only if the minimum distance does not decrease, and return the best of
/// `restarts` independent runs. Deterministic for a given rng.
Codebook maxmin_design(int n, int p, Field field, int K, int iters, int restarts, const Rng &rng,
                       int threads = 0);

namespace detail {

/// Squared distances from source generator g to every codeword; index of the
/// minimum (lowest index wins ties) and its value.
QuantizeResult quantize_generator(const Matrix &stacked_adjoint, int p, const Matrix &g);

} // namespace detail

} // namespace grassq
