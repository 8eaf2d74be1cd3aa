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

#include "grassq/volume.hpp"

namespace grassq {

enum class BoundDirection { lower, upper, approx };

/// Evaluated closed-form bound plus the hypotheses it was derived under.
/// Out-of-regime inputs flag rather than fail: curves are still useful there.
struct BoundReport {
    double value = 0.0;
    BoundDirection direction = BoundDirection::approx;

    bool radius_ok = true;     // delta <= 1 (respectively D <= 1)
    bool size_ok = true;       // (cK)^(-2/t) <= 1
    bool asymptotic_only = false;

    // echoed inputs
    int n = 0, p = 0, q = 0, beta = 0;
    double delta = 0.0;
    std::int64_t K = 0;
    double distortion = 0.0;

    bool valid() const { return radius_ok && size_ok; }
};

/// Free parameter of the detailed distortion-rate bounds, in (0, 1).
struct DetailParams {
    double a = 0.5;
    DetailParams() = default;
    explicit DetailParams(double a_);
};

struct DetailedBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool size_ok = true;
};

/// Existence (Gilbert-Varshamov style) lower bound on code size at minimum
/// distance delta: 1 / mu_main(B(delta)).
BoundReport gv_code_size(const ManifoldParams &mp, double delta);

/// Impossibility (Hamming style) upper bound: 1 / mu_main(B(delta/2)).
BoundReport hamming_code_size(const ManifoldParams &mp, double delta);

/// Main-order bounds on the distortion rate function D*(K),
/// t = beta * p * (n - q):
///   lower = t/(t+2) (cK)^(-2/t),  upper = (2 Gamma(2/t)/t) (cK)^(-2/t).
BoundReport drf_lower(const ManifoldParams &mp, std::int64_t K);
BoundReport drf_upper(const ManifoldParams &mp, std::int64_t K);

/// Distortion-rate bounds with the finite-K correction terms spelled out;
/// three formula cases by field and q - p.
DetailedBounds drf_detailed(const ManifoldParams &mp, std::int64_t K, DetailParams dp = {});

/// Main-order bounds on the rate distortion function K*(D).
BoundReport rdf_lower(const ManifoldParams &mp, double D);
BoundReport rdf_upper(const ManifoldParams &mp, double D);

/// Limits for fixed p as n and log2(K) grow proportionally with ratio rbar.
double drf_asymptotic(int p, int beta, double rbar);
double rdf_asymptotic(int p, int beta, double D);

/// Verbatim closed form claimed for the K-point quantizer on G_{2,1}(R).
/// Tests treat circle_quantizer_oracle as authoritative; this is reported
/// alongside for comparison.
double drf_exact_circle(std::int64_t K);

/// Numerical distortion of the optimal (equispaced) K-point quantizer of
/// lines in R^2: midpoint-rule average of min_i sin^2(angular distance) over
/// a grid of line angles in [0, pi).
double circle_quantizer_oracle(std::int64_t K, std::int64_t grid = 1000000);

/// Best distortion found by 1-D Lloyd iterations from random restarts, for
/// cross-checking the equispaced construction.
double circle_lloyd_distortion(std::int64_t K, std::int64_t grid, int restarts, const Rng &rng);

/// Reference approximation ((n-1)/n) K^(-1/(n-1)) for single lines in C^n;
/// coincides with drf_lower there.
double heath_approx(int n, std::int64_t K);

/// Distortion guarantee of a code with minimum distance delta:
/// (delta^2/4) K mu(B(delta/2)) + p (1 - K mu(B(delta/2))), using the
/// main-order volume.
double distortion_bound_from_min_distance(const ManifoldParams &mp, std::int64_t K, double delta);

} // namespace grassq
