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
#include <optional>
#include <utility>

#include "grassq/field.hpp"
#include "grassq/rng.hpp"

namespace grassq {

/// Parameter bundle for metric-ball computations: codeword planes live in
/// G_{n,p}, source planes in G_{n,q}. Operations normalize internally so
/// formulas see p <= q; ball volumes are symmetric in the two roles.
struct ManifoldParams {
    int n;
    int p;
    int q;
    Field field;

    ManifoldParams(int n_, int p_, int q_, Field f);

    int beta() const { return beta_of(field); }

    /// Same parameters with p <= q.
    ManifoldParams normalized() const;

    /// Dimension scaling of the ball volume: beta * min(p,q) * (n - max(p,q)).
    double exponent() const;
};

enum class VolumeKind { exact, main_order, lower_bound, upper_bound, monte_carlo };

struct VolumeResult {
    double value = 0.0;
    VolumeKind kind = VolumeKind::main_order;
    std::optional<double> stderr_value; // set only for Monte Carlo estimates
    bool valid = true;                  // radius hypothesis delta <= 1 satisfied
};

/// Leading volume coefficient c of mu(B(delta)) = c * delta^t * (1 + ...).
/// Evaluated as log-gamma sums, then exponentiated.
double volume_coefficient(const ManifoldParams &mp);
double log_volume_coefficient(const ManifoldParams &mp);

/// Second-order coefficient; zero exactly in the closed-form-exact cases
/// (complex with q = p, real with q = p + 1).
double volume_correction(const ManifoldParams &mp);

/// True when the main-order formula is the exact ball volume for delta <= 1.
bool volume_is_exact_case(const ManifoldParams &mp);

/// Main-order ball volume min(1, c * delta^t). kind == exact when the
/// closed form is exact and delta <= 1.
VolumeResult volume_main_order(const ManifoldParams &mp, double delta);

/// Two-sided bounds on the ball volume for delta <= 1; (lower, upper).
std::pair<VolumeResult, VolumeResult> volume_bounds(const ManifoldParams &mp, double delta);

/// Ball-volume estimate as the hit frequency of uniform draws against a
/// fixed center, with binomial standard error. Deterministic for a given
/// rng regardless of thread count.
VolumeResult volume_monte_carlo(const ManifoldParams &mp, double delta, std::int64_t samples,
                                const Rng &rng, int threads = 0);

/// Formula-independent oracle: adaptive quadrature of the joint principal
/// angle density over the ball, in the variables x_i = sin^2(theta_i).
/// Supported for effective dimension <= 2 after normalization.
VolumeResult volume_quadrature_oracle(const ManifoldParams &mp, double delta, double rel_tol = 1e-9);

/// Comparison curve (delta / sqrt(p))^(beta * n * p); not used internally.
double barg_volume_estimate(const ManifoldParams &mp, double delta);

namespace detail {

/// log c over the regime where the two plane dimensions sum to at most n.
double log_coeff_disjoint(int n, int p, int q, int beta);

/// log c over the intersecting regime (p + q >= n), reduced through
/// orthogonal complements.
double log_coeff_complement(int n, int p, int q, int beta);

/// Normalization constant of the joint density of x_i = sin^2(theta_i)
/// (log of the inverse Selberg integral).
double log_density_constant(int n, int p, int q, int beta);

} // namespace detail

} // namespace grassq
