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
#include <utility>

#include "grassq/codebook.hpp"
#include "grassq/plane.hpp"

namespace grassq {

/// Flat Rayleigh-fading link with lt transmit and lr receive antennas,
/// s equal-power active beams, and rfb feedback bits per channel use.
struct MimoConfig {
    int lt;
    int lr;
    int s;
    double rho; // average received SNR, linear
    int rfb;
    std::int64_t trials;
    std::uint64_t seed = 0;

    MimoConfig(int lt_, int lr_, int s_, double rho_, int rfb_, std::int64_t trials_,
               std::uint64_t seed_ = 0);

    double p_on() const { return rho / s; }
    std::int64_t codebook_size() const { return std::int64_t{1} << rfb; }
};

struct MeanStderr {
    double mean;
    double stderr_value;
};

/// Simulated and predicted information rates, in nats per channel use.
struct RateReport {
    MeanStderr simulated{0.0, 0.0};
    double predicted_lower = 0.0;
    double predicted_upper = 0.0;
    MeanStderr perfect_csit{0.0, 0.0};
    double eta_lower = 0.0;
    double eta_upper = 0.0;
};

/// lr x lt matrix of i.i.d. CN(0,1) entries.
Matrix sample_channel(int lr, int lt, Rng &rng);

/// Span of the right singular vectors for the s largest singular values.
Plane optimal_beamformer(const Matrix &H, int s);

/// Codeword index minimizing the squared chordal distance to the optimal
/// beamformer; ties resolve to the lowest index.
int feedback_select(const Codebook &B, const Matrix &H, int s);

/// Monte Carlo mean of ln det(I + P_on H P P' H') with the chordal feedback
/// rule selecting P from B each trial.
MeanStderr simulate_rate(const MimoConfig &cfg, const Codebook &B, const Rng &rng, int threads = 0);

/// Monte Carlo mean of sum_{i<=s} ln(1 + P_on lambda_i) over channel draws,
/// lambda_i the top eigenvalues of H H'.
MeanStderr perfect_csit_rate(const MimoConfig &cfg, const Rng &rng, int threads = 0);

/// Power-efficiency interval (eta_lower, eta_upper) from the distortion-rate
/// bounds at K = 2^rfb: eta = 1 - D/s, clamped to [0, 1].
std::pair<double, double> mimo_eta_bounds(const MimoConfig &cfg);

/// Predicted rate band: E[sum ln(1 + eta P_on lambda_i)] over channel draws
/// evaluated at both eta endpoints. Returns (lower, upper).
std::pair<double, double> predict_rate(const MimoConfig &cfg, const Rng &rng, int threads = 0);

/// Runs simulation, prediction, and the perfect-feedback reference on
/// aligned channel streams.
RateReport evaluate_rate(const MimoConfig &cfg, const Codebook &B, const Rng &rng, int threads = 0);

} // namespace grassq
