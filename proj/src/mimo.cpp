// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "grassq/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "grassq/bounds.hpp"
#include "grassq/parallel.hpp"

namespace grassq {

MimoConfig::MimoConfig(int lt_, int lr_, int s_, double rho_, int rfb_, std::int64_t trials_,
                       std::uint64_t seed_)
    : lt(lt_), lr(lr_), s(s_), rho(rho_), rfb(rfb_), trials(trials_), seed(seed_)
{
    if (lt < 1 || lr < 1)
        throw std::invalid_argument("need at least one antenna on each side");
    if (s < 1 || s > lt)
        throw std::invalid_argument("need 1 <= s <= lt");
    if (rho < 0.0)
        throw std::invalid_argument("SNR must be nonnegative");
    if (rfb < 0 || rfb > 62)
        throw std::invalid_argument("feedback bits out of range");
    if (trials < 1)
        throw std::invalid_argument("need at least one trial");
}

Matrix sample_channel(int lr, int lt, Rng &rng)
{
    Matrix h(lr, lt);
    for (int j = 0; j < lt; ++j)
        for (int i = 0; i < lr; ++i)
            h(i, j) = rng.cnormal();
    return h;
}

Plane optimal_beamformer(const Matrix &H, int s)
{
    const int lt = static_cast<int>(H.cols());
    if (s < 1 || s > lt)
        throw std::invalid_argument("need 1 <= s <= lt");
    Eigen::JacobiSVD<Matrix> svd(H, Eigen::ComputeFullV);
    return Plane(svd.matrixV().leftCols(s), Field::complex);
}

int feedback_select(const Codebook &B, const Matrix &H, int s)
{
    if (B.n() != static_cast<int>(H.cols()))
        throw std::invalid_argument("dimension-mismatch: codebook ambient dimension must equal lt");
    const Plane v = optimal_beamformer(H, s);
    return detail::quantize_generator(B.stacked_adjoint(), B.p(), v.generator()).index;
}

namespace {

double log_det_rate(const Matrix &H, const Matrix &beam, double p_on)
{
    const Matrix m = H * beam; // lr x s
    const Eigen::Index lr = H.rows();
    Matrix gram = Matrix::Identity(lr, lr) + p_on * m * m.adjoint();
    Eigen::LLT<Matrix> llt(gram);
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < lr; ++i)
        logdet += 2.0 * std::log(llt.matrixL()(i, i).real());
    return logdet;
}

MeanStderr combine_blocks(const std::vector<double> &sums, const std::vector<double> &sumsqs,
                          std::int64_t n)
{
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t b = 0; b < sums.size(); ++b) {
        sum += sums[b];
        sumsq += sumsqs[b];
    }
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sumsq - nn * mean * mean) / (nn - 1.0)) : 0.0;
    return {mean, std::sqrt(var / nn)};
}

// Mean over channel draws of f(H); the channel stream depends only on the
// rng, so different statistics can share aligned draws.
template <class F>
MeanStderr channel_average(int lr, int lt, std::int64_t trials, const Rng &rng, int threads,
                           const F &f)
{
    const std::size_t nblocks =
        static_cast<std::size_t>((trials + kMonteCarloBlock - 1) / kMonteCarloBlock);
    std::vector<double> sums(nblocks, 0.0), sumsqs(nblocks, 0.0);

    for_sample_blocks(
        trials,
        [&](std::size_t block, std::int64_t begin, std::int64_t end) {
            Rng local = rng.derive(block);
            double s = 0.0, s2 = 0.0;
            for (std::int64_t k = begin; k < end; ++k) {
                const Matrix H = sample_channel(lr, lt, local);
                const double v = f(H);
                s += v;
                s2 += v * v;
            }
            sums[block] = s;
            sumsqs[block] = s2;
        },
        threads);

    return combine_blocks(sums, sumsqs, trials);
}

std::vector<double> top_eigenvalues(const Matrix &H)
{
    const Eigen::Index lr = H.rows();
    Eigen::SelfAdjointEigenSolver<Matrix> es(H * H.adjoint());
    std::vector<double> lam(static_cast<std::size_t>(lr));
    for (Eigen::Index i = 0; i < lr; ++i)
        lam[static_cast<std::size_t>(i)] = std::max(0.0, es.eigenvalues()(lr - 1 - i)); // descending
    return lam;
}

double eigen_rate(const Matrix &H, int s, double scale)
{
    const auto lam = top_eigenvalues(H);
    const int count = std::min<int>(s, static_cast<int>(lam.size()));
    double r = 0.0;
    for (int i = 0; i < count; ++i)
        r += std::log1p(scale * lam[static_cast<std::size_t>(i)]);
    return r;
}

} // namespace

MeanStderr simulate_rate(const MimoConfig &cfg, const Codebook &B, const Rng &rng, int threads)
{
    if (B.size() > cfg.codebook_size())
        throw std::invalid_argument("codebook larger than the feedback rate allows");
    if (B.n() != cfg.lt || B.p() != cfg.s || B.field() != Field::complex)
        throw std::invalid_argument("dimension-mismatch: codebook must live in G_{lt,s}(C)");

    const double p_on = cfg.p_on();
    return channel_average(cfg.lr, cfg.lt, cfg.trials, rng, threads, [&](const Matrix &H) {
        const int idx = detail::quantize_generator(B.stacked_adjoint(), B.p(),
                                                   optimal_beamformer(H, cfg.s).generator())
                            .index;
        return log_det_rate(H, B[idx].generator(), p_on);
    });
}

MeanStderr perfect_csit_rate(const MimoConfig &cfg, const Rng &rng, int threads)
{
    const double p_on = cfg.p_on();
    return channel_average(cfg.lr, cfg.lt, cfg.trials, rng, threads,
                           [&](const Matrix &H) { return eigen_rate(H, cfg.s, p_on); });
}

std::pair<double, double> mimo_eta_bounds(const MimoConfig &cfg)
{
    const ManifoldParams mp(cfg.lt, cfg.s, cfg.s, Field::complex);
    const std::int64_t K = cfg.codebook_size();
    const double d_hi = drf_upper(mp, K).value;
    const double d_lo = drf_lower(mp, K).value;
    const double eta_lo = std::clamp(1.0 - d_hi / cfg.s, 0.0, 1.0);
    const double eta_hi = std::clamp(1.0 - d_lo / cfg.s, 0.0, 1.0);
    return {eta_lo, eta_hi};
}

std::pair<double, double> predict_rate(const MimoConfig &cfg, const Rng &rng, int threads)
{
    const auto [eta_lo, eta_hi] = mimo_eta_bounds(cfg);
    const double p_on = cfg.p_on();

    // one channel stream, both eta endpoints per draw
    const std::size_t nblocks =
        static_cast<std::size_t>((cfg.trials + kMonteCarloBlock - 1) / kMonteCarloBlock);
    std::vector<double> lo_sums(nblocks, 0.0), hi_sums(nblocks, 0.0);

    for_sample_blocks(
        cfg.trials,
        [&](std::size_t block, std::int64_t begin, std::int64_t end) {
            Rng local = rng.derive(block);
            double lo = 0.0, hi = 0.0;
            for (std::int64_t k = begin; k < end; ++k) {
                const Matrix H = sample_channel(cfg.lr, cfg.lt, local);
                lo += eigen_rate(H, cfg.s, eta_lo * p_on);
                hi += eigen_rate(H, cfg.s, eta_hi * p_on);
            }
            lo_sums[block] = lo;
            hi_sums[block] = hi;
        },
        threads);

    double lo = 0.0, hi = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        lo += lo_sums[b];
        hi += hi_sums[b];
    }
    const double nn = static_cast<double>(cfg.trials);
    return {lo / nn, hi / nn};
}

RateReport evaluate_rate(const MimoConfig &cfg, const Codebook &B, const Rng &rng, int threads)
{
    RateReport r;
    r.simulated = simulate_rate(cfg, B, rng, threads);
    r.perfect_csit = perfect_csit_rate(cfg, rng, threads);
    std::tie(r.predicted_lower, r.predicted_upper) = predict_rate(cfg, rng, threads);
    std::tie(r.eta_lower, r.eta_upper) = mimo_eta_bounds(cfg);
    return r;
}

} // namespace grassq
