// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "grassq/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "grassq/parallel.hpp"
#include "grassq/plane.hpp"
#include "grassq/quadrature.hpp"

namespace grassq {

ManifoldParams::ManifoldParams(int n_, int p_, int q_, Field f) : n(n_), p(p_), q(q_), field(f)
{
    if (n < 1 || p < 1 || p > n || q < 1 || q > n)
        throw std::invalid_argument("invalid-dimension: need 1 <= p, q <= n");
}

ManifoldParams ManifoldParams::normalized() const
{
    ManifoldParams out = *this;
    if (out.p > out.q)
        std::swap(out.p, out.q);
    return out;
}

double ManifoldParams::exponent() const
{
    const ManifoldParams m = normalized();
    return static_cast<double>(beta()) * m.p * (m.n - m.q);
}

namespace detail {

double log_coeff_disjoint(int n, int p, int q, int beta)
{
    const double h = beta / 2.0;
    double s = -std::lgamma(h * p * (n - q) + 1.0);
    for (int i = 1; i <= p; ++i)
        s += std::lgamma(h * (n - i + 1)) - std::lgamma(h * (q - i + 1));
    return s;
}

double log_coeff_complement(int n, int p, int q, int beta)
{
    const double h = beta / 2.0;
    double s = -std::lgamma(h * p * (n - q) + 1.0);
    for (int i = 1; i <= n - q; ++i)
        s += std::lgamma(h * (n - i + 1)) - std::lgamma(h * (n - p - i + 1));
    return s;
}

double log_density_constant(int n, int p, int q, int beta)
{
    // inverse Selberg integral for the Jacobi-type weight
    //   |Delta(x)|^beta * prod x^(b-1) (1-x)^(a-1),
    // a = (beta/2)(q-p+1), b = (beta/2)(n-p-q+1), gamma = beta/2.
    const double g = beta / 2.0;
    const double a = g * (q - p + 1);
    const double b = g * (n - p - q + 1);
    double s = 0.0;
    for (int j = 0; j < p; ++j) {
        s -= std::lgamma(a + j * g) + std::lgamma(b + j * g) + std::lgamma(1.0 + (j + 1) * g);
        s += std::lgamma(a + b + (p + j - 1) * g) + std::lgamma(1.0 + g);
    }
    return s;
}

} // namespace detail

double log_volume_coefficient(const ManifoldParams &mp)
{
    const ManifoldParams m = mp.normalized();
    if (m.p + m.q <= m.n)
        return detail::log_coeff_disjoint(m.n, m.p, m.q, m.beta());
    return detail::log_coeff_complement(m.n, m.p, m.q, m.beta());
}

double volume_coefficient(const ManifoldParams &mp) { return std::exp(log_volume_coefficient(mp)); }

double volume_correction(const ManifoldParams &mp)
{
    const ManifoldParams m = mp.normalized();
    const double h = m.beta() / 2.0;
    const double t_half = h * m.p * (m.n - m.q);
    return -(h * (m.q - m.p + 1) - 1.0) * t_half / (t_half + 1.0);
}

bool volume_is_exact_case(const ManifoldParams &mp)
{
    const ManifoldParams m = mp.normalized();
    if (m.p == m.n && m.q == m.n)
        return true; // single-point manifold
    if (m.field == Field::complex && m.q == m.p)
        return true;
    if (m.field == Field::real && m.q == m.p + 1)
        return true;
    return false;
}

VolumeResult volume_main_order(const ManifoldParams &mp, double delta)
{
    if (delta < 0.0)
        throw std::invalid_argument("negative-radius");

    const double t = mp.exponent();
    const double c = volume_coefficient(mp);
    VolumeResult out;
    out.value = std::min(1.0, c * std::pow(delta, t));
    out.valid = delta <= 1.0;
    out.kind = (volume_is_exact_case(mp) && out.valid) ? VolumeKind::exact : VolumeKind::main_order;
    return out;
}

std::pair<VolumeResult, VolumeResult> volume_bounds(const ManifoldParams &mp, double delta)
{
    if (delta < 0.0)
        throw std::invalid_argument("negative-radius");
    if (delta > 1.0)
        throw std::invalid_argument("invalid-radius: volume bounds require delta <= 1");

    const ManifoldParams m = mp.normalized();
    const double t = m.exponent();
    const double main = volume_coefficient(m) * std::pow(delta, t);
    const double one_minus = 1.0 - delta * delta;

    double lo, hi;
    if (m.field == Field::real && m.p == m.q) {
        lo = main;
        hi = one_minus > 0.0 ? main * std::pow(one_minus, -m.p / 2.0)
                             : std::numeric_limits<double>::infinity();
    } else {
        const double g = m.beta() / 2.0 * m.p * (m.q - m.p + 1) - m.p;
        lo = main * std::pow(one_minus, g);
        hi = main;
    }

    VolumeResult lower{std::clamp(lo, 0.0, 1.0), VolumeKind::lower_bound, std::nullopt, true};
    VolumeResult upper{std::clamp(hi, 0.0, 1.0), VolumeKind::upper_bound, std::nullopt, true};
    return {lower, upper};
}

VolumeResult volume_monte_carlo(const ManifoldParams &mp, double delta, std::int64_t samples,
                                const Rng &rng, int threads)
{
    if (delta < 0.0)
        throw std::invalid_argument("negative-radius");
    if (samples < 1)
        throw std::invalid_argument("samples must be >= 1");

    const ManifoldParams m = mp.normalized();
    const int small = m.p;
    const int large = m.q;
    const double thr = delta * delta;

    // sample the smaller-dimensional plane; the center is the span of the
    // first `large` standard basis vectors, so the squared distance is
    // small - ||top rows of the generator||^2.
    const std::size_t nblocks =
        static_cast<std::size_t>((samples + kMonteCarloBlock - 1) / kMonteCarloBlock);
    std::vector<std::int64_t> hits(nblocks, 0);

    for_sample_blocks(
        samples,
        [&](std::size_t block, std::int64_t begin, std::int64_t end) {
            Rng local = rng.derive(block);
            std::int64_t h = 0;
            for (std::int64_t s = begin; s < end; ++s) {
                const Matrix g = detail::sample_generator(m.n, small, m.field, local);
                const double overlap = g.topRows(large).squaredNorm();
                const double d2 = std::clamp(static_cast<double>(small) - overlap, 0.0,
                                             static_cast<double>(small));
                if (d2 <= thr)
                    ++h;
            }
            hits[block] = h;
        },
        threads);

    std::int64_t total = 0;
    for (std::int64_t h : hits)
        total += h;

    const double f = static_cast<double>(total) / static_cast<double>(samples);
    VolumeResult out;
    out.value = f;
    out.kind = VolumeKind::monte_carlo;
    out.stderr_value = std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
    out.valid = delta <= 1.0;
    return out;
}

VolumeResult volume_quadrature_oracle(const ManifoldParams &mp, double delta, double rel_tol)
{
    if (delta < 0.0)
        throw std::invalid_argument("negative-radius");

    ManifoldParams m = mp.normalized();
    if (m.exponent() == 0.0) {
        // single-point manifold, or a source spanning the whole space:
        // the distance is identically zero
        return {1.0, VolumeKind::exact, std::nullopt, delta <= 1.0};
    }
    if (m.p + m.q > m.n) {
        // complement reduction keeps the ball volume and lands in p + q <= n
        m = ManifoldParams(m.n, m.n - m.q, m.n - m.p, m.field).normalized();
    }
    if (m.p > 2)
        throw std::invalid_argument("unsupported-dimension: quadrature oracle needs effective dimension <= 2");

    const int beta = m.beta();
    const double g = beta / 2.0;
    const double a = g * (m.q - m.p + 1);
    const double b = g * (m.n - m.p - m.q + 1);
    const double logv = detail::log_density_constant(m.n, m.p, m.q, beta);

    // One factor of the density after substituting x = sin^2(phi):
    // 2 v^(1/p) sin^(2b-1) cos^(2a-1). Exponents are >= 0, and pow keeps the
    // boundary cases finite where log-space would produce 0 * inf.
    const double v_share = std::exp(logv / m.p);
    auto weight = [&](double phi) {
        const double s = std::sin(phi);
        const double c = std::cos(phi);
        return 2.0 * v_share * std::pow(s, 2.0 * b - 1.0) * std::pow(c, 2.0 * a - 1.0);
    };

    const double d2 = delta * delta;
    auto phi_limit = [&](double budget) {
        if (budget <= 0.0)
            return 0.0;
        if (budget >= 1.0)
            return std::asin(1.0); // pi/2
        return std::asin(std::sqrt(budget));
    };

    double value = 0.0;
    if (m.p == 1) {
        const double hi = phi_limit(d2);
        value = integrate_adaptive(weight, 0.0, hi, rel_tol * 0.1).value;
    } else {
        const double hi = phi_limit(d2);
        auto outer = [&](double phi1) {
            const double x1 = std::sin(phi1) * std::sin(phi1);
            const double inner_hi = phi_limit(d2 - x1);
            if (inner_hi <= 0.0)
                return 0.0;
            auto inner = [&](double phi2) {
                const double x2 = std::sin(phi2) * std::sin(phi2);
                const double diff = std::abs(x1 - x2);
                const double vand = beta == 1 ? diff : diff * diff;
                return weight(phi2) * vand;
            };
            return weight(phi1) * integrate_adaptive(inner, 0.0, inner_hi, rel_tol * 0.05).value;
        };
        value = integrate_adaptive(outer, 0.0, hi, rel_tol * 0.1).value;
    }

    VolumeResult out;
    out.value = std::clamp(value, 0.0, 1.0);
    out.kind = VolumeKind::exact;
    out.valid = delta <= 1.0;
    return out;
}

double barg_volume_estimate(const ManifoldParams &mp, double delta)
{
    const ManifoldParams m = mp.normalized();
    return std::pow(delta / std::sqrt(static_cast<double>(m.p)),
                    static_cast<double>(m.beta()) * m.n * m.p);
}

} // namespace grassq
