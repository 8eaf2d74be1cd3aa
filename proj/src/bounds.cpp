// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "grassq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "grassq/parallel.hpp"

namespace grassq {

namespace {

BoundReport make_report(const ManifoldParams &mp)
{
    const ManifoldParams m = mp.normalized();
    BoundReport r;
    r.n = m.n;
    r.p = m.p;
    r.q = m.q;
    r.beta = m.beta();
    return r;
}

double exponent_or_throw(const ManifoldParams &mp)
{
    const double t = mp.exponent();
    if (t <= 0.0)
        throw std::invalid_argument("degenerate-manifold: single-point space, no quantization needed");
    return t;
}

} // namespace

DetailParams::DetailParams(double a_) : a(a_)
{
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("detail parameter a must lie in (0, 1)");
}

BoundReport gv_code_size(const ManifoldParams &mp, double delta)
{
    if (delta <= 0.0 || delta > 1.0)
        throw std::invalid_argument("invalid-radius: need 0 < delta <= 1");
    BoundReport r = make_report(mp);
    r.direction = BoundDirection::lower;
    r.delta = delta;
    r.asymptotic_only = true;
    r.value = 1.0 / volume_main_order(mp, delta).value;
    return r;
}

BoundReport hamming_code_size(const ManifoldParams &mp, double delta)
{
    if (delta <= 0.0 || delta > 2.0)
        throw std::invalid_argument("invalid-radius: need 0 < delta/2 <= 1");
    BoundReport r = make_report(mp);
    r.direction = BoundDirection::upper;
    r.delta = delta;
    r.asymptotic_only = true;
    r.value = 1.0 / volume_main_order(mp, delta / 2.0).value;
    return r;
}

BoundReport drf_lower(const ManifoldParams &mp, std::int64_t K)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    const double t = exponent_or_throw(mp);
    const double c = volume_coefficient(mp);
    const double x = std::pow(c * static_cast<double>(K), -2.0 / t);

    BoundReport r = make_report(mp);
    r.direction = BoundDirection::lower;
    r.K = K;
    r.size_ok = x <= 1.0;
    r.asymptotic_only = true;
    r.value = t / (t + 2.0) * x;
    return r;
}

BoundReport drf_upper(const ManifoldParams &mp, std::int64_t K)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    const double t = exponent_or_throw(mp);
    const double c = volume_coefficient(mp);
    const double x = std::pow(c * static_cast<double>(K), -2.0 / t);

    BoundReport r = make_report(mp);
    r.direction = BoundDirection::upper;
    r.K = K;
    r.size_ok = x <= 1.0;
    r.asymptotic_only = true;
    r.value = 2.0 * std::tgamma(2.0 / t) / t * x;
    return r;
}

DetailedBounds drf_detailed(const ManifoldParams &mp, std::int64_t K, DetailParams dp)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    if (!(dp.a > 0.0 && dp.a < 1.0))
        throw std::invalid_argument("detail parameter a must lie in (0, 1)");

    const ManifoldParams m = mp.normalized();
    const double t = exponent_or_throw(m);
    const int beta = m.beta();
    const double c = volume_coefficient(m);
    const double cK = c * static_cast<double>(K);
    const double x = std::pow(cK, -2.0 / t);
    const double tail = m.p * std::exp(-std::pow(cK, 1.0 - dp.a));
    const double main_lower = t / (t + 2.0) * x;
    const double main_upper = 2.0 * std::tgamma(2.0 / t) / t * x;

    DetailedBounds out;
    out.size_ok = x <= 1.0;

    if (m.field == Field::real && m.q == m.p) {
        out.lower = main_lower * std::pow(std::max(0.0, 1.0 - x), 1.0 / (m.n - m.p));
        out.upper = main_upper + tail;
    } else if ((m.field == Field::real && m.q == m.p + 1) ||
               (m.field == Field::complex && m.q == m.p)) {
        out.lower = main_lower;
        out.upper = main_upper + tail;
    } else {
        const double gamma = beta * m.p * (m.q - m.p + 1) / 2.0 - m.p;
        const double xa = std::pow(cK, -2.0 * dp.a / t);
        const double shrink = std::max(0.0, 1.0 - xa);
        out.lower = main_lower;
        out.upper = main_upper * std::pow(shrink, -2.0 * gamma / t) +
                    m.p * std::exp(-std::pow(cK, 1.0 - dp.a) * std::pow(shrink, gamma));
    }
    return out;
}

BoundReport rdf_lower(const ManifoldParams &mp, double D)
{
    if (!(D > 0.0))
        throw std::invalid_argument("nonpositive-distortion");
    const double t = exponent_or_throw(mp);
    const double c = volume_coefficient(mp);

    BoundReport r = make_report(mp);
    r.direction = BoundDirection::lower;
    r.distortion = D;
    r.radius_ok = D <= 1.0;
    r.asymptotic_only = true;
    r.value = std::pow(t * D / (2.0 * std::tgamma(2.0 / t)), -t / 2.0) / c;
    return r;
}

BoundReport rdf_upper(const ManifoldParams &mp, double D)
{
    if (!(D > 0.0))
        throw std::invalid_argument("nonpositive-distortion");
    const double t = exponent_or_throw(mp);
    const double c = volume_coefficient(mp);

    BoundReport r = make_report(mp);
    r.direction = BoundDirection::upper;
    r.distortion = D;
    r.radius_ok = D <= 1.0;
    r.asymptotic_only = true;
    r.value = std::pow((t + 2.0) * D / t, -t / 2.0) / c;
    return r;
}

double drf_asymptotic(int p, int beta, double rbar)
{
    if (p < 1 || (beta != 1 && beta != 2))
        throw std::invalid_argument("invalid p or beta");
    return p * std::exp2(-2.0 * rbar / (beta * p));
}

double rdf_asymptotic(int p, int beta, double D)
{
    if (p < 1 || (beta != 1 && beta != 2))
        throw std::invalid_argument("invalid p or beta");
    if (!(D > 0.0))
        throw std::invalid_argument("nonpositive-distortion");
    return beta * p / 2.0 * std::log2(p / D);
}

double drf_exact_circle(std::int64_t K)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    const double k = static_cast<double>(K);
    return 1.0 / (2.0 * k) - std::sin(std::numbers::pi / (2.0 * k)) / std::numbers::pi;
}

namespace {

// Mean of min_i sin^2(phi - c_i) over uniform phi in [0, pi), midpoint rule,
// for arbitrary codeword angles sorted ascending.
double circle_distortion_on_grid(const std::vector<double> &codewords, std::int64_t grid)
{
    const double pi = std::numbers::pi;
    const double cell = pi / static_cast<double>(grid);
    double sum = 0.0;
    for (std::int64_t j = 0; j < grid; ++j) {
        const double phi = (static_cast<double>(j) + 0.5) * cell;
        double best = 1.0;
        for (double c : codewords) {
            double d = std::abs(phi - c);
            d = std::min(d, pi - d); // line angles wrap with period pi
            const double s = std::sin(d);
            best = std::min(best, s * s);
        }
        sum += best;
    }
    return sum / static_cast<double>(grid);
}

} // namespace

double circle_quantizer_oracle(std::int64_t K, std::int64_t grid)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    if (grid < 10000)
        throw std::invalid_argument("grid must be >= 10^4");

    // equispaced codewords are optimal by symmetry; nearest-codeword offset
    // reduces to a remainder, so the scan is O(grid)
    const double pi = std::numbers::pi;
    const double spacing = pi / static_cast<double>(K);
    const double cell = pi / static_cast<double>(grid);
    double sum = 0.0;
    for (std::int64_t j = 0; j < grid; ++j) {
        const double phi = (static_cast<double>(j) + 0.5) * cell;
        const double r = std::fmod(phi, spacing);
        const double d = std::min(r, spacing - r);
        const double s = std::sin(d);
        sum += s * s;
    }
    return sum / static_cast<double>(grid);
}

double circle_lloyd_distortion(std::int64_t K, std::int64_t grid, int restarts, const Rng &rng)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    if (grid < 10000)
        throw std::invalid_argument("grid must be >= 10^4");

    const double pi = std::numbers::pi;
    double best = std::numeric_limits<double>::infinity();

    for (int r = 0; r < restarts; ++r) {
        Rng local = rng.derive(static_cast<std::uint64_t>(r));
        std::vector<double> cw(static_cast<std::size_t>(K));
        for (auto &c : cw)
            c = local.uniform() * pi;
        std::sort(cw.begin(), cw.end());

        // Lloyd step: assign each grid midpoint to its nearest codeword
        // (wrapping), move each codeword to its cell's circular midpoint.
        for (int it = 0; it < 200; ++it) {
            std::vector<double> sx(cw.size(), 0.0), sy(cw.size(), 0.0);
            const double cell = pi / static_cast<double>(grid);
            for (std::int64_t j = 0; j < grid; ++j) {
                const double phi = (static_cast<double>(j) + 0.5) * cell;
                std::size_t arg = 0;
                double bestd = 2.0;
                for (std::size_t i = 0; i < cw.size(); ++i) {
                    double d = std::abs(phi - cw[i]);
                    d = std::min(d, pi - d);
                    if (d < bestd) {
                        bestd = d;
                        arg = i;
                    }
                }
                // embed angle doubled so the period-pi wrap becomes a circle
                sx[arg] += std::cos(2.0 * phi);
                sy[arg] += std::sin(2.0 * phi);
            }
            bool moved = false;
            for (std::size_t i = 0; i < cw.size(); ++i) {
                if (sx[i] == 0.0 && sy[i] == 0.0)
                    continue;
                double ang = 0.5 * std::atan2(sy[i], sx[i]);
                if (ang < 0.0)
                    ang += pi;
                if (std::abs(ang - cw[i]) > 1e-12)
                    moved = true;
                cw[i] = ang;
            }
            if (!moved)
                break;
        }
        std::sort(cw.begin(), cw.end());
        best = std::min(best, circle_distortion_on_grid(cw, grid));
    }
    return best;
}

double heath_approx(int n, std::int64_t K)
{
    if (n < 2)
        throw std::invalid_argument("need n >= 2");
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    return (n - 1.0) / n * std::pow(static_cast<double>(K), -1.0 / (n - 1.0));
}

double distortion_bound_from_min_distance(const ManifoldParams &mp, std::int64_t K, double delta)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    if (delta <= 0.0 || delta > 2.0)
        throw std::invalid_argument("invalid-radius: need 0 < delta <= 2");

    const ManifoldParams m = mp.normalized();
    const double mu = volume_main_order(m, delta / 2.0).value;
    const double coverage = static_cast<double>(K) * mu;
    if (coverage > 1.0)
        throw std::invalid_argument("packing-violated: K * mu(B(delta/2)) exceeds 1");
    return delta * delta / 4.0 * coverage + m.p * (1.0 - coverage);
}

} // namespace grassq
