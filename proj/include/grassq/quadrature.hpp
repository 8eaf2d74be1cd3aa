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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace grassq {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
// Columns: node, Gauss weight (0 for Kronrod-only nodes), Kronrod weight.
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class F> std::pair<double, double> g7k15(const F &f, double a, double b)
{
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double y0 = f(mid);
    double g7 = kG7K15[0][1] * y0;
    double k15 = kG7K15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kG7K15[i][0];
        const double yi = f(mid + dx) + f(mid - dx);
        g7 += kG7K15[i][1] * yi;
        k15 += kG7K15[i][2] * yi;
    }
    g7 *= half;
    k15 *= half;

    double err = std::abs(k15 - g7);
    err = 200.0 * err * std::sqrt(err > 0 ? err : 0.0);
    return {k15, err};
}

} // namespace detail

/// Adaptive 1-D integration of f over [a, b] to the requested relative
/// tolerance (absolute tolerance as a floor). Bisects the worst interval
/// first; max_intervals caps the subdivision.
template <class F>
QuadResult integrate_adaptive(const F &f, double a, double b, double rel_tol = 1e-9,
                              double abs_tol = 0.0, std::size_t max_intervals = 4096)
{
    QuadResult out;
    if (!(b > a))
        return out;

    struct Interval {
        double a, b, value, error;
    };

    auto [v0, e0] = detail::g7k15(f, a, b);
    std::vector<Interval> heap{{a, b, v0, e0}};
    double total_value = v0;
    double total_error = e0;

    auto worse = [](const Interval &x, const Interval &y) { return x.error < y.error; };
    std::make_heap(heap.begin(), heap.end(), worse);

    while (total_error > abs_tol && total_error > rel_tol * std::abs(total_value)) {
        if (heap.size() >= max_intervals) {
            out.converged = false;
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), worse);
        Interval cur = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (cur.a + cur.b);
        auto [vl, el] = detail::g7k15(f, cur.a, mid);
        auto [vr, er] = detail::g7k15(f, mid, cur.b);

        total_value += vl + vr - cur.value;
        total_error += el + er - cur.error;

        heap.push_back({cur.a, mid, vl, el});
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back({mid, cur.b, vr, er});
        std::push_heap(heap.begin(), heap.end(), worse);

        if (mid <= cur.a || mid >= cur.b)
            break; // interval at floating point resolution
    }

    out.value = total_value;
    out.error = total_error;
    return out;
}

} // namespace grassq
