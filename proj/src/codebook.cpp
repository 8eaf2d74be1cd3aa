// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#include "grassq/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "grassq/parallel.hpp"

namespace grassq {

const char *to_string(DesignMethod m)
{
    switch (m) {
    case DesignMethod::random:
        return "random";
    case DesignMethod::maxmin:
        return "maxmin";
    default:
        return "loaded";
    }
}

DesignMethod design_method_from_string(const std::string &s)
{
    if (s == "random")
        return DesignMethod::random;
    if (s == "maxmin")
        return DesignMethod::maxmin;
    if (s == "loaded")
        return DesignMethod::loaded;
    throw std::invalid_argument("unknown design method '" + s + "'");
}

namespace {

Matrix stack_adjoints(const std::vector<Plane> &planes)
{
    const int K = static_cast<int>(planes.size());
    const int n = planes.front().n();
    const int p = planes.front().p();
    Matrix stacked(static_cast<Eigen::Index>(K) * p, n);
    for (int i = 0; i < K; ++i)
        stacked.middleRows(static_cast<Eigen::Index>(i) * p, p) = planes[static_cast<std::size_t>(i)].generator().adjoint();
    return stacked;
}

} // namespace

Codebook::Codebook(std::vector<Plane> planes, DesignMethod method, std::uint64_t seed,
                   std::vector<DesignLogEntry> design_log)
    : planes_(std::move(planes)), method_(method), seed_(seed), design_log_(std::move(design_log))
{
    if (planes_.empty())
        throw std::invalid_argument("codebook needs at least one codeword");
    const int n = planes_.front().n();
    const int p = planes_.front().p();
    const Field f = planes_.front().field();
    for (const Plane &pl : planes_)
        if (pl.n() != n || pl.p() != p || pl.field() != f)
            throw std::invalid_argument("dimension-mismatch: codewords must share (n, p, field)");
    stacked_ = stack_adjoints(planes_);
}

nlohmann::json Codebook::to_json() const
{
    nlohmann::json planes = nlohmann::json::array();
    for (const Plane &pl : planes_)
        planes.push_back(pl.to_json());
    return nlohmann::json{{"n", n()},           {"p", p()},
                          {"field", grassq::to_string(field())}, {"K", size()},
                          {"method", grassq::to_string(method_)}, {"seed", seed_},
                          {"planes", std::move(planes)}};
}

Codebook Codebook::from_json(const nlohmann::json &j)
{
    for (const char *key : {"n", "p", "field", "K", "method", "seed", "planes"})
        if (!j.is_object() || !j.contains(key))
            throw std::invalid_argument(std::string("schema-mismatch: codebook object needs '") + key + "'");

    const int K = j.at("K").get<int>();
    const auto &arr = j.at("planes");
    if (!arr.is_array() || static_cast<int>(arr.size()) != K || K < 1)
        throw std::invalid_argument("schema-mismatch: planes array must hold K >= 1 entries");

    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    const Field field = field_from_string(j.at("field").get<std::string>());

    std::vector<Plane> planes;
    planes.reserve(static_cast<std::size_t>(K));
    for (const auto &pj : arr) {
        Plane pl = Plane::from_json(pj);
        if (pl.n() != n || pl.p() != p || pl.field() != field)
            throw std::invalid_argument("schema-mismatch: plane entry contradicts codebook header");
        planes.push_back(std::move(pl));
    }
    return Codebook(std::move(planes), design_method_from_string(j.at("method").get<std::string>()),
                    j.at("seed").get<std::uint64_t>());
}

void Codebook::save(const std::string &path) const
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << to_json().dump(2) << '\n';
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

Codebook Codebook::load(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("file-not-found: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument("schema-mismatch: '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
}

Codebook random_codebook(int n, int p, Field field, int K, const Rng &rng)
{
    if (K < 1)
        throw std::invalid_argument("code size K must be >= 1");
    std::vector<Plane> planes;
    planes.reserve(static_cast<std::size_t>(K));
    Rng local = rng.derive(0);
    for (int i = 0; i < K; ++i)
        planes.emplace_back(sample_uniform(n, p, field, local));
    return Codebook(std::move(planes), DesignMethod::random, rng.seed());
}

namespace detail {

QuantizeResult quantize_generator(const Matrix &stacked_adjoint, int p, const Matrix &g)
{
    const int K = static_cast<int>(stacked_adjoint.rows()) / p;
    const double m = static_cast<double>(std::min<Eigen::Index>(p, g.cols()));

    const Matrix prod = stacked_adjoint * g; // (K*p) x q
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < K; ++i) {
        const double overlap = prod.middleRows(static_cast<Eigen::Index>(i) * p, p).squaredNorm();
        const double d2 = std::clamp(m - overlap, 0.0, m);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return {best, best_d2};
}

} // namespace detail

QuantizeResult quantize(const Codebook &C, const Plane &Q)
{
    if (Q.n() != C.n() || Q.field() != C.field())
        throw std::invalid_argument("dimension-mismatch: source plane incompatible with codebook");
    return detail::quantize_generator(C.stacked_adjoint(), C.p(), Q.generator());
}

double min_distance(const Codebook &C)
{
    if (C.size() < 2)
        throw std::invalid_argument("singleton-codebook: minimum distance needs K >= 2");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < C.size(); ++i)
        for (int j = i + 1; j < C.size(); ++j)
            best = std::min(best, detail::distance_sq(C[i].generator(), C[j].generator()));
    return std::sqrt(best);
}

DistortionEstimate estimate_distortion(const Codebook &C, int q, std::int64_t samples,
                                       const Rng &rng, int threads)
{
    if (samples < 100)
        throw std::invalid_argument("need at least 100 samples");
    if (q < 1 || q > C.n())
        throw std::invalid_argument("invalid-dimension: need 1 <= q <= n");

    const std::size_t nblocks =
        static_cast<std::size_t>((samples + kMonteCarloBlock - 1) / kMonteCarloBlock);
    std::vector<double> sums(nblocks, 0.0), sumsqs(nblocks, 0.0);

    for_sample_blocks(
        samples,
        [&](std::size_t block, std::int64_t begin, std::int64_t end) {
            Rng local = rng.derive(block);
            double s = 0.0, s2 = 0.0;
            for (std::int64_t k = begin; k < end; ++k) {
                const Matrix g = grassq::detail::sample_generator(C.n(), q, C.field(), local);
                const double d2 = grassq::detail::quantize_generator(C.stacked_adjoint(), C.p(), g).distortion;
                s += d2;
                s2 += d2 * d2;
            }
            sums[block] = s;
            sumsqs[block] = s2;
        },
        threads);

    double sum = 0.0, sumsq = 0.0;
    for (std::size_t b = 0; b < nblocks; ++b) {
        sum += sums[b];
        sumsq += sumsqs[b];
    }
    const double nn = static_cast<double>(samples);
    const double mean = sum / nn;
    const double var = std::max(0.0, (sumsq - nn * mean * mean) / (nn - 1.0));
    return {mean, std::sqrt(var / nn), samples};
}

namespace {

struct DesignState {
    std::vector<Matrix> generators;
    std::vector<std::vector<double>> dist; // pairwise squared distances
    std::vector<double> row_min;
    std::vector<int> row_arg;

    double global_min(int &i_out, int &j_out) const
    {
        double best = std::numeric_limits<double>::infinity();
        int bi = 0;
        for (int i = 0; i < static_cast<int>(row_min.size()); ++i)
            if (row_min[static_cast<std::size_t>(i)] < best) {
                best = row_min[static_cast<std::size_t>(i)];
                bi = i;
            }
        i_out = bi;
        j_out = row_arg[static_cast<std::size_t>(bi)];
        return best;
    }

    void recompute_row(int i)
    {
        const int K = static_cast<int>(generators.size());
        double best = std::numeric_limits<double>::infinity();
        int arg = i == 0 ? 1 : 0;
        for (int j = 0; j < K; ++j) {
            if (j == i)
                continue;
            const double d = dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (d < best) {
                best = d;
                arg = j;
            }
        }
        row_min[static_cast<std::size_t>(i)] = best;
        row_arg[static_cast<std::size_t>(i)] = arg;
    }
};

// One full max-min run from a random start; returns achieved min squared
// distance, final generators, and the accepted-step log.
double design_run(int n, int p, Field field, int K, int iters, Rng rng,
                  std::vector<Matrix> &out_gens, std::vector<DesignLogEntry> &out_log)
{
    using grassq::detail::distance_sq;
    using grassq::detail::sample_generator;

    DesignState st;
    st.generators.reserve(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
        st.generators.push_back(sample_generator(n, p, field, rng));

    st.dist.assign(static_cast<std::size_t>(K), std::vector<double>(static_cast<std::size_t>(K), 0.0));
    for (int i = 0; i < K; ++i)
        for (int j = i + 1; j < K; ++j) {
            const double d = distance_sq(st.generators[static_cast<std::size_t>(i)],
                                         st.generators[static_cast<std::size_t>(j)]);
            st.dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = d;
            st.dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = d;
        }
    st.row_min.assign(static_cast<std::size_t>(K), 0.0);
    st.row_arg.assign(static_cast<std::size_t>(K), 0);
    for (int i = 0; i < K; ++i)
        st.recompute_row(i);

    const double step_hi = 1.0, step_lo = 1e-3;
    std::vector<double> cand_row(static_cast<std::size_t>(K));

    int wi, wj;
    double current = st.global_min(wi, wj);
    out_log.push_back({0, std::sqrt(current)});

    for (int it = 0; it < iters; ++it) {
        current = st.global_min(wi, wj);
        const int victim = (rng.bits() & 1u) ? wj : wi;

        const double frac = iters > 1 ? static_cast<double>(it) / (iters - 1) : 0.0;
        const double step = step_hi * std::pow(step_lo / step_hi, frac);

        Matrix cand = st.generators[static_cast<std::size_t>(victim)] +
                      step * sample_generator(n, p, field, rng);
        grassq::detail::orthonormalize(cand);

        double cand_min = std::numeric_limits<double>::infinity();
        for (int j = 0; j < K; ++j) {
            if (j == victim)
                continue;
            const double d = distance_sq(cand, st.generators[static_cast<std::size_t>(j)]);
            cand_row[static_cast<std::size_t>(j)] = d;
            cand_min = std::min(cand_min, d);
        }

        // accept iff the overall minimum distance does not decrease
        double others_min = std::numeric_limits<double>::infinity();
        for (int i = 0; i < K; ++i) {
            if (i == victim)
                continue;
            const double rm = st.row_min[static_cast<std::size_t>(i)];
            if (st.row_arg[static_cast<std::size_t>(i)] != victim)
                others_min = std::min(others_min, rm);
            else {
                double m = std::numeric_limits<double>::infinity();
                for (int j = 0; j < K; ++j)
                    if (j != i && j != victim)
                        m = std::min(m, st.dist[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                others_min = std::min(others_min, m);
            }
        }
        const double new_min = std::min(others_min, cand_min);
        if (new_min < current)
            continue;

        st.generators[static_cast<std::size_t>(victim)] = std::move(cand);
        for (int j = 0; j < K; ++j) {
            if (j == victim)
                continue;
            const double d = cand_row[static_cast<std::size_t>(j)];
            const double old = st.dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(victim)];
            st.dist[static_cast<std::size_t>(victim)][static_cast<std::size_t>(j)] = d;
            st.dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(victim)] = d;
            auto &rm = st.row_min[static_cast<std::size_t>(j)];
            auto &ra = st.row_arg[static_cast<std::size_t>(j)];
            if (d <= rm) {
                rm = d;
                ra = victim;
            } else if (ra == victim && d > old) {
                st.recompute_row(j);
            }
        }
        st.recompute_row(victim);

        if (new_min > current)
            out_log.push_back({it + 1, std::sqrt(new_min)});
    }

    int i, j;
    const double final_min = st.global_min(i, j);
    out_gens = std::move(st.generators);
    return final_min;
}

} // namespace

Codebook maxmin_design(int n, int p, Field field, int K, int iters, int restarts, const Rng &rng,
                       int threads)
{
    if (K < 2)
        throw std::invalid_argument("max-min design needs K >= 2");
    if (iters < 0 || restarts < 1)
        throw std::invalid_argument("need iters >= 0 and restarts >= 1");

    std::vector<double> scores(static_cast<std::size_t>(restarts));
    std::vector<std::vector<Matrix>> gens(static_cast<std::size_t>(restarts));
    std::vector<std::vector<DesignLogEntry>> logs(static_cast<std::size_t>(restarts));

    for_blocks(
        static_cast<std::size_t>(restarts),
        [&](std::size_t r) {
            scores[r] = design_run(n, p, field, K, iters, rng.derive(r), gens[r], logs[r]);
        },
        threads);

    std::size_t best = 0;
    for (std::size_t r = 1; r < gens.size(); ++r)
        if (scores[r] > scores[best])
            best = r;

    std::vector<Plane> planes;
    planes.reserve(static_cast<std::size_t>(K));
    for (Matrix &g : gens[best])
        planes.emplace_back(std::move(g), field);
    return Codebook(std::move(planes), DesignMethod::maxmin, rng.seed(), std::move(logs[best]));
}

} // namespace grassq
