// SPDX-License-Identifier: Apache-2.0
//
// grassq: quantization bounds and codebook tools on Grassmann manifolds
// Copyright (C) 2026 the grassq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned in code.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "grassq/bounds.hpp"
#include "grassq/codebook.hpp"
#include "grassq/mimo.hpp"
#include "grassq/parallel.hpp"
#include "grassq/plane.hpp"
#include "grassq/volume.hpp"

using namespace grassq;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &msg)
    {
        if (!cond) {
            ok = false;
            if (!detail.empty())
                detail += "; ";
            detail += msg;
        }
    }
    void note(const std::string &msg)
    {
        if (!detail.empty())
            detail += "; ";
        detail += msg;
    }
};

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. exact-case volume formula for lines in C^n
Check criterion1()
{
    Check c;
    for (int n = 2; n <= 8; ++n)
        for (double d : {0.2, 0.5, 0.9}) {
            const double got = volume_main_order({n, 1, 1, Field::complex}, d).value;
            const double want = std::pow(d, 2.0 * (n - 1));
            c.require(std::abs(got - want) <= 1e-12,
                      "n=" + std::to_string(n) + " delta=" + fmt(d) + " err=" + fmt(got - want));
        }
    return c;
}

// 2. Monte Carlo vs the exact complex formula on G_{4,2}(C)
Check criterion2()
{
    Check c;
    const ManifoldParams mp{4, 2, 2, Field::complex};
    const std::int64_t N = 1000000;
    const Rng rng(20250402);
    int stream = 0;
    for (double d : {0.4, 0.6, 0.8}) {
        const double mu = 0.5 * std::pow(d, 8.0);
        const auto mc = volume_monte_carlo(mp, d, N, rng.derive(static_cast<std::uint64_t>(stream++)));
        const double sigma = std::sqrt(mu * (1.0 - mu) / static_cast<double>(N));
        c.require(std::abs(mc.value - mu) <= 4.0 * sigma,
                  "delta=" + fmt(d) + " mc=" + fmt(mc.value) + " formula=" + fmt(mu) +
                      " dev=" + fmt(std::abs(mc.value - mu) / sigma) + " sigma");
    }
    return c;
}

// 3. quadrature oracle vs bounds and exact cases over random configurations
Check criterion3()
{
    Check c;
    Rng rng(893214);
    int tested = 0, exact_cases = 0;
    while (tested < 50) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const int p = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Field f = rng.bits() & 1 ? Field::complex : Field::real;
        const ManifoldParams mp{n, p, q, f};
        const int pe = std::min({p, q, n - p, n - q});
        if (pe < 1 || pe > 2 || mp.exponent() <= 0.0)
            continue;
        const double delta = 0.15 + 0.85 * rng.uniform();
        ++tested;

        const double oracle = volume_quadrature_oracle(mp, delta).value;
        const auto [lo, hi] = volume_bounds(mp, delta);
        c.require(oracle >= lo.value - 1e-9 && oracle <= hi.value + 1e-9,
                  "config (" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) +
                      "," + to_string(f) + ") delta=" + fmt(delta) + " oracle=" + fmt(oracle) +
                      " bounds=[" + fmt(lo.value) + "," + fmt(hi.value) + "]");

        if (volume_is_exact_case(mp)) {
            ++exact_cases;
            const double formula = volume_coefficient(mp) * std::pow(delta, mp.exponent());
            c.require(std::abs(oracle - formula) <= 1e-6 * std::max(formula, 1e-300),
                      "exact case (" + std::to_string(n) + "," + std::to_string(p) + "," +
                          std::to_string(q) + ") rel err=" + fmt(std::abs(oracle - formula) / formula));
        }
    }
    c.note("50 configs, " + std::to_string(exact_cases) + " exact-case");
    return c;
}

// 4. complement duality of the squared chordal distance
Check criterion4()
{
    Check c;
    const std::array<std::array<int, 3>, 10> configs{{{3, 1, 1},
                                                      {4, 1, 2},
                                                      {4, 2, 2},
                                                      {5, 2, 3},
                                                      {5, 1, 3},
                                                      {6, 2, 4},
                                                      {6, 3, 3},
                                                      {7, 3, 4},
                                                      {7, 2, 2},
                                                      {8, 3, 5}}};
    Rng rng(77211);
    double worst = 0.0;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const auto [n, p, q] = std::array{configs[k][0], configs[k][1], configs[k][2]};
        const Field f = k % 2 ? Field::real : Field::complex;
        Rng local = rng.derive(k);
        for (int rep = 0; rep < 1000; ++rep) {
            const Plane P = sample_uniform(n, p, f, local);
            const Plane Q = sample_uniform(n, q, f, local);
            const double err =
                std::abs(chordal_distance_sq(P, Q) - chordal_distance_sq(complement(P), complement(Q)));
            worst = std::max(worst, err);
        }
    }
    c.require(worst <= 1e-9, "worst deviation " + fmt(worst));
    c.note("10^4 pairs, worst dev " + fmt(worst));
    return c;
}

// 5. random-codebook distortion sandwich on G_{4,2}(C)
Check criterion5()
{
    Check c;
    const ManifoldParams mp{4, 2, 2, Field::complex};
    const int seeds = 20;
    const std::int64_t samples = 100000;
    for (std::int64_t K : {16, 64, 256, 1024}) {
        double sum = 0.0, var_sum = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const Codebook cb = random_codebook(4, 2, Field::complex,
                                                static_cast<int>(K),
                                                Rng(41000 + static_cast<unsigned>(s), static_cast<std::uint64_t>(K)));
            const auto est = estimate_distortion(cb, 2, samples,
                                                 Rng(52000 + static_cast<unsigned>(s), static_cast<std::uint64_t>(K)));
            sum += est.mean;
            var_sum += est.stderr_value * est.stderr_value;
        }
        const double mean = sum / seeds;
        const double sigma = std::sqrt(var_sum) / seeds; // stderr of the 20-seed average
        const auto db = drf_detailed(mp, K);
        c.require(mean >= db.lower,
                  "K=" + std::to_string(K) + " mean=" + fmt(mean) + " below lower=" + fmt(db.lower));
        c.require(mean <= db.upper + 3.0 * sigma,
                  "K=" + std::to_string(K) + " mean=" + fmt(mean) + " above upper=" + fmt(db.upper) +
                      "+3*" + fmt(sigma));
    }
    return c;
}

// 6. circle quantizer oracle vs detailed bounds and asymptotic constant
Check criterion6()
{
    Check c;
    const ManifoldParams mp{2, 1, 1, Field::real};
    const std::int64_t grid = 1000000;
    for (std::int64_t K : {4, 8, 16, 32, 64}) {
        const double oracle = circle_quantizer_oracle(K, grid);
        const auto db = drf_detailed(mp, K, DetailParams{0.5});
        c.require(oracle >= db.lower && oracle <= db.upper,
                  "K=" + std::to_string(K) + " oracle=" + fmt(oracle) + " bounds=[" + fmt(db.lower) +
                      "," + fmt(db.upper) + "]");
    }
    const double scaled = 64.0 * 64.0 * circle_quantizer_oracle(64, grid);
    const double limit = std::numbers::pi * std::numbers::pi / 12.0;
    c.require(std::abs(scaled / limit - 1.0) <= 0.02,
              "K^2 oracle(64)=" + fmt(scaled) + " vs pi^2/12=" + fmt(limit));

    double max_rel = 0.0;
    for (std::int64_t K : {1, 2, 4, 8, 16, 32, 64})
        max_rel = std::max(max_rel, std::abs(drf_exact_circle(K) - circle_quantizer_oracle(K, grid)) /
                                        circle_quantizer_oracle(K, grid));
    c.note("stated closed form deviates from oracle by up to " + fmt(100.0 * max_rel) +
           "% (reported, not asserted)");
    return c;
}

// 7. reference approximation coincides with the lower bound for lines in C^n
Check criterion7()
{
    Check c;
    double worst = 0.0;
    for (int n = 2; n <= 10; ++n)
        for (std::int64_t K = 2; K <= 4096; K *= 2) {
            const double h = heath_approx(n, K);
            const double d = drf_lower({n, 1, 1, Field::complex}, K).value;
            worst = std::max(worst, std::abs(h - d) / h);
        }
    c.require(worst <= 1e-15, "max relative gap " + fmt(worst));
    c.note("max relative gap " + fmt(worst));
    return c;
}

// 8. max-min design quality
Check criterion8()
{
    Check c;
    const Codebook two = maxmin_design(2, 1, Field::real, 2, 2000, 8, Rng(61001));
    const double md = min_distance(two);
    c.require(md >= 0.999, "G_{2,1}(R) K=2 min distance " + fmt(md));

    const Codebook designed = maxmin_design(4, 2, Field::complex, 16, 2000, 8, Rng(61002));
    const auto est_d = estimate_distortion(designed, 2, 100000, Rng(61003));

    double rnd_sum = 0.0;
    for (int s = 0; s < 20; ++s)
        rnd_sum += estimate_distortion(random_codebook(4, 2, Field::complex, 16,
                                                       Rng(61100 + static_cast<unsigned>(s))),
                                       2, 100000, Rng(61200 + static_cast<unsigned>(s)))
                       .mean;
    const double rnd_avg = rnd_sum / 20.0;
    c.require(est_d.mean + 2.0 * est_d.stderr_value <= rnd_avg,
              "designed=" + fmt(est_d.mean) + " not below random avg=" + fmt(rnd_avg) + " by 2 sigma");
    c.note("designed=" + fmt(est_d.mean) + " random avg=" + fmt(rnd_avg) + " min_dist=" + fmt(md));
    return c;
}

// 9. MIMO band-consistency and convergence to perfect feedback
Check criterion9()
{
    Check c;
    const int lt = 4, lr = 2, s = 2;
    const std::int64_t trials = 100000;

    Codebook cb16 = maxmin_design(lt, s, Field::complex, 16, 2000, 8, Rng(71001, 16));
    Codebook cb256 = maxmin_design(lt, s, Field::complex, 256, 1500, 4, Rng(71001, 256));
    Codebook cb4096 = maxmin_design(lt, s, Field::complex, 4096, 300, 2, Rng(71001, 4096));

    double gap_rfb4_10db = 0.0, gap_rfb12_10db = 0.0;
    for (double rho_db : {0.0, 10.0}) {
        const double rho = std::pow(10.0, rho_db / 10.0);
        for (int rfb : {4, 8}) {
            const Codebook &cb = rfb == 4 ? cb16 : cb256;
            const MimoConfig cfg(lt, lr, s, rho, rfb, trials, 71002);
            const auto rep = evaluate_rate(cfg, cb, Rng(71002, static_cast<std::uint64_t>(rfb)));
            const double sl = rep.predicted_lower - 3.0 * rep.simulated.stderr_value;
            const double sh = rep.predicted_upper + 3.0 * rep.simulated.stderr_value;
            const bool inside = rep.simulated.mean >= sl && rep.simulated.mean <= sh;
            c.require(inside, "rho=" + fmt(rho_db) + "dB rfb=" + std::to_string(rfb) + " sim=" +
                                  fmt(rep.simulated.mean) + " band=[" + fmt(rep.predicted_lower) +
                                  "," + fmt(rep.predicted_upper) + "] 3sigma=" +
                                  fmt(3.0 * rep.simulated.stderr_value));
            if (rho_db == 10.0 && rfb == 4)
                gap_rfb4_10db = rep.perfect_csit.mean - rep.simulated.mean;
        }
    }

    {
        const MimoConfig cfg(lt, lr, s, 10.0, 12, trials, 71002);
        const auto sim = simulate_rate(cfg, cb4096, Rng(71002, 12));
        const auto perfect = perfect_csit_rate(cfg, Rng(71002, 12));
        gap_rfb12_10db = perfect.mean - sim.mean;
    }
    c.require(gap_rfb12_10db < gap_rfb4_10db,
              "gap(rfb=12)=" + fmt(gap_rfb12_10db) + " not below gap(rfb=4)=" + fmt(gap_rfb4_10db));
    c.note("gap 10dB: rfb=4 " + fmt(gap_rfb4_10db) + " -> rfb=12 " + fmt(gap_rfb12_10db));
    return c;
}

std::string run_cli(const std::string &args, int *exit_code)
{
    const std::string cmd = std::string(GRASSQ_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        *exit_code = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
        out.append(buf, got);
    const int st = pclose(pipe);
    *exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return out;
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 10. CLI determinism: identical flags and seed give identical bytes
Check criterion10()
{
    Check c;
    const std::vector<std::string> cmds = {
        "volume --n 4 --p 2 --field complex --delta 0.3,0.7 --samples 20000 --seed 7",
        "bounds drf --n 8 --p 2 --field complex --K 256..4096 --seed 7",
        "bounds packing --n 4 --p 2 --field complex --delta 0.25,0.5 --seed 7",
        "mimo --lt 2 --lr 2 --s 1 --rfb 3 --rho-db 5 --trials 2000 --design-iters 50 "
        "--design-restarts 2 --seed 7",
        "volume --n 4 --p 2 --field complex --delta 0.5 --samples 20000 --seed 7 --format json",
    };
    for (const auto &cmd : cmds) {
        int e1 = 0, e2 = 0;
        const std::string a = run_cli(cmd, &e1);
        const std::string b = run_cli(cmd, &e2);
        c.require(e1 == 0 && e2 == 0, "exit codes " + std::to_string(e1) + "/" + std::to_string(e2) +
                                          " for: " + cmd);
        c.require(!a.empty() && a == b, "outputs differ for: " + cmd);
    }

    // design artifact bytes
    int e1 = 0, e2 = 0;
    run_cli("design --n 3 --p 1 --field complex --K 4 --iters 200 --restarts 2 --seed 9 "
            "--out /tmp/grassq_acc_cb1.json",
            &e1);
    run_cli("design --n 3 --p 1 --field complex --K 4 --iters 200 --restarts 2 --seed 9 "
            "--out /tmp/grassq_acc_cb2.json",
            &e2);
    c.require(e1 == 0 && e2 == 0, "design exit codes");
    const std::string f1 = slurp("/tmp/grassq_acc_cb1.json");
    c.require(!f1.empty() && f1 == slurp("/tmp/grassq_acc_cb2.json"), "codebook artifacts differ");
    return c;
}

} // namespace

int main()
{
    set_default_thread_count(default_thread_count());

    struct Criterion {
        const char *name;
        std::function<Check()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"exact-case volume, lines in C^n", criterion1},
        {"Monte Carlo vs exact formula on G_{4,2}(C)", criterion2},
        {"quadrature oracle within bounds, exact cases to 1e-6", criterion3},
        {"complement duality over 10^4 pairs", criterion4},
        {"random-codebook distortion sandwich on G_{4,2}(C)", criterion5},
        {"circle quantizer oracle vs detailed bounds", criterion6},
        {"reference approximation identity for lines in C^n", criterion7},
        {"max-min design quality", criterion8},
        {"MIMO band-consistency and feedback convergence", criterion9},
        {"CLI byte determinism", criterion10},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = criteria[i].fn();
        } catch (const std::exception &e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2zu: %s  %s (%.1f s)%s%s\n", i + 1, c.ok ? "PASS" : "FAIL",
                    criteria[i].name, dt, c.detail.empty() ? "" : " -- ", c.detail.c_str());
        std::fflush(stdout);
        failures += c.ok ? 0 : 1;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
