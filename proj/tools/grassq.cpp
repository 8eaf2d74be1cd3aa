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
// Batch front-end. Every subcommand echoes its parameters and seed and
// writes plot-ready CSV or JSON; identical invocations reproduce identical
// bytes. Exit codes: 0 success, 2 usage, 3 all rows numerically invalid,
// 4 I/O failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "grassq/bounds.hpp"
#include "grassq/codebook.hpp"
#include "grassq/mimo.hpp"
#include "grassq/parallel.hpp"
#include "grassq/plane.hpp"
#include "grassq/volume.hpp"

namespace {

using nlohmann::json;
using namespace grassq;

constexpr std::uint64_t kDefaultSeed = 1234567;

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class Table {
  public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(json row) { rows_.push_back(std::move(row)); }
    std::size_t size() const { return rows_.size(); }

    /// True when at least one row has valid == true (or no valid column).
    bool any_valid() const
    {
        bool has_flag = false;
        for (const auto &r : rows_)
            if (r.contains("valid")) {
                has_flag = true;
                if (r.at("valid").get<bool>())
                    return true;
            }
        return !has_flag;
    }

    void write_csv(std::ostream &os) const
    {
        for (std::size_t i = 0; i < columns_.size(); ++i)
            os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto &r : rows_) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                if (i)
                    os << ',';
                const auto it = r.find(columns_[i]);
                if (it == r.end() || it->is_null())
                    continue;
                if (it->is_number_float())
                    os << fmt_double(it->get<double>());
                else if (it->is_boolean())
                    os << (it->get<bool>() ? "true" : "false");
                else if (it->is_string())
                    os << it->get<std::string>();
                else
                    os << it->dump();
            }
            os << '\n';
        }
    }

    void write_json(std::ostream &os) const
    {
        json arr = json::array();
        for (const auto &r : rows_) {
            json obj = json::object();
            for (const auto &c : columns_) {
                const auto it = r.find(c);
                obj[c] = it == r.end() ? json() : *it;
            }
            arr.push_back(std::move(obj));
        }
        os << arr.dump(2) << '\n';
    }

  private:
    std::vector<std::string> columns_;
    std::vector<json> rows_;
};

struct GlobalOpts {
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;
    std::string format = "csv";
    std::string output = "-";
};

int emit(const Table &t, const GlobalOpts &g)
{
    std::ostringstream buf;
    if (g.format == "json")
        t.write_json(buf);
    else
        t.write_csv(buf);

    if (g.output == "-" || g.output.empty()) {
        std::cout << buf.str();
        if (!std::cout)
            return 4;
    } else {
        std::ofstream out(g.output, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open '" + g.output + "' for writing");
        out << buf.str();
        if (!out)
            throw std::runtime_error("failed writing '" + g.output + "'");
    }
    return (t.size() > 0 && !t.any_valid()) ? 3 : 0;
}

// "a", "a,b,c", "a..b" (default step), "a..b:s"
std::vector<double> parse_double_list(const std::string &expr, double default_step)
{
    std::vector<double> out;
    if (expr.empty())
        return out;
    std::stringstream ss(expr);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stod(item));
            continue;
        }
        const double lo = std::stod(item.substr(0, dots));
        std::string rest = item.substr(dots + 2);
        double step = default_step;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            step = std::stod(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const double hi = std::stod(rest);
        if (step <= 0.0)
            throw CLI::ValidationError("range step must be positive");
        for (double v = lo; v <= hi + 1e-12; v += step)
            out.push_back(v);
    }
    return out;
}

// "a", "a,b", "a..b" (x2 when geometric, +1 otherwise), "a..b:x4", "a..b:+3"
std::vector<std::int64_t> parse_int_list(const std::string &expr, bool geometric)
{
    std::vector<std::int64_t> out;
    if (expr.empty())
        return out;
    std::stringstream ss(expr);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoll(item));
            continue;
        }
        const std::int64_t lo = std::stoll(item.substr(0, dots));
        std::string rest = item.substr(dots + 2);
        char mode = geometric ? 'x' : '+';
        std::int64_t step = geometric ? 2 : 1;
        const auto colon = rest.find(':');
        if (colon != std::string::npos) {
            const std::string s = rest.substr(colon + 1);
            if (s.size() < 2 || (s[0] != 'x' && s[0] != '+'))
                throw CLI::ValidationError("int range step must look like ':x2' or ':+3'");
            mode = s[0];
            step = std::stoll(s.substr(1));
            rest = rest.substr(0, colon);
        }
        const std::int64_t hi = std::stoll(rest);
        if (step <= 0 || (mode == 'x' && step < 2))
            throw CLI::ValidationError("int range step must be positive (x-steps >= 2)");
        for (std::int64_t v = lo; v <= hi; v = mode == 'x' ? v * step : v + step)
            out.push_back(v);
    }
    return out;
}

json volume_row(const ManifoldParams &raw, double delta, std::int64_t samples,
                const GlobalOpts &g)
{
    const ManifoldParams mp = raw.normalized();
    const bool swapped = raw.p > raw.q;

    json row{{"n", mp.n},      {"p", mp.p},          {"q", mp.q},
             {"field", to_string(mp.field)},         {"delta", delta},
             {"samples", samples},                   {"seed", g.seed},
             {"note", swapped ? "swapped-pq" : ""}};

    const auto main = volume_main_order(mp, delta);
    row["main_order"] = main.value;
    row["kind"] = main.kind == VolumeKind::exact ? "exact" : "main-order";
    row["valid"] = main.valid;

    if (delta <= 1.0) {
        const auto [lo, hi] = volume_bounds(mp, delta);
        row["lower"] = lo.value;
        row["upper"] = hi.value;
    } else {
        row["lower"] = json();
        row["upper"] = json();
    }

    const auto mc = volume_monte_carlo(mp, delta, samples, Rng(g.seed), g.threads);
    row["mc_estimate"] = mc.value;
    row["mc_stderr"] = *mc.stderr_value;

    row["barg"] = barg_volume_estimate(mp, delta);

    const int pe = std::min({mp.p, mp.q, mp.n - mp.p, mp.n - mp.q});
    if (mp.exponent() == 0.0)
        row["quadrature"] = 1.0;
    else if (pe >= 1 && pe <= 2)
        row["quadrature"] = volume_quadrature_oracle(mp, delta).value;
    else
        row["quadrature"] = json();
    return row;
}

int cmd_volume(int n, int p, int q, const std::string &field, const std::string &deltas,
               std::int64_t samples, const GlobalOpts &g)
{
    const ManifoldParams mp(n, p, q, field_from_string(field));
    Table t({"n", "p", "q", "field", "delta", "main_order", "kind", "lower", "upper",
             "mc_estimate", "mc_stderr", "barg", "quadrature", "valid", "note", "samples",
             "seed"});
    for (double d : parse_double_list(deltas, 0.1))
        t.add_row(volume_row(mp, d, samples, g));
    return emit(t, g);
}

int cmd_bounds_packing(int n, int p, int q, const std::string &field, const std::string &deltas,
                       const GlobalOpts &g)
{
    const ManifoldParams mp = ManifoldParams(n, p, q, field_from_string(field)).normalized();
    Table t({"n", "p", "q", "field", "delta", "gv_lower", "hamming_upper", "valid", "seed"});
    for (double d : parse_double_list(deltas, 0.1)) {
        const auto gv = gv_code_size(mp, d);
        const auto ham = hamming_code_size(mp, d);
        t.add_row(json{{"n", mp.n},
                       {"p", mp.p},
                       {"q", mp.q},
                       {"field", to_string(mp.field)},
                       {"delta", d},
                       {"gv_lower", gv.value},
                       {"hamming_upper", ham.value},
                       {"valid", gv.valid() && ham.valid()},
                       {"seed", g.seed}});
    }
    return emit(t, g);
}

int cmd_bounds_drf(int n, int p, int q, const std::string &field, const std::string &ks, double a,
                   const GlobalOpts &g)
{
    const ManifoldParams mp = ManifoldParams(n, p, q, field_from_string(field)).normalized();
    Table t({"n", "p", "q", "field", "K", "lower", "upper", "detailed_lower", "detailed_upper",
             "a", "heath", "valid", "seed"});
    for (std::int64_t K : parse_int_list(ks, true)) {
        const auto lo = drf_lower(mp, K);
        const auto hi = drf_upper(mp, K);
        const auto det = drf_detailed(mp, K, DetailParams{a});
        json row{{"n", mp.n},
                 {"p", mp.p},
                 {"q", mp.q},
                 {"field", to_string(mp.field)},
                 {"K", K},
                 {"lower", lo.value},
                 {"upper", hi.value},
                 {"detailed_lower", det.lower},
                 {"detailed_upper", det.upper},
                 {"a", a},
                 {"valid", lo.valid() && hi.valid()},
                 {"seed", g.seed}};
        row["heath"] = (mp.p == 1 && mp.q == 1 && mp.field == Field::complex)
                           ? json(heath_approx(mp.n, K))
                           : json();
        t.add_row(std::move(row));
    }
    return emit(t, g);
}

int cmd_bounds_rdf(int n, int p, int q, const std::string &field, const std::string &ds,
                   const GlobalOpts &g)
{
    const ManifoldParams mp = ManifoldParams(n, p, q, field_from_string(field)).normalized();
    Table t({"n", "p", "q", "field", "D", "K_lower", "K_upper", "valid", "seed"});
    for (double d : parse_double_list(ds, 0.1)) {
        const auto lo = rdf_lower(mp, d);
        const auto hi = rdf_upper(mp, d);
        t.add_row(json{{"n", mp.n},
                       {"p", mp.p},
                       {"q", mp.q},
                       {"field", to_string(mp.field)},
                       {"D", d},
                       {"K_lower", lo.value},
                       {"K_upper", hi.value},
                       {"valid", lo.valid() && hi.valid()},
                       {"seed", g.seed}});
    }
    return emit(t, g);
}

int cmd_design(int n, int p, const std::string &field, int K, int iters, int restarts,
               const std::string &out_path, const GlobalOpts &g)
{
    const Codebook cb =
        maxmin_design(n, p, field_from_string(field), K, iters, restarts, Rng(g.seed), g.threads);
    cb.save(out_path);

    Table t({"n", "p", "field", "K", "iters", "restarts", "seed", "min_distance", "out"});
    t.add_row(json{{"n", n},
                   {"p", p},
                   {"field", field},
                   {"K", K},
                   {"iters", iters},
                   {"restarts", restarts},
                   {"seed", g.seed},
                   {"min_distance", min_distance(cb)},
                   {"out", out_path}});
    return emit(t, g);
}

int cmd_distortion(const std::string &path, int q, std::int64_t samples, const GlobalOpts &g)
{
    const Codebook cb = Codebook::load(path);
    const int q_eff = q > 0 ? q : cb.p();
    const auto est = estimate_distortion(cb, q_eff, samples, Rng(g.seed), g.threads);

    const ManifoldParams mp(cb.n(), cb.p(), q_eff, cb.field());
    const auto lo = drf_lower(mp, cb.size());
    const auto hi = drf_upper(mp, cb.size());
    const auto det = drf_detailed(mp, cb.size());

    Table t({"codebook", "n", "p", "field", "K", "method", "codebook_seed", "q", "samples",
             "mean", "stderr", "min_distance", "drf_lower", "drf_upper", "detailed_lower",
             "detailed_upper", "valid", "seed"});
    t.add_row(json{{"codebook", path},
                   {"n", cb.n()},
                   {"p", cb.p()},
                   {"field", to_string(cb.field())},
                   {"K", cb.size()},
                   {"method", to_string(cb.method())},
                   {"codebook_seed", cb.seed()},
                   {"q", q_eff},
                   {"samples", est.samples},
                   {"mean", est.mean},
                   {"stderr", est.stderr_value},
                   {"min_distance", cb.size() >= 2 ? json(min_distance(cb)) : json()},
                   {"drf_lower", lo.value},
                   {"drf_upper", hi.value},
                   {"detailed_lower", det.lower},
                   {"detailed_upper", det.upper},
                   {"valid", lo.valid() && hi.valid()},
                   {"seed", g.seed}});
    return emit(t, g);
}

int cmd_mimo(int lt, int lr, int s, const std::string &rfbs, const std::string &rho_dbs,
             std::int64_t trials, const std::string &codebook_path, int design_iters,
             int design_restarts, const GlobalOpts &g)
{
    Table t({"rho_db", "rfb", "K", "simulated", "stderr", "predicted_lower", "predicted_upper",
             "perfect_csit", "perfect_stderr", "eta_lower", "eta_upper", "trials", "seed"});

    const auto rfb_list = parse_int_list(rfbs, false);
    const auto rho_list = parse_double_list(rho_dbs, 5.0);

    std::optional<Codebook> loaded;
    if (!codebook_path.empty())
        loaded = Codebook::load(codebook_path);

    for (std::int64_t rfb : rfb_list) {
        std::optional<Codebook> designed;
        if (!loaded) {
            const std::int64_t K = std::int64_t{1} << rfb;
            designed = maxmin_design(lt, s, Field::complex, static_cast<int>(K), design_iters,
                                     design_restarts,
                                     Rng(g.seed, 1000 + static_cast<std::uint64_t>(rfb)), g.threads);
        }
        const Codebook &cb = loaded ? *loaded : *designed;

        for (double rho_db : rho_list) {
            const double rho = std::pow(10.0, rho_db / 10.0);
            const MimoConfig cfg(lt, lr, s, rho, static_cast<int>(rfb), trials, g.seed);
            const auto report = evaluate_rate(cfg, cb, Rng(g.seed, 2000), g.threads);
            t.add_row(json{{"rho_db", rho_db},
                           {"rfb", rfb},
                           {"K", cb.size()},
                           {"simulated", report.simulated.mean},
                           {"stderr", report.simulated.stderr_value},
                           {"predicted_lower", report.predicted_lower},
                           {"predicted_upper", report.predicted_upper},
                           {"perfect_csit", report.perfect_csit.mean},
                           {"perfect_stderr", report.perfect_csit.stderr_value},
                           {"eta_lower", report.eta_lower},
                           {"eta_upper", report.eta_upper},
                           {"trials", trials},
                           {"seed", g.seed}});
        }
    }
    return emit(t, g);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"quantization bounds, codebooks, and finite-rate-feedback simulation on "
                 "Grassmann manifolds"};
    app.require_subcommand(1);

    GlobalOpts g;
    // registered on the app and on every subcommand, so the flags may appear
    // on either side of the subcommand name
    auto add_global_opts = [&g](CLI::App *cmd) {
        cmd->add_option("--seed", g.seed, "global seed (default 1234567)")->envname("GRASSQ_SEED");
        cmd->add_option("--threads", g.threads,
                        "worker threads (results are thread-count invariant)");
        cmd->add_option("--format", g.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output", g.output, "output path, '-' for stdout");
    };
    add_global_opts(&app);

    // volume
    int v_n = 4, v_p = 2, v_q = 0;
    std::string v_field = "complex", v_deltas = "0.1..1.0";
    std::int64_t v_samples = 100000;
    auto *vol = app.add_subcommand("volume", "metric-ball volume: formula, bounds, Monte Carlo");
    vol->add_option("--n", v_n, "ambient dimension")->required()->check(CLI::PositiveNumber);
    vol->add_option("--p", v_p, "plane dimension")->required()->check(CLI::PositiveNumber);
    vol->add_option("--q", v_q, "source plane dimension (default p)");
    vol->add_option("--field", v_field, "real or complex");
    vol->add_option("--delta", v_deltas, "radius list: 'a', 'a,b', 'a..b', 'a..b:step'");
    vol->add_option("--samples", v_samples, "Monte Carlo samples per radius")
        ->check(CLI::PositiveNumber);

    // bounds
    auto *bounds = app.add_subcommand("bounds", "sphere-packing and rate-distortion bounds");
    bounds->require_subcommand(1);
    int b_n = 4, b_p = 2, b_q = 0;
    std::string b_field = "complex";
    std::string b_deltas = "0.1..1.0", b_ks = "2..4096", b_ds = "0.05..0.5:0.05";
    double b_a = 0.5;
    auto *packing = bounds->add_subcommand("packing", "code size vs minimum distance");
    packing->add_option("--n", b_n)->required()->check(CLI::PositiveNumber);
    packing->add_option("--p", b_p)->required()->check(CLI::PositiveNumber);
    packing->add_option("--q", b_q, "source plane dimension (default p)");
    packing->add_option("--field", b_field);
    packing->add_option("--delta", b_deltas);
    auto *drf = bounds->add_subcommand("drf", "distortion rate function bounds");
    drf->add_option("--n", b_n)->required()->check(CLI::PositiveNumber);
    drf->add_option("--p", b_p)->required()->check(CLI::PositiveNumber);
    drf->add_option("--q", b_q, "source plane dimension (default p)");
    drf->add_option("--field", b_field);
    drf->add_option("--K", b_ks, "code sizes: 'a', 'a,b', 'a..b' (doubling), 'a..b:x4', 'a..b:+3'");
    drf->add_option("--a", b_a, "detail parameter in (0,1)")->check(CLI::Range(1e-9, 1.0 - 1e-9));
    auto *rdf = bounds->add_subcommand("rdf", "rate distortion function bounds");
    rdf->add_option("--n", b_n)->required()->check(CLI::PositiveNumber);
    rdf->add_option("--p", b_p)->required()->check(CLI::PositiveNumber);
    rdf->add_option("--q", b_q, "source plane dimension (default p)");
    rdf->add_option("--field", b_field);
    rdf->add_option("--D", b_ds, "target distortions");

    // design
    int d_n = 4, d_p = 2, d_K = 16, d_iters = 2000, d_restarts = 8;
    std::string d_field = "complex", d_out = "codebook.json";
    auto *design = app.add_subcommand("design", "max-min codebook design, written as JSON");
    design->add_option("--n", d_n)->required()->check(CLI::PositiveNumber);
    design->add_option("--p", d_p)->required()->check(CLI::PositiveNumber);
    design->add_option("--field", d_field);
    design->add_option("--K", d_K, "codebook size")->required()->check(CLI::Range(2, 1 << 20));
    design->add_option("--iters", d_iters)->check(CLI::NonNegativeNumber);
    design->add_option("--restarts", d_restarts)->check(CLI::PositiveNumber);
    design->add_option("--out", d_out, "output codebook path");

    // distortion
    std::string s_path;
    int s_q = 0;
    std::int64_t s_samples = 100000;
    auto *dist = app.add_subcommand("distortion", "Monte Carlo distortion of a stored codebook");
    dist->add_option("--codebook", s_path, "codebook JSON path")->required();
    dist->add_option("--q", s_q, "source plane dimension (default: codeword dimension)");
    dist->add_option("--samples", s_samples)
        ->check(CLI::Range(std::int64_t{100}, std::int64_t{1} << 40));

    // mimo
    int m_lt = 4, m_lr = 2, m_s = 2, m_design_iters = 500, m_design_restarts = 4;
    std::string m_rfbs = "4..12", m_rhos = "10", m_codebook;
    std::int64_t m_trials = 100000;
    auto *mimo = app.add_subcommand("mimo", "finite-rate-feedback information rate sweep");
    mimo->add_option("--lt", m_lt, "transmit antennas")->required()->check(CLI::PositiveNumber);
    mimo->add_option("--lr", m_lr, "receive antennas")->required()->check(CLI::PositiveNumber);
    mimo->add_option("--s", m_s, "active beams")->required()->check(CLI::PositiveNumber);
    mimo->add_option("--rfb", m_rfbs, "feedback bits: 'a', 'a,b', 'a..b' (+1 steps)");
    mimo->add_option("--rho-db", m_rhos, "average SNR sweep in dB");
    mimo->add_option("--trials", m_trials, "channel draws per row")->check(CLI::PositiveNumber);
    mimo->add_option("--codebook", m_codebook, "use a stored codebook instead of designing");
    mimo->add_option("--design-iters", m_design_iters)->check(CLI::NonNegativeNumber);
    mimo->add_option("--design-restarts", m_design_restarts)->check(CLI::PositiveNumber);

    for (CLI::App *cmd : {vol, packing, drf, rdf, design, dist, mimo})
        add_global_opts(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    if (g.threads > 0)
        set_default_thread_count(g.threads);

    try {
        if (vol->parsed())
            return cmd_volume(v_n, v_p, v_q > 0 ? v_q : v_p, v_field, v_deltas, v_samples, g);
        if (packing->parsed())
            return cmd_bounds_packing(b_n, b_p, b_q > 0 ? b_q : b_p, b_field, b_deltas, g);
        if (drf->parsed())
            return cmd_bounds_drf(b_n, b_p, b_q > 0 ? b_q : b_p, b_field, b_ks, b_a, g);
        if (rdf->parsed())
            return cmd_bounds_rdf(b_n, b_p, b_q > 0 ? b_q : b_p, b_field, b_ds, g);
        if (design->parsed())
            return cmd_design(d_n, d_p, d_field, d_K, d_iters, d_restarts, d_out, g);
        if (dist->parsed())
            return cmd_distortion(s_path, s_q, s_samples, g);
        if (mimo->parsed())
            return cmd_mimo(m_lt, m_lr, m_s, m_rfbs, m_rhos, m_trials, m_codebook, m_design_iters,
                            m_design_restarts, g);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 2;
}
