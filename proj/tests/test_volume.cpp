#include <doctest.h>

#include <cmath>
#include <numbers>

#include "grassq/volume.hpp"
#include "test_helpers.hpp"

using namespace grassq;

namespace {

// Closed-form ball volume for effective dimension 1 (one nonzero principal
// angle): sin^2(theta) ~ Beta(h*(n-q), h*q) with h = beta/2, q = max dim.
double beta_ball_volume(int n, int q, int beta, double delta)
{
    const double h = beta / 2.0;
    return testutil::betai(h * (n - q), h * q, delta * delta);
}

} // namespace

TEST_CASE("volume coefficient closed-form values")
{
    for (int n = 2; n <= 8; ++n)
        CHECK(volume_coefficient({n, 1, 1, Field::complex}) == doctest::Approx(1.0).epsilon(1e-14));

    for (int n : {1, 2, 5}) {
        CHECK(volume_coefficient({n, n, n, Field::real}) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(volume_coefficient({n, n, n, Field::complex}) == doctest::Approx(1.0).epsilon(1e-14));
    }

    CHECK(volume_coefficient({4, 2, 2, Field::complex}) == doctest::Approx(0.5).epsilon(1e-13));

    // independently derived from Beta-distributed overlaps of lines and planes
    CHECK(volume_coefficient({4, 1, 2, Field::complex}) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(volume_coefficient({5, 1, 3, Field::complex}) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(volume_coefficient({4, 2, 3, Field::complex}) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(volume_coefficient({5, 2, 4, Field::complex}) == doctest::Approx(6.0).epsilon(1e-13));

    // order of (p, q) is irrelevant
    CHECK(volume_coefficient({5, 3, 1, Field::complex}) ==
          doctest::Approx(volume_coefficient({5, 1, 3, Field::complex})).epsilon(1e-15));
}

TEST_CASE("volume correction closed-form values")
{
    for (int n : {3, 5, 8}) {
        CHECK(volume_correction({n, 2, 2, Field::complex}) == 0.0);
        CHECK(volume_correction({n, 2, 3, Field::real}) == 0.0);
    }
    CHECK(volume_correction({6, 2, 4, Field::complex}) == doctest::Approx(-1.6).epsilon(1e-14));
    // from mu(B) = 3 d^4 (1 - (2/3) d^2) on (4,1,2,C)
    CHECK(volume_correction({4, 1, 2, Field::complex}) == doctest::Approx(-2.0 / 3.0).epsilon(1e-14));
    // from mu(B) = 6 d^4 (1 - (4/3) d^2 + ...) on (5,2,4,C)
    CHECK(volume_correction({5, 2, 4, Field::complex}) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("coefficient formulas agree where their regimes meet")
{
    using detail::log_coeff_complement;
    using detail::log_coeff_disjoint;
    for (int beta : {1, 2}) {
        for (auto [n, p, q] : {std::tuple{4, 2, 2}, {6, 3, 3}, {8, 4, 4}, {5, 2, 3}, {7, 3, 4}, {9, 2, 7}}) {
            REQUIRE(p + q == n);
            const double a = log_coeff_disjoint(n, p, q, beta);
            const double b = log_coeff_complement(n, p, q, beta);
            CHECK(std::exp(a) == doctest::Approx(std::exp(b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("coefficient is symmetric under complementing both planes")
{
    Rng rng(11);
    for (int rep = 0; rep < 300; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(9));
        const int p = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (p == n || q == n)
            continue;
        for (Field f : {Field::real, Field::complex}) {
            const double c1 = volume_coefficient({n, p, q, f});
            const double c2 = volume_coefficient({n, n - q, n - p, f});
            CHECK(c1 == doctest::Approx(c2).epsilon(1e-12));
        }
    }
}

TEST_CASE("main-order volume examples")
{
    for (int n : {2, 4, 7}) {
        for (double d : {0.2, 0.5, 0.9, 1.0}) {
            const auto r = volume_main_order({n, 1, 1, Field::complex}, d);
            CHECK(r.value == doctest::Approx(std::pow(d, 2.0 * (n - 1))).epsilon(1e-14));
            CHECK(r.kind == VolumeKind::exact);
            CHECK(r.valid);
        }
    }

    for (double d : {0.1, 0.5, 2.0}) {
        const auto r = volume_main_order({3, 3, 3, Field::complex}, d);
        CHECK(r.value == 1.0);
    }

    CHECK(volume_main_order({5, 2, 2, Field::real}, 0.0).value == 0.0);
    CHECK_THROWS_AS(volume_main_order({5, 2, 2, Field::real}, -0.1), std::invalid_argument);

    CHECK(volume_main_order({5, 2, 2, Field::real}, 1.5).valid == false);
    CHECK(volume_main_order({4, 2, 2, Field::real}, 0.5).kind == VolumeKind::main_order);
}

TEST_CASE("main-order volume is strictly increasing below saturation")
{
    for (auto mp : {ManifoldParams{5, 2, 2, Field::complex}, {4, 2, 2, Field::real}, {6, 1, 3, Field::complex}}) {
        double prev = 0.0;
        for (double d = 0.05; d <= 1.0; d += 0.05) {
            const double v = volume_main_order(mp, d).value;
            if (v < 1.0)
                CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("volume bounds: collapse in exact cases and sandwich elsewhere")
{
    // exact cases: both bounds equal the main term
    for (double d : {0.3, 0.8}) {
        auto [lo, hi] = volume_bounds({5, 2, 2, Field::complex}, d);
        const double main = volume_main_order({5, 2, 2, Field::complex}, d).value;
        CHECK(lo.value == doctest::Approx(main).epsilon(1e-14));
        CHECK(hi.value == doctest::Approx(main).epsilon(1e-14));

        auto [lo2, hi2] = volume_bounds({5, 2, 3, Field::real}, d);
        CHECK(lo2.value == doctest::Approx(hi2.value).epsilon(1e-14));
    }

    // ratio of bounds tends to 1 as the radius shrinks
    for (auto mp : {ManifoldParams{4, 2, 2, Field::real}, {6, 2, 4, Field::complex}}) {
        double prev_ratio = 1e9;
        for (double d : {0.8, 0.4, 0.2, 0.1, 0.05}) {
            auto [lo, hi] = volume_bounds(mp, d);
            REQUIRE(lo.value > 0.0);
            const double ratio = hi.value / lo.value;
            CHECK(ratio >= 1.0 - 1e-12);
            CHECK(ratio <= prev_ratio + 1e-12);
            prev_ratio = ratio;
        }
        auto [lo, hi] = volume_bounds(mp, 0.01);
        CHECK(hi.value / lo.value == doctest::Approx(1.0).epsilon(1e-3));
    }

    // real p = q case evaluated by hand: c = 1/4, t = 4
    {
        auto [lo, hi] = volume_bounds({4, 2, 2, Field::real}, 0.5);
        const double c = volume_coefficient({4, 2, 2, Field::real});
        CHECK(c == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(lo.value == doctest::Approx(c * 0.0625).epsilon(1e-13));
        CHECK(hi.value == doctest::Approx(c * 0.0625 / 0.75).epsilon(1e-13));
    }

    CHECK_THROWS_AS(volume_bounds({4, 2, 2, Field::real}, 1.2), std::invalid_argument);
}

TEST_CASE("Monte Carlo volume examples")
{
    Rng rng(12);

    // radius sqrt(min(p,q)) covers everything
    auto all = volume_monte_carlo({4, 2, 2, Field::complex}, std::sqrt(2.0) + 1e-12, 2000, rng);
    CHECK(all.value == 1.0);
    CHECK(all.kind == VolumeKind::monte_carlo);
    REQUIRE(all.stderr_value.has_value());

    // G_{3,1}(C): mu = delta^4
    auto c31 = volume_monte_carlo({3, 1, 1, Field::complex}, 0.5, 1000000, rng.derive(1));
    CHECK(std::abs(c31.value - 0.0625) < 3.0 * *c31.stderr_value + 1e-12);

    // G_{2,1}(R): mu = (2/pi) asin(delta)
    auto r21 = volume_monte_carlo({2, 1, 1, Field::real}, 0.5, 400000, rng.derive(2));
    const double expect = 2.0 / std::numbers::pi * std::asin(0.5);
    CHECK(std::abs(r21.value - expect) < 3.0 * *r21.stderr_value);

    // thread count must not change the estimate
    auto t1 = volume_monte_carlo({4, 2, 2, Field::complex}, 0.6, 50000, rng.derive(3), 1);
    auto t4 = volume_monte_carlo({4, 2, 2, Field::complex}, 0.6, 50000, rng.derive(3), 4);
    CHECK(t1.value == t4.value);
}

TEST_CASE("Monte Carlo frequency matches the exact complex case")
{
    Rng rng(13);
    const ManifoldParams mp{4, 2, 2, Field::complex};
    const double mu = 0.5 * std::pow(0.5, 8.0); // c = 1/2, t = 8
    auto r = volume_monte_carlo(mp, 0.5, 2000000, rng);
    CHECK(std::abs(r.value - mu) < 3.0 * std::sqrt(mu * (1.0 - mu) / 2000000.0));
}

TEST_CASE("quadrature oracle: normalization, closed forms, beta oracle")
{
    // whole domain integrates the full density
    for (auto mp : {ManifoldParams{4, 2, 2, Field::complex}, {4, 2, 2, Field::real}, {5, 2, 3, Field::complex},
                    {6, 2, 4, Field::real}, {3, 1, 1, Field::real}}) {
        const double total = volume_quadrature_oracle(mp, std::sqrt(2.0) + 0.01).value;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
    }

    // single-line complex manifolds
    for (int n : {2, 3, 6}) {
        const double v = volume_quadrature_oracle({n, 1, 1, Field::complex}, 0.6).value;
        CHECK(v == doctest::Approx(std::pow(0.6, 2.0 * (n - 1))).epsilon(1e-7));
    }

    // effective-dimension-1 cases against the independent incomplete-beta oracle
    for (auto [n, p, q] : {std::tuple{4, 1, 2}, {5, 1, 3}, {4, 2, 3}, {5, 2, 4}, {6, 1, 2}}) {
        int pr = std::min(p, q), qr = std::max(p, q);
        if (pr + qr > n) {
            const int np = n - qr, nq = n - pr;
            pr = np;
            qr = nq;
        }
        REQUIRE(pr == 1);
        for (int beta : {1, 2}) {
            const Field f = beta == 1 ? Field::real : Field::complex;
            for (double d : {0.3, 0.5, 0.9}) {
                const double quad = volume_quadrature_oracle({n, p, q, f}, d).value;
                const double exact = beta_ball_volume(n, qr, beta, d);
                CHECK(quad == doctest::Approx(exact).epsilon(1e-6));
            }
        }
    }

    CHECK_THROWS_AS(volume_quadrature_oracle({9, 3, 3, Field::complex}, 0.5), std::invalid_argument);
}

TEST_CASE("quadrature matches the exact closed form in the exact cases")
{
    for (auto mp : {ManifoldParams{4, 2, 2, Field::complex}, {5, 2, 2, Field::complex}, {5, 2, 3, Field::real},
                    {6, 2, 3, Field::real}, {7, 1, 2, Field::real}}) {
        for (double d : {0.2, 0.5, 0.9}) {
            const double quad = volume_quadrature_oracle(mp, d).value;
            const double formula = volume_main_order(mp, d).value;
            CHECK(quad == doctest::Approx(formula).epsilon(1e-6));
        }
    }
}

TEST_CASE("cross-oracle agreement on G_{5,2}(C)")
{
    const ManifoldParams mp{5, 2, 2, Field::complex};
    const double quad = volume_quadrature_oracle(mp, 0.7).value;
    auto [lo, hi] = volume_bounds(mp, 0.7);
    CHECK(quad >= lo.value - 1e-9);
    CHECK(quad <= hi.value + 1e-9);

    Rng rng(14);
    auto mc = volume_monte_carlo(mp, 0.7, 1000000, rng);
    CHECK(std::abs(mc.value - quad) < 3.0 * std::sqrt(quad * (1.0 - quad) / 1000000.0));
}

TEST_CASE("sandwich property over random configurations")
{
    Rng rng(15);
    int tested = 0;
    for (int rep = 0; tested < 200 && rep < 4000; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(7));
        const int p = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        const Field f = rng.bits() & 1 ? Field::complex : Field::real;
        const ManifoldParams mp{n, p, q, f};

        const int pe = std::min({p, q, n - p, n - q});
        if (pe > 2 || pe == 0)
            continue;
        if (mp.exponent() <= 0.0)
            continue;
        const double delta = 0.15 + 0.85 * rng.uniform();
        ++tested;

        const double oracle = volume_quadrature_oracle(mp, delta).value;
        auto [lo, hi] = volume_bounds(mp, delta);
        CHECK(oracle >= lo.value - 1e-7);
        CHECK(oracle <= hi.value + 1e-7);

        if (tested % 10 == 0) {
            auto mc = volume_monte_carlo(mp, delta, 50000, rng.derive(static_cast<std::uint64_t>(rep)));
            const double sigma = std::sqrt(std::max(oracle * (1.0 - oracle), 1e-12) / 50000.0);
            CHECK(std::abs(mc.value - oracle) <= 4.0 * sigma + 1e-9);
        }
    }
    CHECK(tested == 200);
}

TEST_CASE("Barg comparison value")
{
    const ManifoldParams mp{10, 2, 2, Field::real};
    CHECK(barg_volume_estimate(mp, 0.5) ==
          doctest::Approx(std::pow(0.5 / std::sqrt(2.0), 20.0)).epsilon(1e-13));
}

TEST_CASE("uniform sampling hits the exact complex ball frequency at 10^7 draws")
{
    const ManifoldParams mp{4, 2, 2, Field::complex};
    const double mu = std::pow(0.5, 9.0); // c = 1/2, t = 8, delta = 1/2
    const auto mc = volume_monte_carlo(mp, 0.5, 10000000, Rng(424242));
    const double sigma = std::sqrt(mu * (1.0 - mu) / 1e7);
    CHECK(std::abs(mc.value - mu) <= 3.0 * sigma);
}

TEST_CASE("second-order coefficient matches a fit of the oracle volume")
{
    // mu / (c delta^t) - 1 ~ c1 delta^2 for small delta
    const ManifoldParams mp{6, 2, 4, Field::complex};
    const double c = volume_coefficient(mp);
    const double t = mp.exponent();
    const double c1 = volume_correction(mp);
    REQUIRE(c1 == doctest::Approx(-1.6).epsilon(1e-14));

    const double fit02 =
        (volume_quadrature_oracle(mp, 0.2).value / (c * std::pow(0.2, t)) - 1.0) / 0.04;
    const double fit03 =
        (volume_quadrature_oracle(mp, 0.3).value / (c * std::pow(0.3, t)) - 1.0) / 0.09;
    CHECK(fit02 < 0.0);
    CHECK(fit03 < 0.0);
    CHECK(fit02 == doctest::Approx(c1).epsilon(0.10));
    CHECK(fit03 == doctest::Approx(c1).epsilon(0.20));
}

TEST_CASE("Monte Carlo estimate sits between the real-case bounds")
{
    const ManifoldParams mp{4, 2, 2, Field::real};
    const auto [lo, hi] = volume_bounds(mp, 0.5);
    const auto mc = volume_monte_carlo(mp, 0.5, 400000, Rng(321321));
    CHECK(mc.value >= lo.value - 3.0 * *mc.stderr_value);
    CHECK(mc.value <= hi.value + 3.0 * *mc.stderr_value);
}

TEST_CASE("degenerate manifolds have unit ball volume")
{
    CHECK(volume_quadrature_oracle({4, 4, 4, Field::complex}, 0.3).value == 1.0);
    CHECK(volume_quadrature_oracle({3, 2, 3, Field::real}, 0.1).value == 1.0);
    CHECK(volume_main_order({3, 2, 3, Field::real}, 0.1).value == 1.0);
}
