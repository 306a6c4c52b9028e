#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "liyau/admissibility.hpp"

using namespace liyau;

namespace {

// Finds a double b within 2 ulps of 1/p such that b * p == 1.0 exactly, so
// that the product beta * p carries no rounding at all.
std::optional<double> inverse_with_exact_product(double p) {
    double b = 1.0 / p;
    for (int k = 0; k < 2; ++k) b = std::nextafter(b, 0.0);
    for (int step = 0; step < 5; ++step) {
        if (b * p == 1.0) return b;
        b = std::nextafter(b, 2.0);
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("epsilon reproduces pinned closed-form values") {
    CHECK(epsilon({1, 2.0}, {1.0, 0.5}) == 1.5);
    CHECK(epsilon({1, 1.5}, {1.0, 0.6666666666666666}) == 1.21875);
    CHECK(epsilon({3, 2.0}, {1.0, 0.5}) == 0.49999999999999956);
    CHECK(epsilon({2, 3.0}, {1.0, 0.3333333333333333}) == 0.7500000000000002);

    // With alpha = 1 the quadratic term vanishes identically, so the first
    // condition value is (p-1)(beta*p - alpha); beta at the rounded inverse
    // of p makes it exactly zero.
    auto r1 = check_admissible({1, 1.5}, {1.0, 0.6666666666666666});
    CHECK(r1.admissible);
    CHECK(r1.cond2_value == 0.0);
    CHECK(r1.cond1_slack == 2.166666666666667);
    REQUIRE(r1.epsilon.has_value());
    CHECK(*r1.epsilon == 1.21875);

    auto r2 = check_admissible({2, 3.0}, {1.0, 0.3333333333333333});
    CHECK(r2.admissible);
    CHECK(r2.cond2_value == 0.0);
    REQUIRE(r2.epsilon.has_value());
    CHECK(*r2.epsilon == 0.7500000000000002);
}

TEST_CASE("threshold exponent closed form matches the pinned table") {
    const double expected[12] = {
        8.0,
        4.0,
        2.6666666666666665,
        2.0606601717798214,
        1.778391445340823,
        1.615639288473018,
        1.5095556812404813,
        1.4348469228349532,
        1.379346988677737,
        1.336470744203802,
        1.3023396161378515,
        1.274519052838329,
    };
    for (int n = 1; n <= 12; ++n) {
        CAPTURE(n);
        CHECK(p_bar_closed(n) == expected[n - 1]);
    }
    // The low-dimensional branch is exactly 8/n.
    CHECK(p_bar_closed(1) == 8.0 / 1.0);
    CHECK(p_bar_closed(2) == 8.0 / 2.0);
    CHECK(p_bar_closed(3) == 8.0 / 3.0);
    // The closed form is strictly decreasing in n.
    for (int n = 1; n < 40; ++n) CHECK(p_bar_closed(n) > p_bar_closed(n + 1));
    CHECK_THROWS_AS(p_bar_closed(0), std::invalid_argument);
    CHECK_THROWS_AS(p_bar_closed(-3), std::invalid_argument);
}

TEST_CASE("pair (1, 1/p) is admissible with exactly-zero first condition below the threshold") {
    // Not every double p admits a double b with fl(b * p) == 1 (the rounded
    // product can step over 1.0 entirely), so walk a fine ladder of candidate
    // exponents and keep the first 50 per dimension that do.
    for (int n : {1, 2, 3}) {
        const double p_top = 8.0 / n;
        int found = 0;
        for (int k = 1; k < 400 && found < 50; ++k) {
            const double p = 1.0 + k * (p_top - 1.0) / 400.0;
            auto beta = inverse_with_exact_product(p);
            if (!beta) continue;
            ++found;
            CAPTURE(n);
            CAPTURE(p);
            auto res = check_admissible({n, p}, {1.0, *beta});
            CHECK(res.admissible);
            CHECK(res.cond2_value == 0.0);
            CHECK(res.cond1_slack > 0.0);
            REQUIRE(res.epsilon.has_value());
            CHECK(*res.epsilon > 0.0);
        }
        CHECK(found == 50);
    }
}

TEST_CASE("pair (1, 1/p) stops being admissible exactly at the threshold exponent") {
    // n = 1 and n = 2: the threshold 8/n is an exact double and the slack
    // evaluates to exactly zero there, so admissibility fails (strict
    // inequality required).
    {
        auto res = check_admissible({1, 8.0}, {1.0, 0.125});
        CHECK_FALSE(res.admissible);
        CHECK(res.cond1_slack == 0.0);
        CHECK_FALSE(res.epsilon.has_value());
        CHECK_THROWS_AS(epsilon({1, 8.0}, {1.0, 0.125}), std::domain_error);
    }
    {
        auto res = check_admissible({2, 4.0}, {1.0, 0.25});
        CHECK_FALSE(res.admissible);
        CHECK(res.cond1_slack == 0.0);
        CHECK_FALSE(res.epsilon.has_value());
    }
    // n = 3: the threshold 8/3 is not a double. At the rounded-down double
    // the slack is one rounding step above zero (still admissible); one ulp
    // above it the slack collapses to zero and admissibility is lost.
    {
        const double p_lo = 8.0 / 3.0;
        const double p_hi = std::nextafter(p_lo, std::numeric_limits<double>::infinity());
        auto beta_lo = inverse_with_exact_product(p_lo);
        REQUIRE(beta_lo.has_value());
        auto res_lo = check_admissible({3, p_lo}, {1.0, *beta_lo});
        CHECK(res_lo.admissible);
        CHECK(res_lo.cond1_slack == 4.440892098500626e-16);

        auto beta_hi = inverse_with_exact_product(p_hi);
        REQUIRE(beta_hi.has_value());
        auto res_hi = check_admissible({3, p_hi}, {1.0, *beta_hi});
        CHECK_FALSE(res_hi.admissible);
        CHECK(res_hi.cond1_slack == 0.0);
    }
}

TEST_CASE("a fixed pair can be admissible at a larger p yet fail at a smaller one") {
    // (alpha, beta) = (0.99, 0.5) in dimension 1: admissible at p = 2 but
    // not at p = 1.5, so admissibility of a *fixed* pair is not monotone in
    // p; only the union over pairs is.
    auto at2 = check_admissible({1, 2.0}, {0.99, 0.5});
    CHECK(at2.admissible);
    CHECK(at2.cond2_value == 0.029800000000000028);

    auto at15 = check_admissible({1, 1.5}, {0.99, 0.5});
    CHECK_FALSE(at15.admissible);
    CHECK(at15.cond2_value == -0.10019999999999998);
    CHECK(at15.cond1_slack > 0.0);  // it is the sign condition that fails
}

TEST_CASE("grid feasibility is a down-set in p") {
    sweep_grid grid;
    grid.alpha_points = 200;
    grid.beta_points = 200;
    for (int n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const double p_top = p_bar_closed(n);
        std::vector<int> feas;
        for (int k = 0; k < 8; ++k) {
            const double p = 1.02 + k * (p_top + 0.4 - 1.02) / 7.0;
            feas.push_back(grid_feasible(n, p, grid) ? 1 : 0);
        }
        CHECK(feas.front() == 1);  // well below the threshold
        CHECK(feas.back() == 0);   // well above it
        for (std::size_t k = 0; k + 1 < feas.size(); ++k) {
            CAPTURE(k);
            CHECK(feas[k] >= feas[k + 1]);  // once lost, never regained
        }
    }
    // Seeded random cross-check of the same ordering property.
    std::mt19937_64 rng(987654321u);
    std::uniform_int_distribution<int> pick_n(1, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = pick_n(rng);
        std::uniform_real_distribution<double> pick_p(1.01, p_bar_closed(n) + 0.5);
        double p1 = pick_p(rng);
        double p2 = pick_p(rng);
        if (p1 > p2) std::swap(p1, p2);
        if (grid_feasible(n, p2, grid)) {
            CAPTURE(n);
            CAPTURE(p1);
            CAPTURE(p2);
            CHECK(grid_feasible(n, p1, grid));
        }
    }
}

TEST_CASE("epsilon is present exactly when admissible, and positive") {
    std::mt19937_64 rng(20240815u);
    std::uniform_int_distribution<int> pick_n(1, 10);
    std::uniform_real_distribution<double> pick_p(1.001, 9.0);
    std::uniform_real_distribution<double> pick_alpha(0.001, 1.0);
    std::uniform_real_distribution<double> pick_beta(0.0, 0.999);
    int admissible_count = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const problem prob{pick_n(rng), pick_p(rng)};
        const param_pair pair{pick_alpha(rng), pick_beta(rng)};
        auto res = check_admissible(prob, pair);
        CAPTURE(prob.n);
        CAPTURE(prob.p);
        CAPTURE(pair.alpha);
        CAPTURE(pair.beta);
        // Reported flag is consistent with the reported condition values.
        CHECK(res.admissible == (res.cond2_value >= 0.0 && res.cond1_slack > 0.0));
        CHECK(res.admissible == res.epsilon.has_value());
        if (res.admissible) {
            ++admissible_count;
            CHECK(*res.epsilon > 0.0);
            CHECK(epsilon(prob, pair) == *res.epsilon);
        } else {
            CHECK_THROWS_AS(epsilon(prob, pair), std::domain_error);
        }
    }
    CHECK(admissible_count > 50);  // the draw box does hit the feasible set
}

TEST_CASE("threshold report: sweep brackets the closed form and orderings hold") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        auto rep = make_threshold_report(n);
        CHECK(rep.n == n);
        CHECK(rep.p_bar_closed == p_bar_closed(n));
        CHECK(std::abs(rep.p_bar_closed - rep.p_bar_sweep) <= 2e-3);
        CHECK(rep.ref_upper == n * (n + 2.0) / ((n - 1.0) * (n - 1.0)));
        CHECK(rep.p_bar_closed < rep.ref_upper);
        if (n >= 3) {
            REQUIRE(rep.ref_lower.has_value());
            CHECK(*rep.ref_lower == n / (n - 2.0));
            REQUIRE(rep.sobolev_ps.has_value());
            CHECK(*rep.sobolev_ps == (n + 2.0) / (n - 2.0));
            CHECK(rep.p_bar_closed < *rep.sobolev_ps);
        } else {
            CHECK_FALSE(rep.ref_lower.has_value());
            CHECK_FALSE(rep.sobolev_ps.has_value());
        }
        if (n >= 4) CHECK(*rep.ref_lower < rep.p_bar_closed);
    }
    CHECK_THROWS_AS(make_threshold_report(1), std::domain_error);
}

TEST_CASE("convexity coefficient: pinned value and positivity of theta") {
    auto c = convexity_coeff({5, 1.3}, {0.5, 0.45});
    CHECK(c.value == 0.18159090909090908);
    CHECK(c.theta == 0.08863636363636362);
    CHECK(c.theta > 0.0);
}

TEST_CASE("an admissible pair can still sit outside the convexity scope") {
    // (alpha, beta) = (0.5, 0.6) at n = 5, p = 1.1 is admissible, but the
    // coefficient is only defined for alpha > beta; evaluating the bracket
    // formula anyway yields a negative value, which pins why the scope guard
    // exists.
    const int n = 5;
    const double p = 1.1, alpha = 0.5, beta = 0.6;
    auto res = check_admissible({n, p}, {alpha, beta});
    CHECK(res.admissible);
    CHECK(res.cond2_value == 0.09600000000000002);
    CHECK(res.cond1_slack == 0.21999999999999997);

    const double raw = alpha + beta * (p - 2.0) -
                       n * (p - 1.0) * (alpha - beta) * (alpha - beta) /
                           (8.0 * alpha * (1.0 - alpha) * (1.0 - beta));
    CHECK(raw == -0.04624999999999993);
    CHECK_THROWS_AS(convexity_coeff({n, p}, {alpha, beta}), std::domain_error);
}

TEST_CASE("convexity coefficient domain guards") {
    CHECK_THROWS_AS(convexity_coeff({5, 1.3}, {0.45, 0.45}), std::domain_error);  // alpha == beta
    CHECK_THROWS_AS(convexity_coeff({5, 1.3}, {0.3, 0.45}), std::domain_error);   // alpha < beta
    CHECK_THROWS_AS(convexity_coeff({5, 1.3}, {1.0, 0.45}), std::domain_error);   // alpha == 1
    CHECK_THROWS_AS(convexity_coeff({5, 1.3}, {0.0, 0.45}), std::domain_error);   // alpha == 0
}

TEST_CASE("convexity region search finds qualifying pairs in dimension >= 5") {
    sweep_grid grid;
    grid.alpha_points = 200;
    grid.beta_points = 200;
    for (double p : {1.1, 1.3}) {
        CAPTURE(p);
        auto found = convexity_region_nonempty({5, p}, grid);
        REQUIRE(found.has_value());
        CHECK(found->pair.alpha > found->pair.beta);
        CHECK(found->coeff.value >= 0.0);
        CHECK(found->coeff.theta > 0.0);
        auto res = check_admissible({5, p}, found->pair);
        CHECK(res.admissible);
        // The returned coefficient really is the bracket value at the pair.
        auto again = convexity_coeff({5, p}, found->pair);
        CHECK(again.value == found->coeff.value);
    }
    CHECK_THROWS_AS(convexity_region_nonempty({4, 1.5}, grid), std::domain_error);  // n < 5
    CHECK_THROWS_AS(convexity_region_nonempty({5, 1.9}, grid), std::domain_error);  // p beyond threshold
    CHECK_THROWS_AS(convexity_region_nonempty({5, 1.0}, grid), std::domain_error);  // p <= 1
}

TEST_CASE("p <= 1 path pins the boundary pair and the 2/n bound coefficient") {
    auto [pair1, bound1] = special_case_p_le_1({2, 0.8});
    CHECK(pair1.alpha == 1.0);
    CHECK(pair1.beta == 1.0);
    CHECK(bound1 == 1.0);

    auto [pair2, bound2] = special_case_p_le_1({4, 1.0});
    CHECK(pair2.alpha == 1.0);
    CHECK(pair2.beta == 1.0);
    CHECK(bound2 == 0.5);

    auto [pair3, bound3] = special_case_p_le_1({1, 0.3});
    CHECK(pair3.alpha == 1.0);
    CHECK(bound3 == 2.0);

    CHECK_THROWS_AS(special_case_p_le_1({2, 1.0000001}), std::domain_error);
}

TEST_CASE("input validation of the admissibility entry points") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(check_admissible({0, 2.0}, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(check_admissible({1, nan}, {1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(check_admissible({1, 2.0}, {nan, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(check_admissible({1, 1.0}, {1.0, 0.5}), std::domain_error);   // p <= 1
    CHECK_THROWS_AS(check_admissible({1, 2.0}, {0.0, 0.5}), std::domain_error);   // alpha = 0
    CHECK_THROWS_AS(check_admissible({1, 2.0}, {1.2, 0.5}), std::domain_error);   // alpha > 1
    CHECK_THROWS_AS(check_admissible({1, 2.0}, {1.0, 1.0}), std::domain_error);   // beta = 1
    CHECK_THROWS_AS(check_admissible({1, 2.0}, {1.0, -0.1}), std::domain_error);  // beta < 0

    sweep_grid tiny;
    tiny.alpha_points = 50;
    tiny.beta_points = 50;
    CHECK_THROWS_AS(p_bar_sweep(2, tiny), std::invalid_argument);
}
