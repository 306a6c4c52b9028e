#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "liyau/geometry.hpp"
#include "liyau/solver.hpp"

using namespace liyau;

namespace {

constexpr double kPi = std::numbers::pi;

geometry small_torus(int N = 64, double L = 2.0 * kPi) {
    return geometry(geometry_kind::flat_torus_1d, 1, N, L);
}

// For spatially constant data the problem reduces to the scalar ODE
// u' = u^p, whose p = 2 solution from u(0) = c is c/(1 - c t).
solution run_constant_ode(double u0, double p, double dt_max, std::optional<double> t_end,
                          double cutoff = 1e8) {
    geometry g = small_torus();
    std::vector<double> init(static_cast<std::size_t>(g.num_points()), u0);
    solver_config cfg;
    cfg.p = p;
    cfg.dt_max = dt_max;
    cfg.snapshot_interval = 0.05;
    cfg.blowup_cutoff = cutoff;
    cfg.t_end = t_end;
    return evolve(g, init, cfg);
}

}  // namespace

TEST_CASE("constant data integrates the scalar ODE to high accuracy") {
    solution sol = run_constant_ode(1.0, 2.0, 1e-4, 0.9);
    CHECK_FALSE(sol.blew_up);
    CHECK(sol.t_stop == doctest::Approx(0.9).epsilon(1e-12));
    const auto& last = sol.snapshots.back();
    CHECK(last.first == doctest::Approx(0.9).epsilon(1e-12));
    // Exact value 1/(1 - 0.9) = 10.
    for (double v : last.second) CHECK(std::abs(v - 10.0) / 10.0 < 1e-9);
}

TEST_CASE("constant blow-up run stops within 1% of the exact singular time") {
    // u' = u^2 from 0.5 blows up at t = 1/0.5 = 2.
    solution sol = run_constant_ode(0.5, 2.0, 1e-3, std::nullopt);
    CHECK(sol.blew_up);
    CHECK(std::abs(sol.t_stop - 2.0) < 0.02);
    CHECK(sol.u_max_series.back().second >= 1e8);
}

TEST_CASE("spatial constancy is preserved exactly by the stencil") {
    solution sol = run_constant_ode(1.0, 2.0, 1e-3, 0.5);
    for (const auto& [t, field] : sol.snapshots) {
        const auto [mn, mx] = std::minmax_element(field.begin(), field.end());
        CHECK(*mx - *mn <= 1e-12 * *mx);
    }
}

TEST_CASE("positivity and finiteness hold on every snapshot of a nonuniform run") {
    geometry g = small_torus(128);
    std::vector<double> init(128);
    for (int i = 0; i < 128; ++i)
        init[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::sin(g.coord(i));
    solver_config cfg;
    cfg.p = 1.5;
    cfg.dt_max = 1e-3;
    cfg.blowup_cutoff = 1e6;
    solution sol = evolve(g, init, cfg);
    CHECK(sol.blew_up);
    for (const auto& [t, field] : sol.snapshots)
        for (double v : field) {
            CHECK(v > 0.0);
            CHECK(std::isfinite(v));
        }
}

TEST_CASE("time stepping converges at fourth order when dt_max binds") {
    auto err_at = [](double dt) {
        geometry g(geometry_kind::flat_torus_1d, 1, 32, 2.0 * kPi);
        std::vector<double> init(32, 1.0);
        solver_config cfg;
        cfg.p = 2.0;
        cfg.dt_max = dt;
        cfg.snapshot_interval = 1.0;  // only t_end forces a snapshot
        cfg.t_end = 0.5;
        solution sol = evolve(g, init, cfg);
        return std::abs(sol.snapshots.back().second[0] - 2.0);  // exact: 1/(1-0.5)
    };
    const double e2 = err_at(2e-3);
    const double e1 = err_at(1e-3);
    CHECK(e2 < 1e-9);
    const double ratio = e2 / e1;
    CHECK(ratio > 10.0);
    CHECK(ratio < 25.0);
}

TEST_CASE("snapshots land on the requested interval grid") {
    solution sol = run_constant_ode(1.0, 2.0, 1e-3, 0.9);
    REQUIRE(sol.snapshots.size() >= 19);  // t = 0, 0.05, ..., 0.9
    for (int k = 0; k <= 18; ++k) {
        CAPTURE(k);
        const double target = 0.05 * k;
        bool hit = false;
        for (const auto& [t, field] : sol.snapshots)
            if (std::abs(t - target) < 1e-9) hit = true;
        CHECK(hit);
    }
    // Times are strictly increasing and the trajectory starts at t = 0 with
    // the initial data.
    CHECK(sol.snapshots.front().first == 0.0);
    CHECK(sol.snapshots.front().second[0] == 1.0);
    for (std::size_t k = 0; k + 1 < sol.snapshots.size(); ++k)
        CHECK(sol.snapshots[k].first < sol.snapshots[k + 1].first);
}

TEST_CASE("snapshot refinement clusters near blow-up") {
    solution sol = run_constant_ode(0.5, 2.0, 1e-3, std::nullopt);
    int late = 0;
    for (const auto& [t, field] : sol.snapshots)
        if (t > 0.995 * sol.t_stop) ++late;
    CHECK(late >= 20);  // geometric refinement in max u produces a cluster
}

TEST_CASE("zero-length run returns just the initial state") {
    solution sol = run_constant_ode(3.0, 2.0, 1e-3, 0.0);
    CHECK(sol.t_stop == 0.0);
    CHECK_FALSE(sol.blew_up);
    REQUIRE(sol.snapshots.size() == 1);
    CHECK(sol.snapshots.front().first == 0.0);
    CHECK(sol.snapshots.front().second[0] == 3.0);
}

TEST_CASE("per-step maximum series starts at the initial maximum and ends at t_stop") {
    solution sol = run_constant_ode(1.0, 2.0, 1e-3, 0.7);
    const auto& series = max_series(sol);
    REQUIRE(!series.empty());
    CHECK(series.front().first == 0.0);
    CHECK(series.front().second == 1.0);
    CHECK(series.back().first == doctest::Approx(sol.t_stop).epsilon(1e-12));
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        CHECK(series[k].first < series[k + 1].first);
        CHECK(series[k].second <= series[k + 1].second);  // this data only grows
    }
}

TEST_CASE("input validation of evolve") {
    geometry g = small_torus(16);
    std::vector<double> good(16, 1.0);
    solver_config cfg;

    std::vector<double> wrong_len(15, 1.0);
    CHECK_THROWS_AS(evolve(g, wrong_len, cfg), std::invalid_argument);

    std::vector<double> nonpos(16, 1.0);
    nonpos[3] = 0.0;
    CHECK_THROWS_AS(evolve(g, nonpos, cfg), std::invalid_argument);
    nonpos[3] = -2.0;
    CHECK_THROWS_AS(evolve(g, nonpos, cfg), std::invalid_argument);

    solver_config bad = cfg;
    bad.blowup_cutoff = 0.5;  // below the initial maximum
    CHECK_THROWS_AS(evolve(g, good, bad), std::invalid_argument);

    bad = cfg;
    bad.dt_max = 0.0;
    CHECK_THROWS_AS(evolve(g, good, bad), std::invalid_argument);

    bad = cfg;
    bad.cfl = 1.5;
    CHECK_THROWS_AS(evolve(g, good, bad), std::invalid_argument);

    bad = cfg;
    bad.p = -1.0;
    CHECK_THROWS_AS(evolve(g, good, bad), std::invalid_argument);

    bad = cfg;
    bad.snapshot_interval = 0.0;
    CHECK_THROWS_AS(evolve(g, good, bad), std::invalid_argument);

    bad = cfg;
    bad.t_end = -0.1;
    CHECK_THROWS_AS(evolve(g, good, bad), std::invalid_argument);
}

TEST_CASE("time interpolation is exact at stored snapshots and geometric between them") {
    solution sol = run_constant_ode(1.0, 2.0, 1e-3, 0.4);
    // Exact at a stored time: the stored field comes back bit-for-bit.
    const auto& [ts, fs] = sol.snapshots[3];
    auto at_stored = interpolate_snapshot(sol, ts);
    for (std::size_t i = 0; i < fs.size(); ++i) CHECK(at_stored[i] == fs[i]);

    // Between two snapshots the reconstruction is log-linear in time.
    const auto& lo = sol.snapshots[2];
    const auto& hi = sol.snapshots[3];
    const double t_mid = 0.5 * (lo.first + hi.first);
    const double w = (t_mid - lo.first) / (hi.first - lo.first);
    auto mid = interpolate_snapshot(sol, t_mid);
    for (std::size_t i = 0; i < mid.size(); ++i) {
        const double expected =
            std::exp((1.0 - w) * std::log(lo.second[i]) + w * std::log(hi.second[i]));
        CHECK(mid[i] == doctest::Approx(expected).epsilon(1e-13));
    }
    // And it tracks the exact ODE solution closely at this resolution.
    CHECK(mid[0] == doctest::Approx(1.0 / (1.0 - t_mid)).epsilon(1e-3));

    CHECK_THROWS_AS(interpolate_snapshot(sol, -0.01), std::invalid_argument);
    CHECK_THROWS_AS(interpolate_snapshot(sol, sol.snapshots.back().first + 0.01),
                    std::invalid_argument);
}

TEST_CASE("space-time interpolation: linear in space with torus wrap, geometric in time") {
    geometry g(geometry_kind::flat_torus_1d, 1, 16, 16.0);  // spacing exactly 1
    std::vector<double> a(16), b(16);
    for (int i = 0; i < 16; ++i) {
        a[static_cast<std::size_t>(i)] = 2.0 + i;
        b[static_cast<std::size_t>(i)] = 5.0 + 2.0 * i;
    }
    solution sol{g, {{0.0, a}, {1.0, b}}, false, 1.0, {{0.0, 17.0}, {1.0, 35.0}}, 2.0};

    // Midpoint between nodes 3 and 4 at an exact snapshot time.
    CHECK(interpolate_space_time(sol, 3.5, 0.0) ==
          doctest::Approx(0.5 * (a[3] + a[4])).epsilon(1e-14));
    // Wrap: position 15.5 sits between node 15 and node 0.
    CHECK(interpolate_space_time(sol, 15.5, 0.0) ==
          doctest::Approx(0.5 * (a[15] + a[0])).epsilon(1e-14));
    // Node-exact positions return the field value.
    CHECK(interpolate_space_time(sol, 7.0, 1.0) == doctest::Approx(b[7]).epsilon(1e-14));

    // Time direction: on spatially constant snapshots the value is the
    // geometric mean at the midpoint regardless of position.
    std::vector<double> c2(16, 2.0), c8(16, 8.0);
    solution cs{g, {{0.0, c2}, {1.0, c8}}, false, 1.0, {{0.0, 2.0}, {1.0, 8.0}}, 2.0};
    CHECK(interpolate_space_time(cs, 4.2, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
}
