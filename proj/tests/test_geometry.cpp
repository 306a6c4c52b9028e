#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "liyau/geometry.hpp"

using namespace liyau;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sample(const geometry& g, double (*f)(double)) {
    std::vector<double> out(static_cast<std::size_t>(g.num_points()));
    for (int i = 0; i < g.num_points(); ++i) out[static_cast<std::size_t>(i)] = f(g.coord(i));
    return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace

TEST_CASE("node layouts and constants") {
    geometry torus(geometry_kind::flat_torus_1d, 1, 64, 2.0 * kPi);
    CHECK(torus.dim() == 1);
    CHECK(torus.num_points() == 64);
    CHECK(torus.extent() == 2.0 * kPi);
    CHECK(torus.spacing() == 2.0 * kPi / 64);
    CHECK(torus.coord(0) == 0.0);
    CHECK(torus.coord(1) == torus.spacing());
    CHECK(torus.coord(63) == 63 * torus.spacing());
    CHECK(torus.nonneg_ricci());

    geometry euclid(geometry_kind::radial_euclidean, 6, 512, 10.0);
    CHECK(euclid.spacing() == 10.0 / 511);
    CHECK(euclid.coord(0) == 0.0);
    CHECK(euclid.coord(511) == doctest::Approx(10.0).epsilon(1e-14));

    geometry sphere(geometry_kind::radial_sphere, 5, 256, 123.0);  // extent ignored
    CHECK(sphere.extent() == kPi);
    CHECK(sphere.spacing() == kPi / 256);
    CHECK(sphere.coord(0) == 0.5 * sphere.spacing());  // cell-centered
    CHECK(sphere.coord(0) > 0.0);
    CHECK(sphere.coord(255) < kPi);
    CHECK(sphere.nonneg_ricci());
}

TEST_CASE("geometry kind names round-trip") {
    for (auto kind : {geometry_kind::flat_torus_1d, geometry_kind::radial_euclidean,
                      geometry_kind::radial_sphere}) {
        CHECK(geometry_kind_from_string(to_string(kind)) == kind);
    }
    CHECK_THROWS_AS(geometry_kind_from_string("banana"), std::invalid_argument);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(geometry(geometry_kind::flat_torus_1d, 1, 15, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry(geometry_kind::radial_euclidean, 0, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry(geometry_kind::flat_torus_1d, 2, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry(geometry_kind::radial_euclidean, 3, 64, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(geometry(geometry_kind::radial_euclidean, 3, 64, -1.0), std::invalid_argument);
}

TEST_CASE("torus second-difference operator: eigenfunction accuracy and order") {
    const double L = 2.0 * kPi;
    auto err_at = [&](int N) {
        geometry g(geometry_kind::flat_torus_1d, 1, N, L);
        const double k = 2.0 * kPi * 3.0 / L;  // mode 3
        std::vector<double> u(static_cast<std::size_t>(N));
        std::vector<double> exact(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            u[static_cast<std::size_t>(i)] = std::sin(k * g.coord(i));
            exact[static_cast<std::size_t>(i)] = -k * k * u[static_cast<std::size_t>(i)];
        }
        return max_abs_diff(g.laplacian(u), exact);
    };
    const double e128 = err_at(128);
    const double e256 = err_at(256);
    CHECK(e128 < 0.05);
    CHECK(e128 / e256 > 3.5);  // second-order convergence
    CHECK(e128 / e256 < 4.5);
}

TEST_CASE("torus operator conserves the discrete integral and commutes with shifts") {
    const double L = 5.0;
    const int N = 96;
    geometry g(geometry_kind::flat_torus_1d, 1, N, L);
    std::vector<double> u(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const double x = g.coord(i);
        u[static_cast<std::size_t>(i)] =
            1.5 + std::sin(2.0 * kPi * x / L) + 0.3 * std::cos(4.0 * kPi * x / L + 0.7);
    }
    auto lap = g.laplacian(u);
    double total = 0.0, scale = 0.0;
    for (double v : lap) {
        total += v;
        scale += std::abs(v);
    }
    CHECK(std::abs(total) <= 1e-12 * std::max(scale, 1.0));

    // Cyclic shift equivariance is exact in floating point: every node uses
    // the same three-point arithmetic.
    const int shift = 17;
    std::vector<double> u_shift(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i)
        u_shift[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>((i + shift) % N)];
    auto lap_shift = g.laplacian(u_shift);
    for (int i = 0; i < N; ++i) {
        CHECK(lap_shift[static_cast<std::size_t>(i)] ==
              lap[static_cast<std::size_t>((i + shift) % N)]);
    }
}

TEST_CASE("radial operator in flat dimension n: smooth even field, accuracy and order") {
    const int n = 6;
    const double R = 10.0;
    auto err_at = [&](int N) {
        geometry g(geometry_kind::radial_euclidean, n, N, R);
        const double w = kPi / R;
        std::vector<double> u(static_cast<std::size_t>(N));
        std::vector<double> exact(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            const double r = g.coord(i);
            u[static_cast<std::size_t>(i)] = std::cos(w * r);  // even at 0, du = 0 at R
            const double upp = -w * w * std::cos(w * r);
            const double up = -w * std::sin(w * r);
            exact[static_cast<std::size_t>(i)] = (i == 0) ? n * upp : upp + (n - 1.0) * up / r;
        }
        auto lap = g.laplacian(u);
        auto mask = g.check_mask();
        double worst = 0.0;
        for (int i = 0; i < N; ++i)
            if (mask[static_cast<std::size_t>(i)])
                worst = std::max(worst, std::abs(lap[static_cast<std::size_t>(i)] -
                                                 exact[static_cast<std::size_t>(i)]));
        return worst;
    };
    const double e128 = err_at(128);
    const double e256 = err_at(256);
    CHECK(e128 < 0.01);
    CHECK(e128 / e256 > 3.2);
}

TEST_CASE("radial operator regularized origin value on a rational bump") {
    // u(r) = 24/(1+r^2)^2 has u''(0) = -96, so in dimension 6 the operator
    // value at the origin must approach 6 * (-96) = -576 = -u(0)^2.
    geometry g(geometry_kind::radial_euclidean, 6, 512, 10.0);
    auto u = sample(g, +[](double r) {
        const double q = 1.0 + r * r;
        return 24.0 / (q * q);
    });
    auto lap = g.laplacian(u);
    CHECK(std::abs(lap[0] + 576.0) / 576.0 < 2e-3);
}

TEST_CASE("spherical operator: zonal eigenfunction accuracy and order") {
    const int n = 5;
    auto err_at = [&](int N) {
        geometry g(geometry_kind::radial_sphere, n, N, 0.0);
        std::vector<double> u(static_cast<std::size_t>(N));
        std::vector<double> exact(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            const double th = g.coord(i);
            u[static_cast<std::size_t>(i)] = std::cos(th);  // first zonal harmonic
            exact[static_cast<std::size_t>(i)] = -n * std::cos(th);
        }
        return max_abs_diff(g.laplacian(u), exact);
    };
    const double e128 = err_at(128);
    const double e256 = err_at(256);
    CHECK(e128 < 0.01);
    CHECK(e128 / e256 > 3.2);
}

TEST_CASE("spherical operator respects the equatorial reflection symmetry") {
    const int N = 200;
    geometry g(geometry_kind::radial_sphere, 5, N, 0.0);
    std::vector<double> u(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        const double th = g.coord(i);
        u[static_cast<std::size_t>(i)] = 1.5 + 0.5 * std::sin(th);  // symmetric about pi/2
    }
    auto lap = g.laplacian(u);
    double scale = 0.0;
    for (double v : lap) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < N; ++i) {
        CHECK(std::abs(lap[static_cast<std::size_t>(i)] -
                       lap[static_cast<std::size_t>(N - 1 - i)]) <= 1e-11 * scale);
    }
}

TEST_CASE("squared-gradient stencil: accuracy, order, and flat ends") {
    const double L = 2.0 * kPi;
    auto err_at = [&](int N) {
        geometry g(geometry_kind::flat_torus_1d, 1, N, L);
        const double k = 2.0;
        std::vector<double> u(static_cast<std::size_t>(N));
        std::vector<double> exact(static_cast<std::size_t>(N));
        for (int i = 0; i < N; ++i) {
            const double x = g.coord(i);
            u[static_cast<std::size_t>(i)] = std::sin(k * x);
            const double du = k * std::cos(k * x);
            exact[static_cast<std::size_t>(i)] = du * du;
        }
        return max_abs_diff(g.grad_sq(u), exact);
    };
    const double e128 = err_at(128);
    const double e256 = err_at(256);
    CHECK(e128 < 0.05);  // ~0.3% of the gradient-squared scale k^2 = 4
    CHECK(e128 / e256 > 3.2);

    // At the radial ends the analytic derivative of cos(pi r / R) vanishes;
    // the one-sided stencil must reproduce a squared value of order h^4.
    geometry g(geometry_kind::radial_euclidean, 3, 256, 10.0);
    auto u = sample(g, +[](double r) { return std::cos(kPi * r / 10.0); });
    auto gs = g.grad_sq(u);
    CHECK(gs[0] >= 0.0);
    CHECK(gs[0] < 1e-6);
    CHECK(gs[255] >= 0.0);
    CHECK(gs[255] < 1e-6);
}

TEST_CASE("geodesic distances: wrap-aware on the torus, coordinate gap elsewhere") {
    const int N = 64;
    const double L = 2.0 * kPi;
    geometry torus(geometry_kind::flat_torus_1d, 1, N, L);
    CHECK(torus.geodesic_distance(0, 1) == doctest::Approx(torus.spacing()).epsilon(1e-14));
    CHECK(torus.geodesic_distance(0, N - 1) ==
          doctest::Approx(torus.spacing()).epsilon(1e-14));  // minor arc
    CHECK(torus.geodesic_distance(0, N / 2) == doctest::Approx(L / 2).epsilon(1e-14));
    CHECK(torus.geodesic_distance(5, 20) == torus.geodesic_distance(20, 5));
    CHECK(torus.geodesic_distance(7, 7) == 0.0);

    geometry euclid(geometry_kind::radial_euclidean, 3, 64, 9.0);
    CHECK(euclid.geodesic_distance(10, 25) ==
          doctest::Approx(std::abs(euclid.coord(10) - euclid.coord(25))).epsilon(1e-14));

    geometry sphere(geometry_kind::radial_sphere, 5, 64, 0.0);
    CHECK(sphere.geodesic_distance(0, 63) ==
          doctest::Approx(sphere.coord(63) - sphere.coord(0)).epsilon(1e-14));

    CHECK_THROWS_AS(torus.geodesic_distance(-1, 0), std::invalid_argument);
    CHECK_THROWS_AS(torus.geodesic_distance(0, N), std::invalid_argument);
}

TEST_CASE("check mask excludes only the artificial outer band") {
    geometry euclid(geometry_kind::radial_euclidean, 3, 100, 5.0);
    auto mask = euclid.check_mask();
    REQUIRE(mask.size() == 100);
    int excluded = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) {
            ++excluded;
            CHECK(i >= 90);  // ceil(10% of 100) nodes nearest r = R
        }
    }
    CHECK(excluded == 10);

    geometry torus(geometry_kind::flat_torus_1d, 1, 64, 1.0);
    for (bool b : torus.check_mask()) CHECK(b);
    geometry sphere(geometry_kind::radial_sphere, 5, 64, 0.0);
    for (bool b : sphere.check_mask()) CHECK(b);
}

TEST_CASE("field validation") {
    geometry g(geometry_kind::flat_torus_1d, 1, 32, 1.0);
    std::vector<double> short_field(31, 1.0);
    CHECK_THROWS_AS(g.laplacian(short_field), std::invalid_argument);
    std::vector<double> bad(32, 1.0);
    bad[5] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(g.laplacian(bad), std::invalid_argument);
    CHECK_THROWS_AS(g.grad_sq(bad), std::invalid_argument);
}
