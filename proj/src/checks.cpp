#include "liyau/checks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "liyau/numeric.hpp"

namespace liyau {

namespace {

constexpr double k_inf = std::numeric_limits<double>::infinity();

// Offset constant of the margin: 1/epsilon for p > 1, the hard-coded 2/n on
// the p <= 1 path (pair (1,1), where the epsilon formula is undefined).
std::pair<double, double> margin_offset(const solution& sol, const param_pair& pair) {
    const problem prob{sol.geom.dim(), sol.p};
    if (sol.p > 1.0) {
        const double eps = epsilon(prob, pair);
        return {eps, 1.0 / eps};
    }
    if (pair.alpha != 1.0 || pair.beta != 1.0)
        throw std::domain_error("liyau_check: p <= 1 requires the pair (1, 1)");
    return {std::numeric_limits<double>::quiet_NaN(), special_case_p_le_1(prob).second};
}

}  // namespace

liyau_report liyau_check(const solution& sol, const param_pair& pair, double t_lo,
                         double t_hi) {
    if (sol.snapshots.empty()) throw std::invalid_argument("liyau_check: empty solution");
    const auto [eps, offset] = margin_offset(sol, pair);

    liyau_report rep;
    rep.pair = pair;
    rep.epsilon = eps;
    rep.offset = offset;
    rep.checked_region = sol.geom.check_mask();
    rep.worst_margin = k_inf;
    rep.tol_disc = 0.0;

    const double pm1 = sol.p - 1.0;
    const double h2 = sol.geom.spacing() * sol.geom.spacing();
    const std::size_t N = static_cast<std::size_t>(sol.geom.num_points());
    std::vector<double> f(N);
    for (const auto& [t, u] : sol.snapshots) {
        if (!(t > t_lo) || t > t_hi) continue;
        for (std::size_t i = 0; i < N; ++i) f[i] = std::log(u[i]);
        const std::vector<double> lap_f = sol.geom.laplacian(f);
        const std::vector<double> grad2_f = sol.geom.grad_sq(f);
        double min_margin = k_inf;
        double max_lap = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            if (!rep.checked_region[i]) continue;
            const double F = t * (lap_f[i] + (1.0 - pair.alpha) * grad2_f[i] +
                                  (1.0 - pair.beta) * pow_fast(u[i], pm1));
            min_margin = std::min(min_margin, F + offset);
            max_lap = std::max(max_lap, std::abs(lap_f[i]));
        }
        rep.per_snapshot.emplace_back(t, min_margin);
        rep.tol_disc_per_snapshot.push_back(10.0 * h2 * max_lap);
        rep.worst_margin = std::min(rep.worst_margin, min_margin);
        rep.tol_disc = std::max(rep.tol_disc, rep.tol_disc_per_snapshot.back());
    }
    if (rep.per_snapshot.empty())
        throw std::invalid_argument("liyau_check: no snapshot in the requested time range");
    rep.violation = rep.worst_margin < -rep.tol_disc;
    return rep;
}

double liyau_form_gap(const geometry& geom, const std::vector<double>& field, double p,
                      const param_pair& pair, double t) {
    const std::size_t N = field.size();
    std::vector<double> f(N);
    for (std::size_t i = 0; i < N; ++i) f[i] = std::log(field[i]);
    const std::vector<double> lap_f = geom.laplacian(f);
    const std::vector<double> grad2_f = geom.grad_sq(f);
    double gap = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double upm1 = pow_fast(field[i], p - 1.0);
        const double spatial =
            t * (lap_f[i] + (1.0 - pair.alpha) * grad2_f[i] + (1.0 - pair.beta) * upm1);
        const double f_t = lap_f[i] + grad2_f[i] + upm1;
        const double time_form =
            t * (f_t - pair.alpha * grad2_f[i] - pair.beta * upm1);
        gap = std::max(gap, std::abs(spatial - time_form));
    }
    return gap;
}

harnack_report harnack_check(const solution& sol, const param_pair& pair,
                             const path_spec& path, double tol) {
    if (sol.snapshots.empty()) throw std::invalid_argument("harnack_check: empty solution");
    if (path.segments < 8)
        throw std::invalid_argument("harnack_check: need at least 8 path segments");
    if (!(path.t1 > 0.0) || !(path.t1 < path.t2))
        throw std::invalid_argument("harnack_check: need 0 < t1 < t2");
    const double span_lo = sol.snapshots.front().first;
    const double span_hi = sol.snapshots.back().first;
    if (path.t1 < span_lo || path.t2 > span_hi)
        throw std::invalid_argument("harnack_check: times outside the stored snapshot span");
    const geometry& g = sol.geom;
    if (path.x1 < 0 || path.x1 >= g.num_points() || path.x2 < 0 || path.x2 >= g.num_points())
        throw std::invalid_argument("harnack_check: node index out of range");
    if (!(sol.p > 1.0))
        throw std::domain_error("harnack_check: requires p > 1");

    const double eps = epsilon(problem{g.dim(), sol.p}, pair);

    // Constant-speed geodesic from x2 (at time t2) to x1 (at time t1); on the
    // torus the minor arc, via the signed wrapped displacement.
    const double c1 = g.coord(path.x1);
    const double c2 = g.coord(path.x2);
    double disp = c1 - c2;
    if (g.kind() == geometry_kind::flat_torus_1d) {
        if (disp > g.extent() / 2.0) disp -= g.extent();
        if (disp < -g.extent() / 2.0) disp += g.extent();
    }
    const double dist = std::abs(disp);

    harnack_report rep;
    rep.path = path;
    rep.tol = tol;
    rep.lhs = interpolate_snapshot(sol, path.t1)[static_cast<std::size_t>(path.x1)];
    const double u22 = interpolate_snapshot(sol, path.t2)[static_cast<std::size_t>(path.x2)];
    const double dt = path.t2 - path.t1;
    rep.rho_simple = dist * dist / (4.0 * pair.alpha * dt);

    std::vector<double> samples(static_cast<std::size_t>(path.segments) + 1);
    for (int k = 0; k <= path.segments; ++k) {
        const double s = static_cast<double>(k) / path.segments;
        const double coord = c2 + s * disp;
        const double tau = (1.0 - s) * path.t2 + s * path.t1;
        samples[static_cast<std::size_t>(k)] =
            pow_fast(interpolate_space_time(sol, coord, tau), sol.p - 1.0);
    }
    rep.rho_full = rep.rho_simple - pair.beta * dt * trapezoid_unit(samples);

    const double growth = std::pow(path.t2 / path.t1, 1.0 / eps);
    rep.rhs_simple = u22 * growth * std::exp(rep.rho_simple);
    rep.rhs_full = u22 * growth * std::exp(rep.rho_full);
    rep.holds_simple = rep.lhs <= rep.rhs_simple * (1.0 + tol);
    rep.holds_full = rep.lhs <= rep.rhs_full * (1.0 + tol);
    return rep;
}

monotone_convex_report monotone_convex_check(const solution& sol, const param_pair& pair,
                                             double T0, bool want_convex) {
    if (sol.snapshots.empty())
        throw std::invalid_argument("monotone_convex_check: empty solution");
    if (!(sol.p > 1.0))
        throw std::domain_error("monotone_convex_check: requires p > 1");
    const geometry& g = sol.geom;
    const problem prob{g.dim(), sol.p};
    const double eps = epsilon(prob, pair);

    std::optional<convexity_coefficient> conv;
    if (want_convex) {
        if (g.dim() < 5)
            throw std::domain_error("monotone_convex_check: convexity margin requires n >= 5");
        const convexity_coefficient cc = convexity_coeff(prob, pair);  // needs alpha > beta
        if (!(cc.value >= 0.0))
            throw std::domain_error(
                "monotone_convex_check: pair is outside the convexity-admissible region");
        conv = cc;
    }

    monotone_convex_report rep;
    rep.T0 = T0;
    rep.mono_margin = k_inf;
    if (want_convex) rep.convex_margin = k_inf;

    const std::vector<bool> mask = g.check_mask();
    const std::size_t N = static_cast<std::size_t>(g.num_points());
    const double pm1 = sol.p - 1.0;
    for (const auto& [t, u] : sol.snapshots) {
        if (!(t > T0)) continue;
        std::vector<double> ut = g.laplacian(u);
        std::vector<double> upow(N), hcoef(N);
        for (std::size_t i = 0; i < N; ++i) {
            upow[i] = pow_fast(u[i], sol.p);
            hcoef[i] = sol.p * pow_fast(u[i], pm1);
            ut[i] += upow[i];
        }
        const std::vector<double> grad2_u = g.grad_sq(u);
        double mono_min = k_inf;
        for (std::size_t i = 0; i < N; ++i) {
            if (!mask[i] || !(ut[i] > 0.0)) continue;
            const double m = ut[i] - pair.alpha * grad2_u[i] / u[i] - pair.beta * upow[i] +
                             u[i] / (eps * (t - T0));
            mono_min = std::min(mono_min, m);
        }
        if (mono_min < k_inf) {
            rep.mono_per_snapshot.emplace_back(t, mono_min);
            rep.mono_margin = std::min(rep.mono_margin, mono_min);
        }

        if (!want_convex) continue;
        std::vector<double> dtt = g.laplacian(ut);
        for (std::size_t i = 0; i < N; ++i) dtt[i] += hcoef[i] * ut[i];
        const std::vector<double> grad2_ut = g.grad_sq(ut);
        double conv_min = k_inf;
        for (std::size_t i = 0; i < N; ++i) {
            if (!mask[i] || !(ut[i] > 0.0)) continue;
            const double m = dtt[i] / ut[i] - pair.alpha * grad2_ut[i] / (ut[i] * ut[i]) -
                             pair.beta * hcoef[i] +
                             g.dim() / (2.0 * pair.alpha * (t - T0));
            conv_min = std::min(conv_min, m);
        }
        if (conv_min < k_inf) {
            rep.convex_per_snapshot.emplace_back(t, conv_min);
            rep.convex_margin = std::min(*rep.convex_margin, conv_min);
        }
    }
    if (rep.mono_per_snapshot.empty())
        throw std::runtime_error(
            "monotone_convex_check: no snapshot after T0 had points with u_t > 0");
    return rep;
}

double decay_bound_check(const solution& sol, const param_pair& pair, double T_bar) {
    if (sol.snapshots.empty()) throw std::invalid_argument("decay_bound_check: empty solution");
    if (!(sol.p > 1.0)) throw std::domain_error("decay_bound_check: requires p > 1");
    if (!(pair.beta > 0.0)) throw std::domain_error("decay_bound_check: requires beta > 0");
    if (!(T_bar > sol.snapshots.back().first))
        throw std::invalid_argument("decay_bound_check: T_bar must exceed the last snapshot time");

    const double pm1 = sol.p - 1.0;
    const double C = std::pow(pair.beta * pm1, -1.0 / pm1);
    const std::vector<bool> mask = sol.geom.check_mask();
    double margin = k_inf;
    for (const auto& [t, u] : sol.snapshots) {
        const double bound = C * std::pow(T_bar - t, -1.0 / pm1);
        for (std::size_t i = 0; i < u.size(); ++i)
            if (mask[i]) margin = std::min(margin, bound - u[i]);
    }
    return margin;
}

}  // namespace liyau
