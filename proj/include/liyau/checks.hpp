#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "liyau/admissibility.hpp"
#include "liyau/geometry.hpp"
#include "liyau/solver.hpp"

namespace liyau {

// Margins of the pointwise differential estimate. With f = log u and
//   F = t * (laplacian(f) + (1-alpha)|grad f|^2 + (1-beta) u^(p-1)),
// the estimate asserts margin(x, t) = F(x, t) + offset >= 0 along exact
// solutions, where offset = 1/epsilon for p > 1 and 2/n on the p <= 1 path.
struct liyau_report {
    param_pair pair;
    double epsilon = 0.0;  // NaN on the p <= 1 path (no epsilon there)
    double offset = 0.0;
    std::vector<std::pair<double, double>> per_snapshot;  // (t, min margin over mask)
    double worst_margin = 0.0;
    // Discretization tolerance: 10 * spacing^2 * max|laplacian(f)|, reported
    // per snapshot and as the overall maximum. A worst margin below
    // -tol_disc is flagged, never clipped.
    std::vector<double> tol_disc_per_snapshot;
    double tol_disc = 0.0;
    bool violation = false;
    std::vector<bool> checked_region;
};

struct harnack_report {
    path_spec path;
    double lhs = 0.0;
    double rhs_full = 0.0;
    double rhs_simple = 0.0;
    double rho_full = 0.0;
    double rho_simple = 0.0;  // kinetic term only
    bool holds_full = false;
    bool holds_simple = false;
    double tol = 0.05;  // slack factor on the right, holds <=> lhs <= rhs*(1+tol)
};

struct monotone_convex_report {
    double mono_margin = 0.0;
    std::optional<double> convex_margin;
    double T0 = 0.0;
    std::vector<std::pair<double, double>> mono_per_snapshot;
    std::vector<std::pair<double, double>> convex_per_snapshot;
};

// Evaluates the estimate margins on every stored snapshot with
// t_lo < t <= t_hi, over the geometry's check mask. Spatial stencils only;
// no time differencing. For p > 1 the pair must be admissible
// (std::domain_error otherwise); for p <= 1 only the pair (1, 1) is
// accepted. Throws std::invalid_argument when no snapshot falls in range.
liyau_report liyau_check(const solution& sol, const param_pair& pair, double t_lo,
                         double t_hi);

// Largest pointwise gap between the two algebraically equal forms of F: the
// spatial form above and t*(f_t - alpha|grad f|^2 - beta u^(p-1)) with f_t
// defined through the substituted equation f_t = laplacian(f) + |grad f|^2
// + u^(p-1). Zero up to floating-point regrouping; used as an exactness
// check of the rewrite.
double liyau_form_gap(const geometry& geom, const std::vector<double>& field, double p,
                      const param_pair& pair, double t);

// Space-time comparison along the discrete geodesic from x2 to x1, sampled
// at `segments`+1 points with time running from t2 down to t1:
//   lhs = u(x1, t1),
//   rhs = u(x2, t2) * (t2/t1)^(1/epsilon) * exp(rho),
//   rho_full = d^2/(4 alpha (t2-t1))
//              - beta (t2-t1) * integral of u^(p-1) along the path,
// rho_simple keeps only the kinetic term (hence rhs_simple >= rhs_full).
// Throws std::invalid_argument on bad time ordering, times outside the
// stored span, or segments < 8; std::domain_error on an inadmissible pair.
harnack_report harnack_check(const solution& sol, const param_pair& pair,
                             const path_spec& path, double tol = 0.05);

// Monotonicity margin min over {u_t > 0} of
//   u_t - alpha |grad u|^2/u - beta u^p + u/(epsilon (t - T0)),
// and (when want_convex) the time-convexity margin min over {u_t > 0} of
//   dtt_u/u_t - alpha |grad u_t|^2/u_t^2 - beta p u^(p-1) + n/(2 alpha (t-T0)),
// where u_t = laplacian(u) + u^p and dtt_u = laplacian(u_t) + p u^(p-1) u_t
// (pure spatial evaluations). Convexity requires dimension >= 5 and a pair
// that is admissible with alpha > beta and nonnegative convexity
// coefficient; requesting it outside that scope throws std::domain_error.
monotone_convex_report monotone_convex_check(const solution& sol, const param_pair& pair,
                                             double T0, bool want_convex);

// Decay comparison: min over snapshots/nodes (mask applied) of
//   C/(T_bar - t)^(1/(p-1)) - u(x, t),  C = (beta (p-1))^(-1/(p-1)).
// Nonnegative means the bound holds on the sampled data. Throws
// std::domain_error for p <= 1 or beta = 0; std::invalid_argument when
// T_bar <= the last snapshot time.
double decay_bound_check(const solution& sol, const param_pair& pair, double T_bar);

}  // namespace liyau
