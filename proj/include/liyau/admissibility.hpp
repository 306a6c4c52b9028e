#pragma once

#include <optional>
#include <utility>

namespace liyau {

// The pair (n, p): spatial dimension and nonlinearity exponent of
// u_t = laplacian(u) + u^p.
struct problem {
    int n = 1;
    double p = 2.0;
};

// A candidate estimate-parameter pair. Admissible choices require
// 0 < alpha <= 1 and 0 <= beta < 1; the p <= 1 special path uses the
// boundary pair (1, 1).
struct param_pair {
    double alpha = 1.0;
    double beta = 0.0;
};

struct admissibility_result {
    bool admissible = false;
    // Value of (p-1)(beta*p - alpha) + 4*alpha*(1-alpha)*(1-beta)/n; the
    // estimate requires it to be >= 0.
    double cond2_value = 0.0;
    // Value of 1 + 8*alpha*(1-beta)/n - p; the estimate requires it to be
    // strictly positive.
    double cond1_slack = 0.0;
    // Present iff admissible; always > 0 then.
    std::optional<double> epsilon;
};

// Closed-form threshold exponent and the reference exponents it is compared
// against. ref_lower and sobolev_ps require n >= 3 and are unset below that.
struct threshold_report {
    int n = 0;
    double p_bar_closed = 0.0;
    double p_bar_sweep = 0.0;
    std::optional<double> sobolev_ps;  // (n+2)/(n-2)
    double ref_upper = 0.0;            // n(n+2)/(n-1)^2
    std::optional<double> ref_lower;   // n/(n-2)
};

// The bracket coefficient governing time-convexity, plus the Young-inequality
// parameter theta (defined only for alpha > beta, where theta > 0).
struct convexity_coefficient {
    double value = 0.0;
    double theta = 0.0;
};

// Resolution of the (alpha, beta) sweeps. alpha samples are uniform on
// [margin, 1-margin] with the boundary value alpha = 1 appended (the
// supremum for n <= 3 is approached along alpha = 1); beta samples are
// uniform on [margin, 1-margin]. When a sweep finds no admissible point it
// refines around the best near-misses before concluding infeasibility.
struct sweep_grid {
    int alpha_points = 400;
    int beta_points = 400;
    double p_tol = 1e-4;     // bisection width for p_bar_sweep
    double margin = 1e-4;    // offset from the open ends of (0,1)
    int zoom_candidates = 6;
    int zoom_rounds = 8;
    int zoom_points = 25;    // zoom window resolution per axis
};

// Decides both admissibility conditions exactly as written and fills epsilon
// when they hold. Throws std::domain_error when p <= 1, alpha outside (0,1],
// or beta outside [0,1); std::invalid_argument when n < 1 or inputs are not
// finite.
admissibility_result check_admissible(const problem& prob, const param_pair& pair);

// The positive constant of the estimate,
//   epsilon = [n(p-1) / (8 alpha (1-beta)^2)] * [1 + 8 alpha (1-beta)/n - p].
// Throws std::domain_error when the pair is not admissible.
double epsilon(const problem& prob, const param_pair& pair);

// Threshold exponent: 8/n for n <= 3, (3n+4+3*sqrt(n(n+4)))/(2(3n-4)) for
// n >= 4. Throws std::invalid_argument when n < 1.
double p_bar_closed(int n);

// Brute-force threshold: sup{p > 1 : some grid pair is admissible}, located
// by bisection on p over grid feasibility. Throws std::invalid_argument when
// the grid has fewer than 100 points per axis.
double p_bar_sweep(int n, const sweep_grid& grid = {});

// True iff some (alpha, beta) on the grid (after zoom refinement) is
// admissible for (n, p). Exposed because it is the predicate p_bar_sweep
// bisects on and the down-set property tests sample it directly.
bool grid_feasible(int n, double p, const sweep_grid& grid = {});

// Fills the closed-form and sweep thresholds plus reference exponents, and
// verifies the expected orderings (ref_lower < p_bar < ref_upper for n >= 4,
// p_bar < ref_upper for n in {2,3}), throwing std::runtime_error when an
// ordering fails. Throws std::domain_error for n < 2.
threshold_report make_threshold_report(int n, const sweep_grid& grid = {});

// The convexity bracket
//   alpha + beta(p-2) - n(p-1)(alpha-beta)^2 / (8 alpha (1-alpha)(1-beta))
// and theta = n p (p-1)(alpha-beta) / (8 alpha (1-alpha)(1-beta)).
// Throws std::domain_error when alpha <= beta (theta would be <= 0) or when
// alpha is 0 or 1 or beta is 1 (division by zero).
convexity_coefficient convexity_coeff(const problem& prob, const param_pair& pair);

struct convexity_region_result {
    param_pair pair;
    convexity_coefficient coeff;
};

// Sweeps the grid for pairs that are admissible AND have alpha > beta AND a
// nonnegative convexity coefficient; returns the one with maximal
// coefficient, or nullopt when no grid point qualifies. Throws
// std::domain_error when n < 5 or p outside (1, p_bar_closed(n)).
std::optional<convexity_region_result> convexity_region_nonempty(
    const problem& prob, const sweep_grid& grid = {});

// The p <= 1 path: the pair (1, 1) with bound coefficient 2/n, meaning the
// estimate margin reads F + 2/n >= 0. Throws std::domain_error when p > 1.
std::pair<param_pair, double> special_case_p_le_1(const problem& prob);

}  // namespace liyau
