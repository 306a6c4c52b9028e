#include "liyau/admissibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "liyau/parallel.hpp"

namespace liyau {

namespace {

void validate_problem(const problem& prob) {
    if (!std::isfinite(prob.p)) throw std::invalid_argument("problem: p must be finite");
    if (prob.n < 1) throw std::invalid_argument("problem: n must be >= 1");
    if (prob.p <= 0.0) throw std::invalid_argument("problem: p must be > 0");
}

void validate_pair(const param_pair& pair) {
    if (!std::isfinite(pair.alpha) || !std::isfinite(pair.beta))
        throw std::invalid_argument("param_pair: alpha and beta must be finite");
    if (!(pair.alpha > 0.0) || pair.alpha > 1.0)
        throw std::domain_error("param_pair: alpha must lie in (0, 1]");
    if (pair.beta < 0.0 || !(pair.beta < 1.0))
        throw std::domain_error("param_pair: beta must lie in [0, 1)");
}

double cond2_value(int n, double p, double a, double b) {
    return (p - 1.0) * (b * p - a) + 4.0 * a * (1.0 - a) * (1.0 - b) / n;
}

double cond1_slack(int n, double p, double a, double b) {
    return 1.0 + 8.0 * a * (1.0 - b) / n - p;
}

double epsilon_formula(int n, double p, double a, double b, double slack) {
    return (n * (p - 1.0) / (8.0 * a * (1.0 - b) * (1.0 - b))) * slack;
}

// Uniform samples on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo + i * step;
    out.back() = hi;
    return out;
}

bool pair_ok(int n, double p, double a, double b) {
    return cond2_value(n, p, a, b) >= 0.0 && cond1_slack(n, p, a, b) > 0.0;
}

}  // namespace

admissibility_result check_admissible(const problem& prob, const param_pair& pair) {
    validate_problem(prob);
    validate_pair(pair);
    if (prob.p <= 1.0)
        throw std::domain_error("check_admissible: requires p > 1 (use special_case_p_le_1)");

    admissibility_result res;
    res.cond2_value = cond2_value(prob.n, prob.p, pair.alpha, pair.beta);
    res.cond1_slack = cond1_slack(prob.n, prob.p, pair.alpha, pair.beta);
    res.admissible = res.cond2_value >= 0.0 && res.cond1_slack > 0.0;
    if (res.admissible) {
        const double eps =
            epsilon_formula(prob.n, prob.p, pair.alpha, pair.beta, res.cond1_slack);
        if (!(eps > 0.0))
            throw std::runtime_error("check_admissible: epsilon not positive for admissible pair");
        res.epsilon = eps;
    }
    return res;
}

double epsilon(const problem& prob, const param_pair& pair) {
    const admissibility_result res = check_admissible(prob, pair);
    if (!res.admissible)
        throw std::domain_error("epsilon: pair is not admissible for this (n, p)");
    return *res.epsilon;
}

double p_bar_closed(int n) {
    if (n < 1) throw std::invalid_argument("p_bar_closed: n must be >= 1");
    if (n <= 3) return 8.0 / n;
    const double root = std::sqrt(static_cast<double>(n) * (n + 4));
    return (3.0 * n + 4.0 + 3.0 * root) / (2.0 * (3.0 * n - 4.0));
}

bool grid_feasible(int n, double p, const sweep_grid& grid) {
    if (n < 1) throw std::invalid_argument("grid_feasible: n must be >= 1");
    if (grid.alpha_points < 100 || grid.beta_points < 100)
        throw std::invalid_argument("grid_feasible: need at least 100 grid points per axis");
    if (!(p > 1.0)) return false;

    std::vector<double> alphas = linspace(grid.margin, 1.0 - grid.margin, grid.alpha_points);
    alphas.push_back(1.0);  // the supremum for n <= 3 is approached along alpha = 1
    const std::vector<double> betas = linspace(grid.margin, 1.0 - grid.margin, grid.beta_points);

    const std::size_t na = alphas.size();
    const std::size_t nb = betas.size();
    std::vector<double> margins(na * nb);
    std::vector<char> row_found(na, 0);
    parallel_for(na, [&](std::size_t i) {
        const double a = alphas[i];
        bool found = false;
        for (std::size_t j = 0; j < nb; ++j) {
            const double b = betas[j];
            const double c2 = cond2_value(n, p, a, b);
            const double sl = cond1_slack(n, p, a, b);
            if (c2 >= 0.0 && sl > 0.0) found = true;
            margins[i * nb + j] = std::min(c2, sl);
        }
        row_found[i] = found ? 1 : 0;
    });
    for (std::size_t i = 0; i < na; ++i)
        if (row_found[i]) return true;

    // No admissible grid point: refine around the best near-misses before
    // concluding infeasibility (the feasible set can be thinner than a cell).
    std::vector<std::size_t> order(margins.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    const std::size_t keep = std::min<std::size_t>(2000, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep),
                      order.end(), [&](std::size_t x, std::size_t y) {
                          if (margins[x] != margins[y]) return margins[x] > margins[y];
                          return x < y;
                      });
    const double cell = (1.0 - 2.0 * grid.margin) / (grid.alpha_points - 1);
    std::vector<std::pair<double, double>> cands;
    for (std::size_t k = 0; k < keep && static_cast<int>(cands.size()) < grid.zoom_candidates;
         ++k) {
        const std::size_t idx = order[k];
        const double pa = alphas[idx / nb];
        const double pb = betas[idx % nb];
        bool distinct = true;
        for (const auto& [qa, qb] : cands)
            if (std::abs(pa - qa) <= 2.0 * cell && std::abs(pb - qb) <= 2.0 * cell) {
                distinct = false;
                break;
            }
        if (distinct) cands.emplace_back(pa, pb);
    }

    for (const auto& [ca, cb] : cands) {
        double wa = 1.5 * cell, wb = 1.5 * cell;
        double ba = ca, bb = cb;
        for (int round = 0; round < grid.zoom_rounds; ++round) {
            const std::vector<double> aa =
                linspace(std::max(grid.margin, ba - wa), std::min(1.0, ba + wa),
                         grid.zoom_points);
            const std::vector<double> bg =
                linspace(std::max(0.0, bb - wb), std::min(1.0 - grid.margin, bb + wb),
                         grid.zoom_points);
            double best = -std::numeric_limits<double>::infinity();
            for (double a : aa)
                for (double b : bg) {
                    const double c2 = cond2_value(n, p, a, b);
                    const double sl = cond1_slack(n, p, a, b);
                    if (c2 >= 0.0 && sl > 0.0) return true;
                    const double m = std::min(c2, sl);
                    if (m > best) {
                        best = m;
                        ba = a;
                        bb = b;
                    }
                }
            wa /= 8.0;
            wb /= 8.0;
        }
    }
    return false;
}

double p_bar_sweep(int n, const sweep_grid& grid) {
    if (n < 1) throw std::invalid_argument("p_bar_sweep: n must be >= 1");
    if (grid.alpha_points < 100 || grid.beta_points < 100)
        throw std::invalid_argument("p_bar_sweep: need at least 100 grid points per axis");

    double lo = 1.0 + 1e-9;
    double hi = n <= 3 ? 8.0 / n + 1.0 : 3.0;
    if (!grid_feasible(n, lo, grid))
        throw std::runtime_error("p_bar_sweep: no admissible pair just above p = 1; grid too coarse");
    if (grid_feasible(n, hi, grid))
        throw std::runtime_error("p_bar_sweep: upper bracket is feasible; cannot bisect");
    while (hi - lo > grid.p_tol) {
        const double mid = 0.5 * (lo + hi);
        if (grid_feasible(n, mid, grid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

threshold_report make_threshold_report(int n, const sweep_grid& grid) {
    if (n < 2) throw std::domain_error("make_threshold_report: n must be >= 2");
    threshold_report rep;
    rep.n = n;
    rep.p_bar_closed = p_bar_closed(n);
    rep.p_bar_sweep = p_bar_sweep(n, grid);
    rep.ref_upper = n * (n + 2.0) / ((n - 1.0) * (n - 1.0));
    if (n >= 3) {
        rep.sobolev_ps = (n + 2.0) / (n - 2.0);
        rep.ref_lower = n / (n - 2.0);
    }
    if (n >= 4) {
        if (!(*rep.ref_lower < rep.p_bar_closed && rep.p_bar_closed < rep.ref_upper))
            throw std::runtime_error("make_threshold_report: reference ordering failed for n = " +
                                     std::to_string(n));
    } else {
        if (!(rep.p_bar_closed < rep.ref_upper))
            throw std::runtime_error("make_threshold_report: upper reference failed for n = " +
                                     std::to_string(n));
    }
    return rep;
}

convexity_coefficient convexity_coeff(const problem& prob, const param_pair& pair) {
    validate_problem(prob);
    if (!std::isfinite(pair.alpha) || !std::isfinite(pair.beta))
        throw std::invalid_argument("convexity_coeff: alpha and beta must be finite");
    const double a = pair.alpha, b = pair.beta;
    if (a <= 0.0 || a >= 1.0 || b >= 1.0 || b <= 0.0)
        throw std::domain_error("convexity_coeff: requires 0 < alpha < 1 and 0 < beta < 1");
    if (a <= b) throw std::domain_error("convexity_coeff: requires alpha > beta (theta > 0)");
    const int n = prob.n;
    const double p = prob.p;
    convexity_coefficient out;
    const double denom = 8.0 * a * (1.0 - a) * (1.0 - b);
    out.value = a + b * (p - 2.0) - n * (p - 1.0) * (a - b) * (a - b) / denom;
    out.theta = n * p * (p - 1.0) * (a - b) / denom;
    return out;
}

std::optional<convexity_region_result> convexity_region_nonempty(const problem& prob,
                                                                 const sweep_grid& grid) {
    validate_problem(prob);
    if (prob.n < 5)
        throw std::domain_error("convexity_region_nonempty: requires n >= 5");
    if (!(prob.p > 1.0) || prob.p >= p_bar_closed(prob.n))
        throw std::domain_error("convexity_region_nonempty: requires 1 < p < p_bar(n)");

    const std::vector<double> alphas =
        linspace(grid.margin, 1.0 - grid.margin, grid.alpha_points);
    const std::vector<double> betas = linspace(grid.margin, 1.0 - grid.margin, grid.beta_points);
    const std::size_t na = alphas.size(), nb = betas.size();

    struct cell_best {
        double value = -std::numeric_limits<double>::infinity();
        std::size_t flat = 0;
        bool found = false;
    };
    std::vector<cell_best> per_row(na);
    parallel_for(na, [&](std::size_t i) {
        const double a = alphas[i];
        cell_best best;
        for (std::size_t j = 0; j < nb; ++j) {
            const double b = betas[j];
            if (a <= b) continue;
            if (!pair_ok(prob.n, prob.p, a, b)) continue;
            const double denom = 8.0 * a * (1.0 - a) * (1.0 - b);
            const double value =
                a + b * (prob.p - 2.0) - prob.n * (prob.p - 1.0) * (a - b) * (a - b) / denom;
            if (value < 0.0) continue;
            if (!best.found || value > best.value) {
                best.found = true;
                best.value = value;
                best.flat = i * nb + j;
            }
        }
        per_row[i] = best;
    });

    cell_best overall;
    for (const auto& row : per_row) {
        if (!row.found) continue;
        if (!overall.found || row.value > overall.value ||
            (row.value == overall.value && row.flat < overall.flat))
            overall = row;
    }
    if (!overall.found) return std::nullopt;

    convexity_region_result res;
    res.pair = param_pair{alphas[overall.flat / nb], betas[overall.flat % nb]};
    res.coeff = convexity_coeff(prob, res.pair);
    return res;
}

std::pair<param_pair, double> special_case_p_le_1(const problem& prob) {
    validate_problem(prob);
    if (prob.p > 1.0)
        throw std::domain_error("special_case_p_le_1: requires p <= 1");
    return {param_pair{1.0, 1.0}, 2.0 / prob.n};
}

}  // namespace liyau
