#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "liyau/solver.hpp"

namespace liyau {

// Least-squares reconstruction of the blow-up time from a u_max time series,
// together with the rate diagnostic q(t) = u_max(t)^{p-1} (T_fit - t).
struct blowup_fit {
    double p = 0.0;
    double T_fit = 0.0;
    // Time window actually used for the fit: samples with u_max >= 10 * initial max.
    std::pair<double, double> window{0.0, 0.0};
    std::size_t window_count = 0;
    // (t, q) over the full input series.
    std::vector<std::pair<double, double>> rate_series;
    // Mean of q over the final fitting decade (samples with T_fit - t within
    // 10x of the smallest remaining time).
    double q_limit = 0.0;
    // Relative residuals of the fitted line over the window.
    double residual_rms = 0.0;
    double residual_max = 0.0;
    // Acceptance tolerance derived from the fit quality: 3 * (residual_max + 1e-9).
    double tol_fit = 0.0;
};

// One rescaled near-singularity snapshot family: u_k(x, s) = u(x, tau(s)) / M
// with tau(s) = t_k + s * M^{1-p} and M = u(x_k, t_k) the spatial max at the
// base time.  values[si][xi] holds u_k on the full spatial grid for each
// rescaled time s_grid[si]; the grid always contains s = 0 exactly, where
// u_k(x_k, 0) == 1 by construction.
struct rescaled_slice {
    double p = 0.0;
    int k_index = 0;
    int base_point = 0;
    double base_time = 0.0;
    double scale = 0.0;
    std::vector<double> s_grid;
    std::vector<std::vector<double>> values;
};

// Fits a line a + b*t through (t, u_max^{1-p}) by relative least squares
// (residuals weighted by 1/u_max^{1-p}) over the window u_max >= 10 * initial
// max, and returns T_fit = -a/b plus the rate diagnostics.
//
// Errors: std::domain_error if p <= 1; std::invalid_argument on an empty
// series; std::runtime_error if the window holds fewer than 50 samples (the
// run never approached blow-up) or the window is degenerate (non-decreasing
// fitted line, or T_fit not beyond the window).
blowup_fit fit_blowup_time(const std::vector<std::pair<double, double>>& series, double p);

// Minimum over the full series of the relative lower-bound margin
//   u_max(t) * [(p-1)(T_fit - t)]^{1/(p-1)} - 1,
// i.e. how far u_max sits above the integrated-ODE lower bound, measured
// relative to the bound itself.  Expected >= -fit.tol_fit.
// Errors: std::domain_error if fit.p <= 1; std::invalid_argument on empty series.
double check_lower_bound(const std::vector<std::pair<double, double>>& series,
                         const blowup_fit& fit);

// Builds one rescaled slice per requested base time.  Each time is snapped to
// the nearest stored snapshot so that s = 0 reproduces the stored field and
// the base value is exactly 1.  The s grid is uniform with s_points points on
// [s_lo, s_hi] intersected with the rescaled solution span, with s = 0
// inserted when the interval straddles it.
//
// Errors: std::domain_error if sol.p <= 1; std::invalid_argument if a time
// lies outside the stored snapshot span or s_points < 2 or k_times is empty.
std::vector<rescaled_slice> rescale(const solution& sol, const std::vector<double>& k_times,
                                    double s_lo = -5.0, double s_hi = 0.5,
                                    int s_points = 56);

// Base-time selection by the rate-maximization rule: for a sequence of
// doubling integers k, t_k maximizes u_max(t)^{p-1} (T - 1/k - t) over stored
// snapshot times t <= T - 1/k.  Returns the last `count` distinct picks in
// increasing order.  Errors: std::invalid_argument if count < 1 or no k
// admits a nonempty window; std::domain_error if sol.p <= 1.
std::vector<double> hamilton_times(const solution& sol, double T, int count);

// Max of u_k over grid points with s <= s_max (raw boundedness diagnostic).
double slice_raw_max(const rescaled_slice& slice, double s_max);

// Max over the slice grid of |u_k(x, s) - u_inf(s)| against the closed-form
// limit profile u_inf(s) = [1 - (p-1)s]^{-1/(p-1)}.
double slice_profile_error(const rescaled_slice& slice);

// Max over the slice grid of u_k(x, s) / u_inf(s) (profile-normalized bound).
double slice_normalized_max(const rescaled_slice& slice);

// Profile error of the last slice in the family (the closest to blow-up).
// Errors: std::invalid_argument on an empty family.
double limit_profile_error(const std::vector<rescaled_slice>& slices);

}  // namespace liyau
