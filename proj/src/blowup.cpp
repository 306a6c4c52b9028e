#include "liyau/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "liyau/numeric.hpp"

namespace liyau {

blowup_fit fit_blowup_time(const std::vector<std::pair<double, double>>& series, double p) {
    if (!(p > 1.0)) throw std::domain_error("fit_blowup_time: requires p > 1");
    if (series.empty()) throw std::invalid_argument("fit_blowup_time: empty series");

    const double u0_max = series.front().second;
    std::vector<double> t_w, y_w;
    for (const auto& [t, umax] : series) {
        if (umax >= 10.0 * u0_max) {
            t_w.push_back(t);
            y_w.push_back(std::pow(umax, 1.0 - p));
        }
    }
    if (t_w.size() < 50)
        throw std::runtime_error(
            "fit_blowup_time: fewer than 50 samples grew past 10x the initial max; "
            "the run did not approach blow-up");

    // Relative least squares: minimize sum ((a + b t - y) / y)^2. The basis
    // is centered at the weighted mean of t (which makes the two normal
    // equations orthogonal); the weights span many decades near blow-up and
    // the raw {1, t} normal equations would lose most of the precision of
    // the fitted root.
    double s00 = 0.0, st = 0.0;
    for (std::size_t i = 0; i < t_w.size(); ++i) {
        const double w2 = 1.0 / (y_w[i] * y_w[i]);
        s00 += w2;
        st += w2 * t_w[i];
    }
    const double t_bar = st / s00;
    double c = 0.0, d = 0.0, e = 0.0;
    for (std::size_t i = 0; i < t_w.size(); ++i) {
        const double w2 = 1.0 / (y_w[i] * y_w[i]);
        const double dt = t_w[i] - t_bar;
        c += w2 * dt * dt;
        d += w2 * dt * y_w[i];
        e += w2 * y_w[i];
    }
    if (!(c > 0.0))
        throw std::runtime_error("fit_blowup_time: degenerate fitting window");
    const double b = d / c;           // slope
    const double a_c = e / s00;       // value at t_bar
    if (!(b < 0.0))
        throw std::runtime_error(
            "fit_blowup_time: degenerate fitting window (u_max^{1-p} is not decreasing)");

    blowup_fit fit;
    fit.p = p;
    fit.T_fit = t_bar - a_c / b;
    fit.window = {t_w.front(), t_w.back()};
    fit.window_count = t_w.size();
    if (!(fit.T_fit > fit.window.second))
        throw std::runtime_error(
            "fit_blowup_time: fitted blow-up time does not lie beyond the data");

    double sq_sum = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < t_w.size(); ++i) {
        const double rel = (a_c + b * (t_w[i] - t_bar) - y_w[i]) / y_w[i];
        sq_sum += rel * rel;
        mx = std::max(mx, std::abs(rel));
    }
    fit.residual_rms = std::sqrt(sq_sum / static_cast<double>(t_w.size()));
    fit.residual_max = mx;
    fit.tol_fit = 3.0 * (mx + 1e-9);

    fit.rate_series.reserve(series.size());
    for (const auto& [t, umax] : series)
        fit.rate_series.emplace_back(t, std::pow(umax, p - 1.0) * (fit.T_fit - t));

    double tau_min = std::numeric_limits<double>::infinity();
    for (double t : t_w) tau_min = std::min(tau_min, fit.T_fit - t);
    double q_sum = 0.0;
    std::size_t q_count = 0;
    const std::size_t offset = series.size() - t_w.size();
    for (std::size_t i = 0; i < t_w.size(); ++i) {
        if (fit.T_fit - t_w[i] <= 10.0 * tau_min) {
            q_sum += fit.rate_series[offset + i].second;
            ++q_count;
        }
    }
    fit.q_limit = q_sum / static_cast<double>(q_count);
    return fit;
}

double check_lower_bound(const std::vector<std::pair<double, double>>& series,
                         const blowup_fit& fit) {
    if (!(fit.p > 1.0)) throw std::domain_error("check_lower_bound: requires p > 1");
    if (series.empty()) throw std::invalid_argument("check_lower_bound: empty series");
    const double expo = 1.0 / (fit.p - 1.0);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& [t, umax] : series)
        margin = std::min(margin,
                          umax * std::pow((fit.p - 1.0) * (fit.T_fit - t), expo) - 1.0);
    return margin;
}

std::vector<rescaled_slice> rescale(const solution& sol, const std::vector<double>& k_times,
                                    double s_lo, double s_hi, int s_points) {
    if (!(sol.p > 1.0)) throw std::domain_error("rescale: requires p > 1");
    if (sol.snapshots.empty()) throw std::invalid_argument("rescale: empty solution");
    if (k_times.empty()) throw std::invalid_argument("rescale: no base times supplied");
    if (s_points < 2) throw std::invalid_argument("rescale: need at least 2 rescaled times");
    if (!(s_lo < s_hi)) throw std::invalid_argument("rescale: need s_lo < s_hi");

    const auto& snaps = sol.snapshots;
    const double span_lo = snaps.front().first;
    const double span_hi = snaps.back().first;

    std::vector<rescaled_slice> out;
    out.reserve(k_times.size());
    for (std::size_t ki = 0; ki < k_times.size(); ++ki) {
        const double t_req = k_times[ki];
        if (t_req < span_lo || t_req > span_hi)
            throw std::invalid_argument("rescale: base time outside the stored snapshot span");
        // Snap to the nearest stored snapshot so the base field is exact.
        std::size_t best = 0;
        double best_gap = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < snaps.size(); ++j) {
            const double gap = std::abs(snaps[j].first - t_req);
            if (gap < best_gap) {
                best_gap = gap;
                best = j;
            }
        }
        const double t_k = snaps[best].first;
        const std::vector<double>& base = snaps[best].second;
        std::size_t xk = 0;
        for (std::size_t i = 1; i < base.size(); ++i)
            if (base[i] > base[xk]) xk = i;
        const double M = base[xk];
        const double scale_pow = std::pow(M, sol.p - 1.0);

        const double lo = std::max(s_lo, (span_lo - t_k) * scale_pow);
        const double hi = std::min(s_hi, (span_hi - t_k) * scale_pow);
        if (!(lo < hi))
            throw std::invalid_argument("rescale: rescaled span does not meet the s window");
        std::vector<double> sg = uniform_grid(lo, hi, s_points);
        if (lo <= 0.0 && 0.0 <= hi &&
            std::find(sg.begin(), sg.end(), 0.0) == sg.end()) {
            sg.push_back(0.0);
            std::sort(sg.begin(), sg.end());
        }

        rescaled_slice slice;
        slice.p = sol.p;
        slice.k_index = static_cast<int>(ki);
        slice.base_point = static_cast<int>(xk);
        slice.base_time = t_k;
        slice.scale = M;
        slice.s_grid = sg;
        slice.values.reserve(sg.size());
        for (double s : sg) {
            const double tau = std::clamp(t_k + s / scale_pow, span_lo, span_hi);
            std::vector<double> field = interpolate_snapshot(sol, tau);
            for (double& v : field) v /= M;
            slice.values.push_back(std::move(field));
        }
        out.push_back(std::move(slice));
    }
    return out;
}

std::vector<double> hamilton_times(const solution& sol, double T, int count) {
    if (!(sol.p > 1.0)) throw std::domain_error("hamilton_times: requires p > 1");
    if (count < 1) throw std::invalid_argument("hamilton_times: need count >= 1");
    if (sol.snapshots.empty()) throw std::invalid_argument("hamilton_times: empty solution");

    const double pm1 = sol.p - 1.0;
    std::vector<std::pair<double, double>> stats;  // (t, u_max) per snapshot
    stats.reserve(sol.snapshots.size());
    for (const auto& [t, u] : sol.snapshots)
        stats.emplace_back(t, *std::max_element(u.begin(), u.end()));

    std::vector<double> picks;
    double k = 1.0;
    for (int round = 0; round < 64; ++round, k *= 2.0) {
        const double horizon = T - 1.0 / k;
        if (!(horizon > stats.front().first)) continue;
        double best_val = -std::numeric_limits<double>::infinity();
        double best_t = stats.front().first;
        for (const auto& [t, umax] : stats) {
            if (t > horizon) break;
            const double val = std::pow(umax, pm1) * (horizon - t);
            if (val > best_val) {
                best_val = val;
                best_t = t;
            }
        }
        if (best_val == -std::numeric_limits<double>::infinity()) continue;
        if (picks.empty() || best_t != picks.back()) picks.push_back(best_t);
        if (horizon >= stats.back().first) break;
    }
    if (picks.empty())
        throw std::invalid_argument("hamilton_times: no usable selection horizon before T");
    if (static_cast<int>(picks.size()) > count)
        picks.erase(picks.begin(), picks.end() - count);
    return picks;
}

double slice_raw_max(const rescaled_slice& slice, double s_max) {
    double out = -std::numeric_limits<double>::infinity();
    for (std::size_t si = 0; si < slice.s_grid.size(); ++si) {
        if (slice.s_grid[si] > s_max) continue;
        for (double v : slice.values[si]) out = std::max(out, v);
    }
    return out;
}

double slice_profile_error(const rescaled_slice& slice) {
    const double expo = -1.0 / (slice.p - 1.0);
    double out = 0.0;
    for (std::size_t si = 0; si < slice.s_grid.size(); ++si) {
        const double prof = std::pow(1.0 - (slice.p - 1.0) * slice.s_grid[si], expo);
        for (double v : slice.values[si]) out = std::max(out, std::abs(v - prof));
    }
    return out;
}

double slice_normalized_max(const rescaled_slice& slice) {
    const double expo = -1.0 / (slice.p - 1.0);
    double out = -std::numeric_limits<double>::infinity();
    for (std::size_t si = 0; si < slice.s_grid.size(); ++si) {
        const double prof = std::pow(1.0 - (slice.p - 1.0) * slice.s_grid[si], expo);
        for (double v : slice.values[si]) out = std::max(out, v / prof);
    }
    return out;
}

double limit_profile_error(const std::vector<rescaled_slice>& slices) {
    if (slices.empty()) throw std::invalid_argument("limit_profile_error: no slices");
    return slice_profile_error(slices.back());
}

}  // namespace liyau
