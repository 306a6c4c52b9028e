#include "liyau/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace liyau {

namespace {

double max_of(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    return m;
}

// u^p with fast paths for the exponents the experiments use most.
struct power_fn {
    explicit power_fn(double p) : p_(p) {}
    double operator()(double u) const {
        if (p_ == 2.0) return u * u;
        if (p_ == 3.0) return u * u * u;
        if (p_ == 1.0) return u;
        if (p_ == 1.5) return u * std::sqrt(u);
        if (p_ == 0.5) return std::sqrt(u);
        return std::pow(u, p_);
    }
    double p_;
};

}  // namespace

solution evolve(const geometry& geom, const std::vector<double>& u0, const solver_config& cfg) {
    if (static_cast<int>(u0.size()) != geom.num_points())
        throw std::invalid_argument("evolve: initial data length does not match geometry");
    for (double v : u0)
        if (!std::isfinite(v) || v <= 0.0)
            throw std::invalid_argument("evolve: initial data must be strictly positive and finite");
    if (!(cfg.p > 0.0) || !std::isfinite(cfg.p))
        throw std::invalid_argument("evolve: p must be positive and finite");
    if (!(cfg.dt_max > 0.0)) throw std::invalid_argument("evolve: dt_max must be positive");
    if (!(cfg.cfl > 0.0) || cfg.cfl > 1.0)
        throw std::invalid_argument("evolve: cfl must lie in (0, 1]");
    if (!(cfg.snapshot_interval > 0.0))
        throw std::invalid_argument("evolve: snapshot_interval must be positive");
    const double u0_max = max_of(u0);
    if (!(cfg.blowup_cutoff > u0_max))
        throw std::invalid_argument("evolve: blowup_cutoff must exceed the initial maximum");
    if (cfg.t_end && !(*cfg.t_end >= 0.0))
        throw std::invalid_argument("evolve: t_end must be nonnegative");

    const power_fn up(cfg.p);
    const std::size_t N = u0.size();
    auto rhs = [&](const std::vector<double>& v) {
        std::vector<double> out = geom.laplacian(v);
        for (std::size_t i = 0; i < N; ++i) out[i] += up(v[i]);
        return out;
    };

    solution sol{geom, {}, false, 0.0, {}, cfg.p};
    std::vector<double> u = u0;
    double t = 0.0;
    sol.snapshots.emplace_back(0.0, u);
    sol.u_max_series.emplace_back(0.0, u0_max);

    double next_snap = cfg.snapshot_interval;
    // Extra snapshots once the field has grown by 10x, repeated every further
    // factor 2^(1/4): keeps log-linear time interpolation accurate while the
    // maximum runs away.
    double next_refine = 10.0 * u0_max;
    const double refine_factor = std::pow(2.0, 0.25);
    const double dt_floor_guard = 1e-15;

    std::vector<double> k1, k2, k3, k4, stage, candidate;
    while (true) {
        const double umax = max_of(u);
        if (umax >= cfg.blowup_cutoff) {
            sol.blew_up = true;
            break;
        }
        if (cfg.t_end && t >= *cfg.t_end * (1.0 - 1e-15)) break;

        double dt = std::min(cfg.dt_max, cfg.cfl * geom.spacing() * geom.spacing() / 2.0);
        if (cfg.p > 1.0)
            dt = std::min(dt, 0.05 * std::pow(umax, 1.0 - cfg.p) / (cfg.p - 1.0));
        if (cfg.t_end) dt = std::min(dt, *cfg.t_end - t);
        bool snap_due = false;
        if (t + dt >= next_snap - dt_floor_guard) {
            dt = next_snap - t;
            snap_due = true;
        }
        if (!(dt > 0.0)) throw std::runtime_error("evolve: step size underflow");

        bool accepted = false;
        for (int attempt = 0; attempt <= 40; ++attempt) {
            k1 = rhs(u);
            stage.resize(N);
            for (std::size_t i = 0; i < N; ++i) stage[i] = u[i] + 0.5 * dt * k1[i];
            k2 = rhs(stage);
            for (std::size_t i = 0; i < N; ++i) stage[i] = u[i] + 0.5 * dt * k2[i];
            k3 = rhs(stage);
            for (std::size_t i = 0; i < N; ++i) stage[i] = u[i] + dt * k3[i];
            k4 = rhs(stage);
            candidate.resize(N);
            bool ok = true;
            for (std::size_t i = 0; i < N; ++i) {
                const double v =
                    u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                candidate[i] = v;
                if (!std::isfinite(v) || v <= 0.0) ok = false;
            }
            if (ok) {
                accepted = true;
                break;
            }
            dt *= 0.5;
            snap_due = false;
        }
        if (!accepted)
            throw std::runtime_error(
                "evolve: step kept producing nonpositive or nonfinite values after 40 halvings");

        u.swap(candidate);
        t += dt;
        const double new_max = max_of(u);
        sol.u_max_series.emplace_back(t, new_max);

        bool stored = false;
        if (snap_due) {
            sol.snapshots.emplace_back(t, u);
            stored = true;
            while (next_snap <= t) next_snap += cfg.snapshot_interval;
        }
        if (new_max >= next_refine) {
            if (!stored) sol.snapshots.emplace_back(t, u);
            next_refine = new_max * refine_factor;
        }
    }

    sol.t_stop = t;
    if (sol.snapshots.back().first < t) sol.snapshots.emplace_back(t, u);
    return sol;
}

const std::vector<std::pair<double, double>>& max_series(const solution& sol) {
    if (sol.u_max_series.empty())
        throw std::invalid_argument("max_series: empty solution");
    return sol.u_max_series;
}

std::vector<double> interpolate_snapshot(const solution& sol, double t) {
    const auto& snaps = sol.snapshots;
    if (snaps.empty()) throw std::invalid_argument("interpolate_snapshot: empty solution");
    const double t_lo = snaps.front().first;
    const double t_hi = snaps.back().first;
    if (t < t_lo || t > t_hi)
        throw std::invalid_argument("interpolate_snapshot: time outside the stored span");

    const auto it = std::lower_bound(
        snaps.begin(), snaps.end(), t,
        [](const auto& snap, double value) { return snap.first < value; });
    if (it != snaps.end() && it->first == t) return it->second;
    const auto& lo = *(it - 1);
    const auto& hi = *it;
    const double w = (t - lo.first) / (hi.first - lo.first);
    std::vector<double> out(lo.second.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = std::exp((1.0 - w) * std::log(lo.second[i]) + w * std::log(hi.second[i]));
    return out;
}

double interpolate_space_time(const solution& sol, double position, double t) {
    const geometry& g = sol.geom;
    const std::vector<double> field = interpolate_snapshot(sol, t);
    const int N = g.num_points();
    if (g.kind() == geometry_kind::flat_torus_1d) {
        double x = std::fmod(position, g.extent());
        if (x < 0.0) x += g.extent();
        int i = static_cast<int>(x / g.spacing()) % N;
        double w = (x - i * g.spacing()) / g.spacing();
        if (w < 0.0) w += 1.0;
        return (1.0 - w) * field[static_cast<std::size_t>(i)] +
               w * field[static_cast<std::size_t>((i + 1) % N)];
    }
    const double x = std::clamp(position, g.coord(0), g.coord(N - 1));
    int i = std::min(static_cast<int>((x - g.coord(0)) / g.spacing()), N - 2);
    const double w = (x - g.coord(i)) / g.spacing();
    return (1.0 - w) * field[static_cast<std::size_t>(i)] +
           w * field[static_cast<std::size_t>(i + 1)];
}

}  // namespace liyau
