#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "liyau/geometry.hpp"

namespace liyau {

struct solver_config {
    double p = 2.0;
    double dt_max = 1e-3;
    double cfl = 0.5;                  // fraction of the diffusive limit spacing^2/2
    double blowup_cutoff = 1e8;        // stop once max u reaches this
    double snapshot_interval = 0.05;
    std::optional<double> t_end;       // absent: run until cutoff
};

// Time-stamped trajectory of a positive field. Snapshots are stored at t = 0,
// at every snapshot_interval, at extra times clustered geometrically near
// blow-up (each time max u grows by another factor 2^(1/4) once it exceeds
// 10x its initial value, so that log-linear time interpolation stays
// accurate), and at the final accepted state.
struct solution {
    geometry geom;
    std::vector<std::pair<double, std::vector<double>>> snapshots;
    bool blew_up = false;
    double t_stop = 0.0;
    std::vector<std::pair<double, double>> u_max_series;  // one entry per accepted step
    double p = 2.0;
};

// Integrates du/dt = laplacian(u) + u^p with classical 4-stage Runge-Kutta.
// Step size: min(dt_max, cfl*spacing^2/2, 0.05*u_max^(1-p)/(p-1) for p > 1),
// clipped so snapshot times and t_end are hit exactly. Steps producing a
// nonpositive or nonfinite value are rejected and retried with halved dt;
// after 40 halvings a std::runtime_error is thrown (positivity loss or
// instability). Throws std::invalid_argument on nonpositive/nonfinite
// initial data or a cutoff not above the initial maximum.
solution evolve(const geometry& geom, const std::vector<double>& u0, const solver_config& cfg);

// The recorded per-step maxima (finer than snapshots). Throws
// std::invalid_argument on an empty solution.
const std::vector<std::pair<double, double>>& max_series(const solution& sol);

// u(. , t) reconstructed from the two bracketing snapshots, interpolating
// log u linearly in time (exact at snapshot times, positivity preserving).
// Throws std::invalid_argument when t lies outside the snapshot span.
std::vector<double> interpolate_snapshot(const solution& sol, double t);

// Value of u at fractional arclength along the geometry at time t: linear
// between the two surrounding nodes, wrap-aware on the torus; time handled
// as in interpolate_snapshot. `position` is a coordinate in the same units
// as geometry::coord.
double interpolate_space_time(const solution& sol, double position, double t);

}  // namespace liyau
