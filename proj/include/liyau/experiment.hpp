#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liyau/admissibility.hpp"
#include "liyau/blowup.hpp"
#include "liyau/checks.hpp"
#include "liyau/geometry.hpp"
#include "liyau/solver.hpp"

namespace liyau {

// Report/metadata schema version, stamped into every JSON artifact.
inline constexpr const char* version_string = "1.0.0";

// Initial data on the chosen geometry.
struct initial_spec {
    enum class family { constant, sinusoidal, profile };
    family kind = family::constant;
    double value = 1.0;      // constant: u0 = value
    double base = 1.0;       // sinusoidal: u0 = base + amplitude*sin-like bump
    double amplitude = 0.0;  //   torus: base + A*sin(2*pi*mode*x/L)
    int mode = 1;            //   radial kinds: base + A*cos(mode*x*pi/extent)
    std::string profile;     // profile: named radial profile ("talenti")
};

struct check_toggles {
    bool liyau = false;
    bool harnack = false;
    bool mono = false;
    bool convex = false;  // implies the monotonicity pass
    bool decay = false;
    bool blowup = false;
    bool rescale = false;
};

// Full experiment description; the JSON schema mirrors the fields 1:1.
struct run_config {
    // geometry
    geometry_kind kind = geometry_kind::flat_torus_1d;
    int dim = 1;
    int num_points = 128;
    double extent = 6.283185307179586;
    // solver
    solver_config solver;
    // initial data
    initial_spec initial;
    // checks
    std::vector<param_pair> pairs;  // required by liyau/harnack/mono/decay
    check_toggles checks;
    std::string output_prefix = "run";
    std::uint64_t seed = 0;  // fixes every randomized choice (path draws)

    // tolerances and knobs, all with documented defaults
    double margin_tol = 0.05;           // pass threshold for margin checks
    double harnack_tol = 0.05;          // multiplicative slack on the rhs
    int harnack_draws = 20;             // seeded random path comparisons
    int path_segments = 64;             // trapezoid resolution along paths
    double liyau_t_hi_fraction = 1.0;   // check margins on (0, frac*t_stop]
    double mono_T0 = 0.0;               // reference time of the 1/(t-T0) terms
    std::optional<double> decay_T_bar;  // default: fitted blow-up time
    double rescale_s_lo = -5.0;
    double rescale_s_hi = 0.5;
    int rescale_points = 56;
    int rescale_slices = 3;             // base times: last k snapshot times
    std::string pick_rule = "simple";   // or "hamilton" (rate-maximizing picks)
    double ccc_tol = 0.05;              // rescaled-boundedness slack
};

// Parses and validates a config document. Throws std::invalid_argument
// naming the offending field on structural errors, out-of-range values, or
// unmet module preconditions.
run_config parse_run_config(const nlohmann::json& doc);
run_config parse_run_config_text(const std::string& text);
run_config load_run_config(const std::string& path);

// Canonical JSON echo of a parsed config (deterministic key order).
nlohmann::ordered_json config_to_json(const run_config& cfg);

geometry make_geometry(const run_config& cfg);
std::vector<double> build_initial(const initial_spec& spec, const geometry& geom);

// Writes PREFIX_umax.csv (t,umax), PREFIX_snap_<k>.csv (coord,u) per stored
// snapshot, and PREFIX_meta.json (config echo, blew_up, t_stop,
// snapshot_times, version). Deterministic byte-for-byte for a fixed config.
void write_run_artifacts(const run_config& cfg, const solution& sol);

// Reconstructs a solution (geometry, snapshots, u_max series, p) from the
// artifacts written by write_run_artifacts. Round-trips exactly: all numbers
// are serialized with round-trip precision. Throws std::runtime_error when
// files are missing or inconsistent.
solution load_run(const std::string& prefix);
run_config load_run_meta(const std::string& prefix);

struct experiment_report {
    nlohmann::ordered_json document;
    bool pass = false;
};

// Runs simulate -> enabled checks -> blow-up analysis, writes every CSV/JSON
// artifact under the config's output prefix (including PREFIX_report.json),
// and reports overall pass/fail against the config's tolerances.
experiment_report run_experiment(const run_config& cfg);

// Threshold table for n = 1..12 (closed form vs sweep, reference exponents,
// ordering flags) written to PREFIX_thresholds.csv, plus the convexity-region
// search over n = 5..10 x 20 p-values written to PREFIX_convexity.csv.
// Findings are data: ordering or region failures appear in the CSV and turn
// the report's pass flag false, but never throw.
experiment_report reproduce_appendix(const std::string& prefix, const sweep_grid& grid = {});

}  // namespace liyau
