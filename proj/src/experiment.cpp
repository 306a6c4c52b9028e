#include "liyau/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

#include "liyau/io.hpp"
#include "liyau/numeric.hpp"
#include "liyau/statics.hpp"

namespace liyau {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail_field(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config: field '" + field + "' " + why);
}

const json& require_member(const json& obj, const std::string& path, const char* name) {
    if (!obj.is_object()) fail_field(path, "must be an object");
    const auto it = obj.find(name);
    if (it == obj.end()) fail_field(path + "." + name, "is missing");
    return *it;
}

double get_double(const json& obj, const std::string& path, const char* name) {
    const json& v = require_member(obj, path, name);
    if (!v.is_number()) fail_field(path + "." + name, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail_field(path + "." + name, "must be finite");
    return d;
}

double get_double_or(const json& obj, const std::string& path, const char* name,
                     double fallback) {
    if (!obj.is_object() || !obj.contains(name)) return fallback;
    return get_double(obj, path, name);
}

int get_int(const json& obj, const std::string& path, const char* name) {
    const json& v = require_member(obj, path, name);
    if (!v.is_number_integer()) fail_field(path + "." + name, "must be an integer");
    return v.get<int>();
}

int get_int_or(const json& obj, const std::string& path, const char* name, int fallback) {
    if (!obj.is_object() || !obj.contains(name)) return fallback;
    return get_int(obj, path, name);
}

std::string get_string(const json& obj, const std::string& path, const char* name) {
    const json& v = require_member(obj, path, name);
    if (!v.is_string()) fail_field(path + "." + name, "must be a string");
    return v.get<std::string>();
}

bool get_bool(const json& v, const std::string& full_path) {
    if (!v.is_boolean()) fail_field(full_path, "must be a boolean");
    return v.get<bool>();
}

}  // namespace

run_config parse_run_config(const json& doc) {
    if (!doc.is_object()) fail_field("(root)", "must be a JSON object");
    run_config cfg;

    const json& geom = require_member(doc, "(root)", "geometry");
    const std::string kind_name = get_string(geom, "geometry", "kind");
    try {
        cfg.kind = geometry_kind_from_string(kind_name);
    } catch (const std::exception&) {
        fail_field("geometry.kind",
                   "must be one of FlatTorus1D, RadialEuclidean, RadialSphere");
    }
    cfg.dim = get_int(geom, "geometry", "dim");
    if (cfg.dim < 1) fail_field("geometry.dim", "must be >= 1");
    cfg.num_points = get_int(geom, "geometry", "num_points");
    if (cfg.num_points < 16) fail_field("geometry.num_points", "must be >= 16");
    if (cfg.kind == geometry_kind::radial_sphere) {
        cfg.extent = 3.141592653589793;
    } else {
        cfg.extent = get_double(geom, "geometry", "extent");
        if (!(cfg.extent > 0.0)) fail_field("geometry.extent", "must be > 0");
    }
    if (cfg.kind == geometry_kind::flat_torus_1d && cfg.dim != 1)
        fail_field("geometry.dim", "must be 1 on the torus");

    const json& sv = require_member(doc, "(root)", "solver");
    cfg.solver.p = get_double(sv, "solver", "p");
    if (!(cfg.solver.p > 0.0)) fail_field("solver.p", "must be > 0");
    cfg.solver.dt_max = get_double(sv, "solver", "dt_max");
    if (!(cfg.solver.dt_max > 0.0)) fail_field("solver.dt_max", "must be > 0");
    cfg.solver.snapshot_interval = get_double(sv, "solver", "snapshot_interval");
    if (!(cfg.solver.snapshot_interval > 0.0))
        fail_field("solver.snapshot_interval", "must be > 0");
    cfg.solver.cfl = get_double_or(sv, "solver", "cfl", 0.5);
    if (!(cfg.solver.cfl > 0.0 && cfg.solver.cfl <= 1.0))
        fail_field("solver.cfl", "must lie in (0, 1]");
    cfg.solver.blowup_cutoff = get_double_or(sv, "solver", "blowup_cutoff", 1e8);
    if (!(cfg.solver.blowup_cutoff > 0.0)) fail_field("solver.blowup_cutoff", "must be > 0");
    if (sv.contains("t_end")) {
        const double te = get_double(sv, "solver", "t_end");
        if (!(te >= 0.0)) fail_field("solver.t_end", "must be >= 0");
        cfg.solver.t_end = te;
    }

    const json& init = require_member(doc, "(root)", "initial");
    const std::string itype = get_string(init, "initial", "type");
    if (itype == "constant") {
        cfg.initial.kind = initial_spec::family::constant;
        cfg.initial.value = get_double(init, "initial", "value");
        if (!(cfg.initial.value > 0.0)) fail_field("initial.value", "must be > 0");
    } else if (itype == "sinusoidal") {
        cfg.initial.kind = initial_spec::family::sinusoidal;
        cfg.initial.base = get_double(init, "initial", "base");
        cfg.initial.amplitude = get_double(init, "initial", "amplitude");
        cfg.initial.mode = get_int_or(init, "initial", "mode", 1);
        if (cfg.initial.mode < 1) fail_field("initial.mode", "must be >= 1");
        if (!(cfg.initial.base - std::abs(cfg.initial.amplitude) > 0.0))
            fail_field("initial.amplitude", "must keep the data positive (|A| < base)");
    } else if (itype == "profile") {
        cfg.initial.kind = initial_spec::family::profile;
        cfg.initial.profile = get_string(init, "initial", "name");
        if (cfg.initial.profile != "talenti")
            fail_field("initial.name", "names an unknown profile (known: talenti)");
    } else {
        fail_field("initial.type", "must be one of constant, sinusoidal, profile");
    }

    if (doc.contains("pairs")) {
        const json& pairs = doc["pairs"];
        if (!pairs.is_array()) fail_field("pairs", "must be an array");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const std::string path = "pairs[" + std::to_string(i) + "]";
            param_pair pp;
            pp.alpha = get_double(pairs[i], path, "alpha");
            pp.beta = get_double(pairs[i], path, "beta");
            cfg.pairs.push_back(pp);
        }
    }

    if (doc.contains("checks")) {
        const json& checks = doc["checks"];
        if (!checks.is_object()) fail_field("checks", "must be an object");
        for (const auto& [key, value] : checks.items()) {
            const std::string path = "checks." + key;
            if (key == "liyau") cfg.checks.liyau = get_bool(value, path);
            else if (key == "harnack") cfg.checks.harnack = get_bool(value, path);
            else if (key == "mono") cfg.checks.mono = get_bool(value, path);
            else if (key == "convex") cfg.checks.convex = get_bool(value, path);
            else if (key == "decay") cfg.checks.decay = get_bool(value, path);
            else if (key == "blowup") cfg.checks.blowup = get_bool(value, path);
            else if (key == "rescale") cfg.checks.rescale = get_bool(value, path);
            else fail_field(path, "is not a known check toggle");
        }
    }

    cfg.output_prefix = get_string(doc, "(root)", "output_prefix");
    if (cfg.output_prefix.empty()) fail_field("output_prefix", "must be nonempty");
    if (doc.contains("seed")) {
        const json& sd = doc["seed"];
        if (!sd.is_number_integer() || sd.get<long long>() < 0)
            fail_field("seed", "must be a nonnegative integer");
        cfg.seed = sd.get<std::uint64_t>();
    }

    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        cfg.margin_tol = get_double_or(tol, "tolerances", "margin", cfg.margin_tol);
        cfg.harnack_tol = get_double_or(tol, "tolerances", "harnack", cfg.harnack_tol);
        cfg.ccc_tol = get_double_or(tol, "tolerances", "ccc", cfg.ccc_tol);
        if (cfg.margin_tol < 0.0) fail_field("tolerances.margin", "must be >= 0");
        if (cfg.harnack_tol < 0.0) fail_field("tolerances.harnack", "must be >= 0");
        if (cfg.ccc_tol < 0.0) fail_field("tolerances.ccc", "must be >= 0");
    }

    cfg.harnack_draws = get_int_or(doc, "(root)", "harnack_draws", cfg.harnack_draws);
    if (cfg.harnack_draws < 1) fail_field("harnack_draws", "must be >= 1");
    cfg.path_segments = get_int_or(doc, "(root)", "path_segments", cfg.path_segments);
    if (cfg.path_segments < 8) fail_field("path_segments", "must be >= 8");
    cfg.liyau_t_hi_fraction =
        get_double_or(doc, "(root)", "liyau_t_hi_fraction", cfg.liyau_t_hi_fraction);
    if (!(cfg.liyau_t_hi_fraction > 0.0 && cfg.liyau_t_hi_fraction <= 1.0))
        fail_field("liyau_t_hi_fraction", "must lie in (0, 1]");
    cfg.mono_T0 = get_double_or(doc, "(root)", "mono_T0", cfg.mono_T0);
    if (doc.contains("decay_T_bar"))
        cfg.decay_T_bar = get_double(doc, "(root)", "decay_T_bar");

    if (doc.contains("rescale")) {
        const json& rs = doc["rescale"];
        cfg.rescale_s_lo = get_double_or(rs, "rescale", "s_lo", cfg.rescale_s_lo);
        cfg.rescale_s_hi = get_double_or(rs, "rescale", "s_hi", cfg.rescale_s_hi);
        if (!(cfg.rescale_s_lo < cfg.rescale_s_hi))
            fail_field("rescale.s_lo", "must be below rescale.s_hi");
        cfg.rescale_points = get_int_or(rs, "rescale", "points", cfg.rescale_points);
        if (cfg.rescale_points < 2) fail_field("rescale.points", "must be >= 2");
        cfg.rescale_slices = get_int_or(rs, "rescale", "slices", cfg.rescale_slices);
        if (cfg.rescale_slices < 1) fail_field("rescale.slices", "must be >= 1");
        if (rs.contains("pick_rule")) cfg.pick_rule = get_string(rs, "rescale", "pick_rule");
        if (cfg.pick_rule != "simple" && cfg.pick_rule != "hamilton")
            fail_field("rescale.pick_rule", "must be simple or hamilton");
    }

    const bool needs_pairs = cfg.checks.liyau || cfg.checks.harnack || cfg.checks.mono ||
                             cfg.checks.convex || cfg.checks.decay;
    if (needs_pairs && cfg.pairs.empty())
        fail_field("pairs", "must be nonempty when a pair-based check is enabled");
    return cfg;
}

run_config parse_run_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

run_config load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("config: cannot open file " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_run_config_text(text);
}

ordered_json config_to_json(const run_config& cfg) {
    ordered_json doc;
    doc["geometry"] = {{"kind", to_string(cfg.kind)},
                       {"dim", cfg.dim},
                       {"num_points", cfg.num_points},
                       {"extent", cfg.extent}};
    ordered_json sv = {{"p", cfg.solver.p},
                       {"dt_max", cfg.solver.dt_max},
                       {"snapshot_interval", cfg.solver.snapshot_interval},
                       {"cfl", cfg.solver.cfl},
                       {"blowup_cutoff", cfg.solver.blowup_cutoff}};
    if (cfg.solver.t_end) sv["t_end"] = *cfg.solver.t_end;
    doc["solver"] = sv;
    switch (cfg.initial.kind) {
        case initial_spec::family::constant:
            doc["initial"] = {{"type", "constant"}, {"value", cfg.initial.value}};
            break;
        case initial_spec::family::sinusoidal:
            doc["initial"] = {{"type", "sinusoidal"},
                              {"base", cfg.initial.base},
                              {"amplitude", cfg.initial.amplitude},
                              {"mode", cfg.initial.mode}};
            break;
        case initial_spec::family::profile:
            doc["initial"] = {{"type", "profile"}, {"name", cfg.initial.profile}};
            break;
    }
    doc["pairs"] = ordered_json::array();
    for (const param_pair& pp : cfg.pairs)
        doc["pairs"].push_back({{"alpha", pp.alpha}, {"beta", pp.beta}});
    doc["checks"] = {{"liyau", cfg.checks.liyau},     {"harnack", cfg.checks.harnack},
                     {"mono", cfg.checks.mono},       {"convex", cfg.checks.convex},
                     {"decay", cfg.checks.decay},     {"blowup", cfg.checks.blowup},
                     {"rescale", cfg.checks.rescale}};
    doc["tolerances"] = {{"margin", cfg.margin_tol},
                         {"harnack", cfg.harnack_tol},
                         {"ccc", cfg.ccc_tol}};
    doc["harnack_draws"] = cfg.harnack_draws;
    doc["path_segments"] = cfg.path_segments;
    doc["liyau_t_hi_fraction"] = cfg.liyau_t_hi_fraction;
    doc["mono_T0"] = cfg.mono_T0;
    if (cfg.decay_T_bar) doc["decay_T_bar"] = *cfg.decay_T_bar;
    doc["rescale"] = {{"s_lo", cfg.rescale_s_lo},
                      {"s_hi", cfg.rescale_s_hi},
                      {"points", cfg.rescale_points},
                      {"slices", cfg.rescale_slices},
                      {"pick_rule", cfg.pick_rule}};
    doc["output_prefix"] = cfg.output_prefix;
    doc["seed"] = cfg.seed;
    return doc;
}

geometry make_geometry(const run_config& cfg) {
    return geometry(cfg.kind, cfg.dim, cfg.num_points, cfg.extent);
}

std::vector<double> build_initial(const initial_spec& spec, const geometry& geom) {
    const std::size_t N = static_cast<std::size_t>(geom.num_points());
    std::vector<double> u0(N);
    switch (spec.kind) {
        case initial_spec::family::constant:
            std::fill(u0.begin(), u0.end(), spec.value);
            break;
        case initial_spec::family::sinusoidal:
            for (std::size_t i = 0; i < N; ++i) {
                const double x = geom.coord(static_cast<int>(i));
                double bump;
                if (geom.kind() == geometry_kind::flat_torus_1d)
                    bump = std::sin(2.0 * 3.141592653589793 * spec.mode * x / geom.extent());
                else
                    bump = std::cos(spec.mode * x * 3.141592653589793 / geom.extent());
                u0[i] = spec.base + spec.amplitude * bump;
            }
            break;
        case initial_spec::family::profile: {
            if (spec.profile != "talenti")
                throw std::invalid_argument("config: field 'initial.name' names an unknown "
                                            "profile (known: talenti)");
            u0 = seed_from_profile(talenti_profile(), geom);
            break;
        }
    }
    for (double v : u0)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(
                "config: field 'initial' produces nonpositive or nonfinite data");
    return u0;
}

namespace {

void write_json_file(const std::string& path, const ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing " + path);
}

ordered_json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    ordered_json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error(path + ": not valid JSON: " + e.what());
    }
    return doc;
}

// Reads a two-column CSV written by csv_writer, validating the header.
std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path,
                                                           const std::string& header) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != header)
        throw std::runtime_error(path + ": expected header '" + header + "'");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        char* end1 = nullptr;
        char* end2 = nullptr;
        const double a = std::strtod(line.c_str(), &end1);
        const double b = std::strtod(line.c_str() + comma + 1, &end2);
        if (end1 != line.c_str() + comma || end2 == line.c_str() + comma + 1)
            throw std::runtime_error(path + ": malformed row '" + line + "'");
        rows.emplace_back(a, b);
    }
    return rows;
}

std::string snap_path(const std::string& prefix, std::size_t k) {
    return prefix + "_snap_" + std::to_string(k) + ".csv";
}

}  // namespace

void write_run_artifacts(const run_config& cfg, const solution& sol) {
    const std::string& prefix = cfg.output_prefix;
    ensure_parent_dir(prefix);

    csv_writer umax({"t", "umax"});
    for (const auto& [t, m] : sol.u_max_series) umax.add_row(std::vector<double>{t, m});
    umax.write(prefix + "_umax.csv");

    for (std::size_t k = 0; k < sol.snapshots.size(); ++k) {
        csv_writer snap({"coord", "u"});
        const auto& [t, field] = sol.snapshots[k];
        for (std::size_t i = 0; i < field.size(); ++i)
            snap.add_row(std::vector<double>{sol.geom.coord(static_cast<int>(i)), field[i]});
        snap.write(snap_path(prefix, k));
    }

    ordered_json meta;
    meta["version"] = version_string;
    meta["config"] = config_to_json(cfg);
    meta["blew_up"] = sol.blew_up;
    meta["t_stop"] = sol.t_stop;
    meta["num_snapshots"] = sol.snapshots.size();
    meta["snapshot_times"] = ordered_json::array();
    for (const auto& [t, field] : sol.snapshots) meta["snapshot_times"].push_back(t);
    write_json_file(prefix + "_meta.json", meta);
}

run_config load_run_meta(const std::string& prefix) {
    const ordered_json meta = load_json_file(prefix + "_meta.json");
    if (!meta.contains("config"))
        throw std::runtime_error(prefix + "_meta.json: missing config echo");
    return parse_run_config(meta["config"]);
}

solution load_run(const std::string& prefix) {
    const ordered_json meta = load_json_file(prefix + "_meta.json");
    if (!meta.contains("config"))
        throw std::runtime_error(prefix + "_meta.json: missing config echo");
    const run_config cfg = parse_run_config(meta["config"]);

    solution sol{make_geometry(cfg), {}, false, 0.0, {}, cfg.solver.p};
    try {
        sol.blew_up = meta.at("blew_up").get<bool>();
        sol.t_stop = meta.at("t_stop").get<double>();
    } catch (const json::exception& e) {
        throw std::runtime_error(prefix + "_meta.json: " + e.what());
    }
    if (!meta.contains("snapshot_times") || !meta["snapshot_times"].is_array())
        throw std::runtime_error(prefix + "_meta.json: missing snapshot_times");

    std::size_t k = 0;
    for (const auto& tv : meta["snapshot_times"]) {
        const double t = tv.get<double>();
        const auto rows = read_two_column_csv(snap_path(prefix, k), "coord,u");
        if (rows.size() != static_cast<std::size_t>(cfg.num_points))
            throw std::runtime_error(snap_path(prefix, k) + ": wrong number of rows");
        std::vector<double> field(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) field[i] = rows[i].second;
        sol.snapshots.emplace_back(t, std::move(field));
        ++k;
    }
    if (sol.snapshots.empty())
        throw std::runtime_error(prefix + "_meta.json: run holds no snapshots");
    sol.u_max_series = read_two_column_csv(prefix + "_umax.csv", "t,umax");
    if (sol.u_max_series.empty())
        throw std::runtime_error(prefix + "_umax.csv: empty series");
    return sol;
}

namespace {

struct harnack_draw {
    path_spec path;
    harnack_report report;
};

// Seeded random space-time comparison paths: node indices uniform, times
// uniform on [0.05, 0.5] * t_stop (sorted, nudged apart when nearly equal).
std::vector<path_spec> draw_paths(const solution& sol, std::uint64_t seed, int count,
                                  int segments) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> node(0, sol.geom.num_points() - 1);
    const double span_hi = sol.snapshots.back().first;
    std::uniform_real_distribution<double> when(0.05 * sol.t_stop, 0.5 * sol.t_stop);
    std::vector<path_spec> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        path_spec ps;
        ps.x1 = node(rng);
        ps.x2 = node(rng);
        double t1 = when(rng);
        double t2 = when(rng);
        if (t1 > t2) std::swap(t1, t2);
        if (t2 - t1 < 1e-3) t2 += 1e-2;
        ps.t1 = t1;
        ps.t2 = std::min(t2, span_hi);
        ps.segments = segments;
        out.push_back(ps);
    }
    return out;
}

ordered_json pair_json(const param_pair& pp) {
    return {{"alpha", pp.alpha}, {"beta", pp.beta}};
}

}  // namespace

experiment_report run_experiment(const run_config& cfg) {
    const geometry geom = make_geometry(cfg);
    const std::vector<double> u0 = build_initial(cfg.initial, geom);
    const solution sol = evolve(geom, u0, cfg.solver);
    write_run_artifacts(cfg, sol);

    ordered_json doc;
    doc["version"] = version_string;
    doc["config"] = config_to_json(cfg);
    double final_max = 0.0;
    for (double v : sol.snapshots.back().second) final_max = std::max(final_max, v);
    doc["simulation"] = {{"blew_up", sol.blew_up},
                         {"t_stop", sol.t_stop},
                         {"steps", sol.u_max_series.size() - 1},
                         {"snapshots", sol.snapshots.size()},
                         {"final_max", final_max}};
    bool pass = true;
    ordered_json checks = ordered_json::object();

    if (cfg.checks.liyau) {
        ordered_json arr = ordered_json::array();
        const double t_hi = cfg.liyau_t_hi_fraction * sol.t_stop;
        for (std::size_t pi = 0; pi < cfg.pairs.size(); ++pi) {
            const liyau_report rep = liyau_check(sol, cfg.pairs[pi], 0.0, t_hi);
            const bool ok = rep.worst_margin >= -cfg.margin_tol;
            ordered_json blob;
            blob["pair"] = pair_json(cfg.pairs[pi]);
            blob["epsilon"] = std::isnan(rep.epsilon) ? ordered_json() : ordered_json(rep.epsilon);
            blob["offset"] = rep.offset;
            blob["t_hi"] = t_hi;
            blob["worst_margin"] = rep.worst_margin;
            blob["tol_disc"] = rep.tol_disc;
            blob["violation"] = rep.violation;
            blob["pass"] = ok;
            arr.push_back(blob);
            pass = pass && ok;

            csv_writer margins({"t", "min_margin"});
            for (const auto& [t, m] : rep.per_snapshot)
                margins.add_row(std::vector<double>{t, m});
            margins.write(cfg.output_prefix + "_liyau_" + std::to_string(pi) + ".csv");
        }
        checks["liyau"] = arr;
    }

    if (cfg.checks.harnack) {
        const std::vector<path_spec> paths =
            draw_paths(sol, cfg.seed, cfg.harnack_draws, cfg.path_segments);
        ordered_json arr = ordered_json::array();
        for (std::size_t pi = 0; pi < cfg.pairs.size(); ++pi) {
            int held = 0;
            bool dominated = true;
            double min_headroom = std::numeric_limits<double>::infinity();
            for (const path_spec& ps : paths) {
                const harnack_report rep =
                    harnack_check(sol, cfg.pairs[pi], ps, cfg.harnack_tol);
                held += rep.holds_simple ? 1 : 0;
                dominated = dominated && (rep.rhs_simple >= rep.rhs_full);
                min_headroom = std::min(min_headroom, rep.rhs_simple / rep.lhs);
            }
            const bool ok = held == static_cast<int>(paths.size()) && dominated;
            arr.push_back({{"pair", pair_json(cfg.pairs[pi])},
                           {"draws", paths.size()},
                           {"held", held},
                           {"simple_dominates_full", dominated},
                           {"min_rhs_over_lhs", min_headroom},
                           {"pass", ok}});
            pass = pass && ok;
        }
        checks["harnack"] = arr;
    }

    if (cfg.checks.mono || cfg.checks.convex) {
        ordered_json arr = ordered_json::array();
        for (const param_pair& pp : cfg.pairs) {
            const monotone_convex_report rep =
                monotone_convex_check(sol, pp, cfg.mono_T0, cfg.checks.convex);
            bool ok = rep.mono_margin >= -cfg.margin_tol;
            ordered_json blob;
            blob["pair"] = pair_json(pp);
            blob["T0"] = rep.T0;
            blob["mono_margin"] = rep.mono_margin;
            if (rep.convex_margin) {
                blob["convex_margin"] = *rep.convex_margin;
                ok = ok && *rep.convex_margin >= -cfg.margin_tol;
            }
            blob["pass"] = ok;
            arr.push_back(blob);
            pass = pass && ok;
        }
        checks["monotonicity"] = arr;
    }

    std::optional<blowup_fit> fit;
    if (cfg.checks.blowup || (cfg.checks.rescale && cfg.pick_rule == "hamilton") ||
        (cfg.checks.decay && !cfg.decay_T_bar)) {
        fit = fit_blowup_time(max_series(sol), sol.p);
    }

    if (cfg.checks.blowup) {
        const double lower_margin = check_lower_bound(sol.u_max_series, *fit);
        double q_min_window = std::numeric_limits<double>::infinity();
        double q_max = 0.0;
        for (const auto& [t, q] : fit->rate_series) {
            q_max = std::max(q_max, q);
            if (t >= fit->window.first && t <= fit->window.second)
                q_min_window = std::min(q_min_window, q);
        }
        const double q_floor = 1.0 / (sol.p - 1.0) - fit->tol_fit;
        const bool ok = lower_margin >= -fit->tol_fit && q_min_window >= q_floor;
        checks["blowup"] = {{"T_fit", fit->T_fit},
                            {"window", {fit->window.first, fit->window.second}},
                            {"window_count", fit->window_count},
                            {"q_limit", fit->q_limit},
                            {"residual_rms", fit->residual_rms},
                            {"residual_max", fit->residual_max},
                            {"tol_fit", fit->tol_fit},
                            {"lower_bound_margin", lower_margin},
                            {"q_min_window", q_min_window},
                            {"C_q", q_max},
                            {"pass", ok}};
        pass = pass && ok;

        csv_writer rate({"t", "umax", "q"});
        for (std::size_t i = 0; i < sol.u_max_series.size(); ++i)
            rate.add_row(std::vector<double>{sol.u_max_series[i].first,
                                             sol.u_max_series[i].second,
                                             fit->rate_series[i].second});
        rate.write(cfg.output_prefix + "_rate.csv");
    }

    if (cfg.checks.decay) {
        double T_bar;
        if (cfg.decay_T_bar) {
            T_bar = *cfg.decay_T_bar;
        } else {
            T_bar = fit->T_fit;
        }
        ordered_json arr = ordered_json::array();
        for (const param_pair& pp : cfg.pairs) {
            const double margin = decay_bound_check(sol, pp, T_bar);
            const bool ok = margin >= -cfg.margin_tol;
            arr.push_back({{"pair", pair_json(pp)},
                           {"T_bar", T_bar},
                           {"margin", margin},
                           {"pass", ok}});
            pass = pass && ok;
        }
        checks["decay"] = arr;
    }

    if (cfg.checks.rescale) {
        std::vector<double> times;
        if (cfg.pick_rule == "hamilton") {
            times = hamilton_times(sol, fit->T_fit, cfg.rescale_slices);
        } else {
            const std::size_t want = static_cast<std::size_t>(cfg.rescale_slices);
            const std::size_t have = sol.snapshots.size();
            for (std::size_t k = have > want ? have - want : 0; k < have; ++k)
                times.push_back(sol.snapshots[k].first);
        }
        const std::vector<rescaled_slice> slices =
            rescale(sol, times, cfg.rescale_s_lo, cfg.rescale_s_hi, cfg.rescale_points);
        ordered_json arr = ordered_json::array();
        bool ok = true;
        for (const rescaled_slice& sl : slices) {
            double base_value = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t si = 0; si < sl.s_grid.size(); ++si)
                if (sl.s_grid[si] == 0.0)
                    base_value = sl.values[si][static_cast<std::size_t>(sl.base_point)];
            const double raw = slice_raw_max(sl, 0.0);
            const bool slice_ok = base_value == 1.0 && raw <= 1.0 + cfg.ccc_tol;
            arr.push_back({{"k", sl.k_index},
                           {"base_time", sl.base_time},
                           {"base_point", sl.base_point},
                           {"scale", sl.scale},
                           {"base_value", base_value},
                           {"raw_max_s_le_0", raw},
                           {"normalized_max", slice_normalized_max(sl)},
                           {"profile_error", slice_profile_error(sl)},
                           {"pass", slice_ok}});
            ok = ok && slice_ok;
        }
        checks["rescale"] = {{"pick_rule", cfg.pick_rule},
                             {"slices", arr},
                             {"limit_profile_error", limit_profile_error(slices)},
                             {"pass", ok}};
        pass = pass && ok;
    }

    doc["checks"] = checks;
    doc["pass"] = pass;
    write_json_file(cfg.output_prefix + "_report.json", doc);
    return experiment_report{doc, pass};
}

experiment_report reproduce_appendix(const std::string& prefix, const sweep_grid& grid) {
    ensure_parent_dir(prefix);
    ordered_json doc;
    doc["version"] = version_string;
    bool pass = true;

    csv_writer table({"n", "p_bar_closed", "p_bar_sweep", "ref_lower", "ref_upper",
                      "ordering_ok"});
    ordered_json rows = ordered_json::array();
    double max_gap_1_10 = 0.0;
    for (int n = 1; n <= 12; ++n) {
        const double closed = p_bar_closed(n);
        const double swept = p_bar_sweep(n, grid);
        std::optional<double> ref_lower, ref_upper;
        if (n >= 2) ref_upper = static_cast<double>(n) * (n + 2) / ((n - 1.0) * (n - 1.0));
        if (n >= 3) ref_lower = n / (n - 2.0);
        bool ordering_ok = true;
        if (n >= 2) ordering_ok = ordering_ok && closed < *ref_upper;
        if (n >= 4) ordering_ok = ordering_ok && *ref_lower < closed;
        if (n <= 10) max_gap_1_10 = std::max(max_gap_1_10, std::abs(closed - swept));
        pass = pass && ordering_ok;

        table.add_row({std::to_string(n), format_double(closed), format_double(swept),
                       ref_lower ? format_double(*ref_lower) : "",
                       ref_upper ? format_double(*ref_upper) : "",
                       ordering_ok ? "true" : "false"});
        ordered_json row = {{"n", n},
                            {"p_bar_closed", closed},
                            {"p_bar_sweep", swept},
                            {"gap", std::abs(closed - swept)},
                            {"ordering_ok", ordering_ok}};
        if (ref_lower) row["ref_lower"] = *ref_lower;
        if (ref_upper) row["ref_upper"] = *ref_upper;
        rows.push_back(row);
    }
    table.write(prefix + "_thresholds.csv");
    doc["thresholds"] = rows;
    doc["max_gap_n_1_10"] = max_gap_1_10;

    sweep_grid region_grid = grid;
    region_grid.alpha_points = 200;
    region_grid.beta_points = 200;
    csv_writer region({"n", "p", "found", "alpha", "beta", "coeff"});
    ordered_json convex_rows = ordered_json::array();
    for (int n = 5; n <= 10; ++n) {
        const double hi = 0.99 * p_bar_closed(n);
        const std::vector<double> ps = uniform_grid(1.01, hi, 20);
        for (double p : ps) {
            const auto found = convexity_region_nonempty(problem{n, p}, region_grid);
            pass = pass && found.has_value();
            if (found) {
                region.add_row({std::to_string(n), format_double(p), "true",
                                format_double(found->pair.alpha),
                                format_double(found->pair.beta),
                                format_double(found->coeff.value)});
                convex_rows.push_back({{"n", n},
                                       {"p", p},
                                       {"found", true},
                                       {"alpha", found->pair.alpha},
                                       {"beta", found->pair.beta},
                                       {"coeff", found->coeff.value}});
            } else {
                region.add_row({std::to_string(n), format_double(p), "false", "", "", ""});
                convex_rows.push_back({{"n", n}, {"p", p}, {"found", false}});
            }
        }
    }
    region.write(prefix + "_convexity.csv");
    doc["convexity_region"] = convex_rows;
    doc["pass"] = pass;
    write_json_file(prefix + "_appendix.json", doc);
    return experiment_report{doc, pass};
}

}  // namespace liyau
