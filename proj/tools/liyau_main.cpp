#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liyau/admissibility.hpp"
#include "liyau/blowup.hpp"
#include "liyau/checks.hpp"
#include "liyau/experiment.hpp"
#include "liyau/io.hpp"
#include "liyau/numeric.hpp"
#include "liyau/solver.hpp"
#include "liyau/statics.hpp"

namespace {

using liyau::format_double;
using nlohmann::ordered_json;

struct output_options {
    std::string out_prefix;
    bool as_json = false;
    bool quiet = false;
};

void emit(const output_options& opts, const ordered_json& doc, const std::string& summary) {
    if (opts.quiet) return;
    if (opts.as_json)
        std::cout << doc.dump(2) << '\n';
    else
        std::cout << summary << '\n';
}

std::string fmt(double v) { return format_double(v); }

// "start:stop:step" -> inclusive sample list.
std::vector<double> parse_radii(const std::string& spec) {
    const std::size_t c1 = spec.find(':');
    const std::size_t c2 = c1 == std::string::npos ? std::string::npos : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("radii: expected start:stop:step, got '" + spec + "'");
    const double start = std::stod(spec.substr(0, c1));
    const double stop = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(spec.substr(c2 + 1));
    if (!(step > 0.0) || stop < start)
        throw std::invalid_argument("radii: need stop >= start and step > 0");
    std::vector<double> out;
    for (double r = start; r <= stop + 0.5 * step; r += step) out.push_back(r);
    return out;
}

ordered_json admissibility_json(const liyau::problem& prob, const liyau::param_pair& pair) {
    const liyau::admissibility_result res = liyau::check_admissible(prob, pair);
    ordered_json doc = {{"n", prob.n},          {"p", prob.p},
                        {"alpha", pair.alpha},  {"beta", pair.beta},
                        {"admissible", res.admissible},
                        {"cond2", res.cond2_value},
                        {"cond1_slack", res.cond1_slack}};
    if (res.epsilon) doc["epsilon"] = *res.epsilon;
    return doc;
}

int cmd_pbar(int n, const liyau::sweep_grid& grid, const output_options& opts) {
    ordered_json doc;
    if (n == 1) {
        const double closed = liyau::p_bar_closed(1);
        const double swept = liyau::p_bar_sweep(1, grid);
        doc = {{"n", 1}, {"p_bar_closed", closed}, {"p_bar_sweep", swept},
               {"gap", std::abs(closed - swept)}};
    } else {
        const liyau::threshold_report rep = liyau::make_threshold_report(n, grid);
        doc = {{"n", rep.n},
               {"p_bar_closed", rep.p_bar_closed},
               {"p_bar_sweep", rep.p_bar_sweep},
               {"gap", std::abs(rep.p_bar_closed - rep.p_bar_sweep)},
               {"ref_upper", rep.ref_upper}};
        if (rep.ref_lower) doc["ref_lower"] = *rep.ref_lower;
        if (rep.sobolev_ps) doc["sobolev_ps"] = *rep.sobolev_ps;
    }
    emit(opts, doc,
         "pbar n=" + std::to_string(n) + ": closed=" + fmt(doc["p_bar_closed"].get<double>()) +
             " sweep=" + fmt(doc["p_bar_sweep"].get<double>()) +
             " gap=" + fmt(doc["gap"].get<double>()));
    if (!opts.out_prefix.empty()) {
        liyau::ensure_parent_dir(opts.out_prefix);
        std::ofstream f(opts.out_prefix + "_pbar.json", std::ios::binary);
        f << doc.dump(2) << '\n';
    }
    return 0;
}

int cmd_region(int n, double p, int points, const output_options& opts) {
    if (opts.out_prefix.empty())
        throw std::invalid_argument("region: --out PREFIX is required (writes PREFIX_region.csv)");
    const liyau::problem prob{n, p};
    liyau::csv_writer csv({"alpha", "beta", "admissible", "cond2", "cond1_slack", "epsilon",
                           "convexity_coeff"});
    const liyau::sweep_grid defaults;
    std::vector<double> alphas =
        liyau::uniform_grid(defaults.margin, 1.0 - defaults.margin, points);
    alphas.push_back(1.0);
    const std::vector<double> betas =
        liyau::uniform_grid(defaults.margin, 1.0 - defaults.margin, points);
    std::size_t admissible_count = 0;
    for (double a : alphas) {
        for (double b : betas) {
            const liyau::admissibility_result res =
                liyau::check_admissible(prob, {a, b});
            admissible_count += res.admissible ? 1 : 0;
            std::string coeff;
            if (a > b && a < 1.0)
                coeff = fmt(liyau::convexity_coeff(prob, {a, b}).value);
            csv.add_row({fmt(a), fmt(b), res.admissible ? "true" : "false",
                         fmt(res.cond2_value), fmt(res.cond1_slack),
                         res.epsilon ? fmt(*res.epsilon) : "", coeff});
        }
    }
    liyau::ensure_parent_dir(opts.out_prefix);
    csv.write(opts.out_prefix + "_region.csv");
    const ordered_json doc = {{"n", n},
                              {"p", p},
                              {"grid_points", points},
                              {"admissible_count", admissible_count},
                              {"csv", opts.out_prefix + "_region.csv"}};
    emit(opts, doc,
         "region n=" + std::to_string(n) + " p=" + fmt(p) + ": " +
             std::to_string(admissible_count) + " admissible grid points -> " +
             opts.out_prefix + "_region.csv");
    return 0;
}

liyau::param_pair pair_from(double alpha, double beta) { return {alpha, beta}; }

int cmd_check_liyau(const std::string& run, double alpha, double beta, double t_lo,
                    double t_hi_frac, const output_options& opts) {
    const liyau::solution sol = liyau::load_run(run);
    const double t_hi = t_hi_frac * sol.snapshots.back().first;
    const liyau::liyau_report rep = liyau::liyau_check(sol, pair_from(alpha, beta), t_lo, t_hi);
    ordered_json doc = {{"alpha", alpha},
                        {"beta", beta},
                        {"offset", rep.offset},
                        {"t_lo", t_lo},
                        {"t_hi", t_hi},
                        {"worst_margin", rep.worst_margin},
                        {"tol_disc", rep.tol_disc},
                        {"violation", rep.violation},
                        {"snapshots_checked", rep.per_snapshot.size()}};
    if (!std::isnan(rep.epsilon)) doc["epsilon"] = rep.epsilon;
    if (!opts.out_prefix.empty()) {
        liyau::ensure_parent_dir(opts.out_prefix);
        liyau::csv_writer csv({"t", "min_margin"});
        for (const auto& [t, m] : rep.per_snapshot) csv.add_row(std::vector<double>{t, m});
        csv.write(opts.out_prefix + "_liyau.csv");
        doc["csv"] = opts.out_prefix + "_liyau.csv";
    }
    emit(opts, doc,
         "liyau (" + fmt(alpha) + ", " + fmt(beta) + "): worst margin " +
             fmt(rep.worst_margin) + " (tol_disc " + fmt(rep.tol_disc) + ", " +
             (rep.violation ? "VIOLATION" : "no violation") + ")");
    return rep.violation ? 1 : 0;
}

int cmd_check_harnack(const std::string& run, double alpha, double beta,
                      const std::optional<std::vector<double>>& path_arg, int segments,
                      double tol, int draws, std::uint64_t seed, const output_options& opts) {
    const liyau::solution sol = liyau::load_run(run);
    const liyau::param_pair pair = pair_from(alpha, beta);
    ordered_json doc = {{"alpha", alpha}, {"beta", beta}, {"tol", tol}};
    bool all_hold = true;

    auto report_json = [](const liyau::harnack_report& rep) {
        return ordered_json{{"x1", rep.path.x1},
                            {"x2", rep.path.x2},
                            {"t1", rep.path.t1},
                            {"t2", rep.path.t2},
                            {"lhs", rep.lhs},
                            {"rhs_full", rep.rhs_full},
                            {"rhs_simple", rep.rhs_simple},
                            {"rho_full", rep.rho_full},
                            {"rho_simple", rep.rho_simple},
                            {"holds_full", rep.holds_full},
                            {"holds_simple", rep.holds_simple}};
    };

    if (path_arg) {
        liyau::path_spec ps;
        ps.x1 = static_cast<int>((*path_arg)[0]);
        ps.x2 = static_cast<int>((*path_arg)[1]);
        ps.t1 = (*path_arg)[2];
        ps.t2 = (*path_arg)[3];
        ps.segments = segments;
        const liyau::harnack_report rep = liyau::harnack_check(sol, pair, ps, tol);
        doc["path"] = report_json(rep);
        all_hold = rep.holds_simple && rep.rhs_simple >= rep.rhs_full;
        emit(opts, doc,
             "harnack: lhs=" + fmt(rep.lhs) + " rhs_simple=" + fmt(rep.rhs_simple) +
                 " rhs_full=" + fmt(rep.rhs_full) + (all_hold ? " HOLDS" : " FAILS"));
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> node(0, sol.geom.num_points() - 1);
        std::uniform_real_distribution<double> when(0.05 * sol.t_stop, 0.5 * sol.t_stop);
        const double span_hi = sol.snapshots.back().first;
        ordered_json arr = ordered_json::array();
        int held = 0;
        for (int k = 0; k < draws; ++k) {
            liyau::path_spec ps;
            ps.x1 = node(rng);
            ps.x2 = node(rng);
            double t1 = when(rng), t2 = when(rng);
            if (t1 > t2) std::swap(t1, t2);
            if (t2 - t1 < 1e-3) t2 += 1e-2;
            ps.t1 = t1;
            ps.t2 = std::min(t2, span_hi);
            ps.segments = segments;
            const liyau::harnack_report rep = liyau::harnack_check(sol, pair, ps, tol);
            const bool ok = rep.holds_simple && rep.rhs_simple >= rep.rhs_full;
            held += ok ? 1 : 0;
            all_hold = all_hold && ok;
            arr.push_back(report_json(rep));
        }
        doc["draws"] = arr;
        doc["held"] = held;
        emit(opts, doc,
             "harnack: " + std::to_string(held) + "/" + std::to_string(draws) +
                 " seeded draws hold (seed " + std::to_string(seed) + ")");
    }
    if (!opts.out_prefix.empty()) {
        liyau::ensure_parent_dir(opts.out_prefix);
        std::ofstream f(opts.out_prefix + "_harnack.json", std::ios::binary);
        f << doc.dump(2) << '\n';
    }
    return all_hold ? 0 : 1;
}

int cmd_check_mono(const std::string& run, double alpha, double beta, double t0, bool convex,
                   const output_options& opts) {
    const liyau::solution sol = liyau::load_run(run);
    const liyau::monotone_convex_report rep =
        liyau::monotone_convex_check(sol, pair_from(alpha, beta), t0, convex);
    ordered_json doc = {{"alpha", alpha},
                        {"beta", beta},
                        {"T0", rep.T0},
                        {"mono_margin", rep.mono_margin}};
    if (rep.convex_margin) doc["convex_margin"] = *rep.convex_margin;
    if (!opts.out_prefix.empty()) {
        liyau::ensure_parent_dir(opts.out_prefix);
        liyau::csv_writer csv({"t", "min_margin"});
        for (const auto& [t, m] : rep.mono_per_snapshot) csv.add_row(std::vector<double>{t, m});
        csv.write(opts.out_prefix + "_mono.csv");
        doc["csv"] = opts.out_prefix + "_mono.csv";
    }
    std::string summary = "monotonicity: margin " + fmt(rep.mono_margin);
    if (rep.convex_margin) summary += ", convexity margin " + fmt(*rep.convex_margin);
    emit(opts, doc, summary);
    return 0;
}

int cmd_check_decay(const std::string& run, double alpha, double beta,
                    std::optional<double> t_bar, const output_options& opts) {
    const liyau::solution sol = liyau::load_run(run);
    const double T_bar =
        t_bar ? *t_bar : liyau::fit_blowup_time(sol.u_max_series, sol.p).T_fit;
    const double margin = liyau::decay_bound_check(sol, pair_from(alpha, beta), T_bar);
    const ordered_json doc = {{"alpha", alpha},
                              {"beta", beta},
                              {"T_bar", T_bar},
                              {"margin", margin}};
    emit(opts, doc, "decay: margin " + fmt(margin) + " with T_bar=" + fmt(T_bar));
    if (!opts.out_prefix.empty()) {
        liyau::ensure_parent_dir(opts.out_prefix);
        std::ofstream f(opts.out_prefix + "_decay.json", std::ios::binary);
        f << doc.dump(2) << '\n';
    }
    return 0;
}

int cmd_blowup(const std::string& run, const std::string& pick_rule, int slices,
               const output_options& opts) {
    const liyau::solution sol = liyau::load_run(run);
    const liyau::blowup_fit fit = liyau::fit_blowup_time(sol.u_max_series, sol.p);
    const double lower_margin = liyau::check_lower_bound(sol.u_max_series, fit);

    std::vector<double> times;
    if (pick_rule == "hamilton") {
        times = liyau::hamilton_times(sol, fit.T_fit, slices);
    } else {
        const std::size_t want = static_cast<std::size_t>(slices);
        const std::size_t have = sol.snapshots.size();
        for (std::size_t k = have > want ? have - want : 0; k < have; ++k)
            times.push_back(sol.snapshots[k].first);
    }
    const std::vector<liyau::rescaled_slice> sl = liyau::rescale(sol, times);

    ordered_json doc = {{"T_fit", fit.T_fit},
                        {"window", {fit.window.first, fit.window.second}},
                        {"q_limit", fit.q_limit},
                        {"residual_rms", fit.residual_rms},
                        {"residual_max", fit.residual_max},
                        {"tol_fit", fit.tol_fit},
                        {"lower_bound_margin", lower_margin},
                        {"pick_rule", pick_rule}};
    ordered_json slice_arr = ordered_json::array();
    for (const liyau::rescaled_slice& s : sl)
        slice_arr.push_back({{"k", s.k_index},
                             {"base_time", s.base_time},
                             {"scale", s.scale},
                             {"raw_max_s_le_0", liyau::slice_raw_max(s, 0.0)},
                             {"profile_error", liyau::slice_profile_error(s)}});
    doc["slices"] = slice_arr;
    doc["limit_profile_error"] = liyau::limit_profile_error(sl);

    const std::string prefix = opts.out_prefix.empty() ? run : opts.out_prefix;
    liyau::ensure_parent_dir(prefix);
    liyau::csv_writer csv({"t", "umax", "q"});
    for (std::size_t i = 0; i < sol.u_max_series.size(); ++i)
        csv.add_row(std::vector<double>{sol.u_max_series[i].first,
                                        sol.u_max_series[i].second,
                                        fit.rate_series[i].second});
    csv.write(prefix + "_rate.csv");
    std::ofstream f(prefix + "_blowup.json", std::ios::binary);
    f << doc.dump(2) << '\n';

    emit(opts, doc,
         "blowup: T_fit=" + fmt(fit.T_fit) + " q_limit=" + fmt(fit.q_limit) +
             " lower-bound margin=" + fmt(lower_margin) + " (tol_fit " + fmt(fit.tol_fit) +
             ")");
    return lower_margin >= -fit.tol_fit ? 0 : 1;
}

int cmd_static_check(const std::string& profile_name, const std::string& radii_spec,
                     std::optional<double> fd_h, const output_options& opts) {
    if (profile_name != "talenti")
        throw std::invalid_argument("static-check: unknown profile '" + profile_name +
                                    "' (known: talenti)");
    liyau::radial_profile profile = liyau::talenti_profile();
    if (fd_h) {
        const liyau::radial_profile analytic = liyau::talenti_profile();
        profile = liyau::profile_from_function(
            [analytic](double r) { return analytic.evaluate(r).u; }, analytic.n, analytic.p,
            *fd_h, analytic.name + "_fd");
    }
    const std::vector<double> radii = parse_radii(radii_spec);
    const std::vector<double> residual = liyau::static_residual(profile, radii);

    double max_abs = 0.0, max_rel = 0.0;
    liyau::csv_writer csv({"r", "u", "residual"});
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double u = profile.evaluate(radii[i]).u;
        csv.add_row(std::vector<double>{radii[i], u, residual[i]});
        max_abs = std::max(max_abs, std::abs(residual[i]));
        max_rel = std::max(max_rel, std::abs(residual[i]) / (u * u));
    }
    if (!opts.out_prefix.empty()) {
        liyau::ensure_parent_dir(opts.out_prefix);
        csv.write(opts.out_prefix + "_static.csv");
    }
    const ordered_json doc = {{"profile", profile.name},
                              {"n", profile.n},
                              {"p", profile.p},
                              {"radii", radii.size()},
                              {"max_abs_residual", max_abs},
                              {"max_rel_residual", max_rel}};
    emit(opts, doc,
         "static-check " + profile.name + ": max |residual| " + fmt(max_abs) +
             " (relative to u^2: " + fmt(max_rel) + ") over " +
             std::to_string(radii.size()) + " radii");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification toolkit for differential-inequality estimates of the "
                 "semilinear heat equation u_t = laplacian(u) + u^p"};
    app.require_subcommand(1);
    app.fallthrough();

    output_options opts;
    app.add_option("--out", opts.out_prefix, "Output path prefix for written artifacts");
    app.add_flag("--json", opts.as_json, "Print full JSON reports on stdout");
    app.add_flag("--quiet", opts.quiet, "Suppress stdout (exit codes still apply)");

    int exit_code = 0;
    auto run_cmd = [&](auto&& fn) {
        return [&, fn]() { exit_code = fn(); };
    };

    // pbar
    auto* pbar = app.add_subcommand("pbar", "Threshold exponent: closed form vs grid sweep");
    int pbar_n = 2;
    liyau::sweep_grid pbar_grid;
    pbar->add_option("--n", pbar_n, "Spatial dimension")->required();
    pbar->add_option("--points", pbar_grid.alpha_points, "Grid points per parameter axis");
    pbar->add_option("--p-tol", pbar_grid.p_tol, "Bisection width for the sweep");
    pbar->callback(run_cmd([&]() {
        pbar_grid.beta_points = pbar_grid.alpha_points;
        return cmd_pbar(pbar_n, pbar_grid, opts);
    }));

    // admissible
    auto* adm = app.add_subcommand("admissible", "Check one (alpha, beta) pair");
    int adm_n = 1;
    double adm_p = 2.0, adm_alpha = 1.0, adm_beta = 0.5;
    adm->add_option("--n", adm_n, "Spatial dimension")->required();
    adm->add_option("--p", adm_p, "Nonlinearity exponent")->required();
    adm->add_option("--alpha", adm_alpha, "alpha")->required();
    adm->add_option("--beta", adm_beta, "beta")->required();
    adm->callback(run_cmd([&]() {
        const ordered_json doc = admissibility_json({adm_n, adm_p}, {adm_alpha, adm_beta});
        emit(opts, doc,
             std::string("admissible: ") + (doc["admissible"].get<bool>() ? "yes" : "no") +
                 " (cond2=" + fmt(doc["cond2"].get<double>()) +
                 ", cond1_slack=" + fmt(doc["cond1_slack"].get<double>()) +
                 (doc.contains("epsilon") ? ", epsilon=" + fmt(doc["epsilon"].get<double>())
                                          : std::string()) +
                 ")");
        return doc["admissible"].get<bool>() ? 0 : 1;
    }));

    // region
    auto* region = app.add_subcommand("region", "Tabulate the (alpha, beta) plane");
    int region_n = 1, region_points = 100;
    double region_p = 2.0;
    region->add_option("--n", region_n, "Spatial dimension")->required();
    region->add_option("--p", region_p, "Nonlinearity exponent")->required();
    region->add_option("--points", region_points, "Grid points per axis");
    region->callback(run_cmd([&]() { return cmd_region(region_n, region_p, region_points, opts); }));

    // simulate
    auto* sim = app.add_subcommand("simulate", "Integrate a configured run and store it");
    std::string sim_config;
    sim->add_option("--config", sim_config, "JSON run configuration")->required();
    sim->callback(run_cmd([&]() {
        liyau::run_config cfg = liyau::load_run_config(sim_config);
        if (!opts.out_prefix.empty()) cfg.output_prefix = opts.out_prefix;
        const liyau::geometry geom = liyau::make_geometry(cfg);
        const liyau::solution sol = liyau::evolve(geom, liyau::build_initial(cfg.initial, geom),
                                                  cfg.solver);
        liyau::write_run_artifacts(cfg, sol);
        const ordered_json doc = {{"prefix", cfg.output_prefix},
                                  {"blew_up", sol.blew_up},
                                  {"t_stop", sol.t_stop},
                                  {"snapshots", sol.snapshots.size()},
                                  {"steps", sol.u_max_series.size() - 1}};
        emit(opts, doc,
             "simulate: " + std::string(sol.blew_up ? "blew up" : "completed") + " at t=" +
                 fmt(sol.t_stop) + ", " + std::to_string(sol.snapshots.size()) +
                 " snapshots -> " + cfg.output_prefix + "_*");
        return 0;
    }));

    // check-liyau
    auto* cl = app.add_subcommand("check-liyau", "Pointwise estimate margins on a stored run");
    std::string cl_run;
    double cl_alpha = 1.0, cl_beta = 0.0, cl_tlo = 0.0, cl_thif = 1.0;
    cl->add_option("--run", cl_run, "Run prefix")->required();
    cl->add_option("--alpha", cl_alpha, "alpha")->required();
    cl->add_option("--beta", cl_beta, "beta")->required();
    cl->add_option("--t-lo", cl_tlo, "Exclusive lower time bound");
    cl->add_option("--t-hi-frac", cl_thif, "Check on (t-lo, frac * final time]");
    cl->callback(run_cmd([&]() {
        return cmd_check_liyau(cl_run, cl_alpha, cl_beta, cl_tlo, cl_thif, opts);
    }));

    // check-harnack
    auto* ch = app.add_subcommand("check-harnack", "Space-time comparison on a stored run");
    std::string ch_run;
    double ch_alpha = 1.0, ch_beta = 0.0, ch_tol = 0.05;
    int ch_segments = 64, ch_draws = 20;
    std::uint64_t ch_seed = 0;
    std::vector<double> ch_path;
    ch->add_option("--run", ch_run, "Run prefix")->required();
    ch->add_option("--alpha", ch_alpha, "alpha")->required();
    ch->add_option("--beta", ch_beta, "beta")->required();
    ch->add_option("--path", ch_path, "Single comparison x1 x2 t1 t2")->expected(4);
    ch->add_option("--segments", ch_segments, "Trapezoid subintervals along the path");
    ch->add_option("--tol", ch_tol, "Multiplicative slack on the right-hand side");
    ch->add_option("--draws", ch_draws, "Seeded random comparisons when --path is absent");
    ch->add_option("--seed", ch_seed, "RNG seed for --draws");
    ch->callback(run_cmd([&]() {
        std::optional<std::vector<double>> path;
        if (!ch_path.empty()) path = ch_path;
        return cmd_check_harnack(ch_run, ch_alpha, ch_beta, path, ch_segments, ch_tol,
                                 ch_draws, ch_seed, opts);
    }));

    // check-mono
    auto* cm = app.add_subcommand("check-mono",
                                  "Monotonicity (and optional convexity) margins");
    std::string cm_run;
    double cm_alpha = 1.0, cm_beta = 0.0, cm_t0 = 0.0;
    bool cm_convex = false;
    cm->add_option("--run", cm_run, "Run prefix")->required();
    cm->add_option("--alpha", cm_alpha, "alpha")->required();
    cm->add_option("--beta", cm_beta, "beta")->required();
    cm->add_option("--t0", cm_t0, "Reference time of the 1/(t - T0) terms");
    cm->add_flag("--convex", cm_convex, "Also evaluate the convexity margin (n >= 5)");
    cm->callback(run_cmd([&]() {
        return cmd_check_mono(cm_run, cm_alpha, cm_beta, cm_t0, cm_convex, opts);
    }));

    // check-decay
    auto* cd = app.add_subcommand("check-decay", "Supersolution decay bound margins");
    std::string cd_run;
    double cd_alpha = 1.0, cd_beta = 0.5;
    double cd_tbar = -1.0;
    cd->add_option("--run", cd_run, "Run prefix")->required();
    cd->add_option("--alpha", cd_alpha, "alpha")->required();
    cd->add_option("--beta", cd_beta, "beta")->required();
    auto* cd_tbar_opt = cd->add_option("--t-bar", cd_tbar,
                                       "Reference blow-up time (default: fitted)");
    cd->callback(run_cmd([&]() {
        std::optional<double> tb;
        if (cd_tbar_opt->count() > 0) tb = cd_tbar;
        return cmd_check_decay(cd_run, cd_alpha, cd_beta, tb, opts);
    }));

    // blowup
    auto* bu = app.add_subcommand("blowup", "Blow-up time fit, rate, and rescaled slices");
    std::string bu_run, bu_pick = "simple";
    int bu_slices = 3;
    bu->add_option("--run", bu_run, "Run prefix")->required();
    bu->add_option("--pick-rule", bu_pick, "Base-time selection: simple | hamilton")
        ->check(CLI::IsMember({"simple", "hamilton"}));
    bu->add_option("--slices", bu_slices, "Number of rescaled slices");
    bu->callback(run_cmd([&]() { return cmd_blowup(bu_run, bu_pick, bu_slices, opts); }));

    // static-check
    auto* sc = app.add_subcommand("static-check", "Residual of a static radial profile");
    std::string sc_profile = "talenti", sc_radii = "0:10:0.1";
    double sc_fd = -1.0;
    sc->add_option("--profile", sc_profile, "Profile name (talenti)");
    sc->add_option("--radii", sc_radii, "start:stop:step sample specification");
    auto* sc_fd_opt = sc->add_option("--fd", sc_fd,
                                     "Use finite-difference derivatives with this step");
    sc->callback(run_cmd([&]() {
        std::optional<double> h;
        if (sc_fd_opt->count() > 0) h = sc_fd;
        return cmd_static_check(sc_profile, sc_radii, h, opts);
    }));

    // appendix
    auto* ap = app.add_subcommand("appendix",
                                  "Threshold table (n=1..12) and convexity-region search");
    liyau::sweep_grid ap_grid;
    ap->add_option("--points", ap_grid.alpha_points, "Grid points per parameter axis");
    ap->add_option("--p-tol", ap_grid.p_tol, "Bisection width for the sweeps");
    ap->callback(run_cmd([&]() {
        ap_grid.beta_points = ap_grid.alpha_points;
        const std::string prefix = opts.out_prefix.empty() ? "appendix" : opts.out_prefix;
        const liyau::experiment_report rep = liyau::reproduce_appendix(prefix, ap_grid);
        emit(opts, rep.document,
             std::string("appendix: ") + (rep.pass ? "all orderings and regions hold" :
                                                     "FINDINGS RECORDED (see CSV)") +
                 " -> " + prefix + "_*");
        return rep.pass ? 0 : 1;
    }));

    // run
    auto* run = app.add_subcommand("run", "Simulate + checks + reports from a config file");
    std::string run_config_path;
    run->add_option("--config", run_config_path, "JSON run configuration")->required();
    run->callback(run_cmd([&]() {
        liyau::run_config cfg = liyau::load_run_config(run_config_path);
        if (!opts.out_prefix.empty()) cfg.output_prefix = opts.out_prefix;
        const liyau::experiment_report rep = liyau::run_experiment(cfg);
        emit(opts, rep.document,
             std::string("run: ") + (rep.pass ? "PASS" : "FAIL") + " -> " +
                 cfg.output_prefix + "_report.json");
        return rep.pass ? 0 : 1;
    }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
