#include "logistic/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "logistic/artifacts.hpp"
#include "logistic/diagnostics.hpp"
#include "logistic/eigensolver.hpp"
#include "logistic/lambda_estimator.hpp"
#include "logistic/logistic_solver.hpp"
#include "logistic/radial_grid.hpp"
#include "logistic/tridiag.hpp"

namespace logistic {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             t0)
            .count();
    }
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << "\n";
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        default: return "not-checkable";
    }
}

json report_to_json(const ValidationReport& rep) {
    json j;
    j["all_pass"] = rep.all_pass();
    j["checks"] = json::array();
    for (const auto& c : rep.checks)
        j["checks"].push_back({{"name", c.name},
                               {"status", status_name(c.status)},
                               {"detail", c.detail}});
    j["check_grid"] = rep.check_grid;
    return j;
}

int grid_nodes(double R, int npu) {
    const int m = static_cast<int>(std::lround(R * npu)) - 1;
    if (m < 2) throw ConfigError("nodes_per_unit too small for radius");
    return m;
}

double require_radius(const RunConfig& cfg) {
    if (cfg.radius) return *cfg.radius;
    if (!cfg.R_schedule.empty()) return cfg.R_schedule.front();
    throw ConfigError("command needs 'radius' or a nonempty 'R_schedule'");
}

}  // namespace

int cmd_validate(const RunConfig& cfg, const std::string& config_path,
                 const std::string& out_dir) {
    Timer timer;
    Manifest manifest("validate", out_dir);
    manifest.note_config(config_path);

    const auto V = make_potential(cfg);
    const auto f = make_absorption(cfg);
    const double extent = cfg.domain_extent();
    const auto rep_V = validate_potential(V, extent);
    const auto rep_f = validate_absorption(f, V.sup_norm(extent));

    json j;
    j["potential"] = report_to_json(rep_V);
    j["absorption"] = report_to_json(rep_f);
    j["sup_norm_estimate"] = rep_V.sup_norm_estimate;
    const bool ok = rep_V.all_pass() && rep_f.all_pass();
    j["all_pass"] = ok;
    write_json_file(fs::path(out_dir) / "validation.json", j);
    manifest.add("validation.json");
    manifest.set_status(ok ? "complete" : "hypothesis-failure");
    manifest.write(timer.seconds());
    return ok ? 0 : 1;
}

int cmd_eig(const RunConfig& cfg, const std::string& config_path,
            const std::string& out_dir) {
    Timer timer;
    Manifest manifest("eig", out_dir);
    manifest.note_config(config_path);

    const auto V = make_potential(cfg);
    const double R = require_radius(cfg);
    const auto grid = build_grid(cfg.dimension, R, grid_nodes(R, cfg.nodes_per_unit));
    const auto fine = principal_weighted(grid, V, cfg.eig_tol);

    const auto coarse_grid =
        build_grid(cfg.dimension, R,
                   std::max(2, grid_nodes(R, cfg.nodes_per_unit) / 2));
    const auto coarse = principal_weighted(coarse_grid, V, cfg.eig_tol);
    // Second-order scheme: the Richardson gap |coarse - fine| / 3 brackets
    // the discretization error of the fine value.
    const double err_est = std::fabs(coarse.lambda1 - fine.lambda1) / 3.0;

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < fine.phi1.size(); ++i)
        rows.push_back({grid.nodes[i], fine.phi1[i]});
    write_csv(fs::path(out_dir) / "eigenfunction.csv", {"r", "phi1"}, rows);
    manifest.add("eigenfunction.csv");

    json j;
    j["lambda1"] = fine.lambda1;
    j["lambda1_coarse"] = coarse.lambda1;
    j["error_estimate"] = err_est;
    j["iterations"] = fine.iterations;
    j["residual"] = fine.residual;
    j["normalization"] = fine.normalization;
    j["radius"] = R;
    j["node_count"] = grid.node_count;
    write_json_file(fs::path(out_dir) / "eig.json", j);
    manifest.add("eig.json");

    write_text(fs::path(out_dir) / "plot_eig.gp",
               "set datafile separator ','\n"
               "set xlabel 'r'\nset ylabel 'phi1'\n"
               "plot 'eigenfunction.csv' skip 1 using 1:2 with lines title "
               "'principal eigenfunction'\n");
    manifest.add("plot_eig.gp");
    manifest.write(timer.seconds());
    return 0;
}

int cmd_curve(const RunConfig& cfg, const std::string& config_path,
              const std::string& out_dir) {
    Timer timer;
    Manifest manifest("curve", out_dir);
    manifest.note_config(config_path);

    if (cfg.R_schedule.empty()) throw ConfigError("curve needs R_schedule");
    const auto V = make_potential(cfg);
    const auto curve = lambda_curve(V, cfg.R_schedule, cfg.dimension,
                                    cfg.nodes_per_unit, cfg.eig_tol);

    std::vector<std::vector<double>> rows;
    for (const auto& e : curve.entries)
        rows.push_back({e.R, e.lambda1, e.residual});
    write_csv(fs::path(out_dir) / "curve.csv", {"R", "lambda1", "residual"},
              rows);
    manifest.add("curve.csv");

    json j;
    if (curve.entries.size() >= 4) {
        const auto est = estimate_big_lambda(curve);
        j["value"] = est.value;
        j["low"] = est.low;
        j["high"] = est.high;
        j["model"] = est.model;
        j["fit_ok"] = est.fit_ok;
        j["beta"] = est.beta;
        j["coeff"] = est.coeff;
        j["fit_rms"] = est.fit_rms;
        j["jackknife_delta"] = est.jackknife_delta;
        j["tail_points"] = est.tail_points;
    } else {
        j["skipped"] = "estimate needs >= 4 curve entries";
    }
    write_json_file(fs::path(out_dir) / "lambda_estimate.json", j);
    manifest.add("lambda_estimate.json");

    write_text(fs::path(out_dir) / "plot_curve.gp",
               "set datafile separator ','\n"
               "set logscale xy\nset xlabel 'R'\nset ylabel 'lambda1(R)'\n"
               "plot 'curve.csv' skip 1 using 1:2 with linespoints title "
               "'lambda1(R)'\n");
    manifest.add("plot_curve.gp");
    manifest.write(timer.seconds());
    return 0;
}

int cmd_solve(const RunConfig& cfg, const std::string& config_path,
              const std::string& out_dir) {
    Timer timer;
    Manifest manifest("solve", out_dir);
    manifest.note_config(config_path);

    if (!cfg.lambda) throw ConfigError("solve needs lambda");
    if (cfg.R_schedule.empty()) throw ConfigError("solve needs R_schedule");
    const auto V = make_potential(cfg);
    const auto f = make_absorption(cfg);
    const auto out = solve_entire(V, f, *cfg.lambda, cfg.R_schedule,
                                  cfg.dimension, cfg.nodes_per_unit, cfg.solve);

    json j;
    j["lambda"] = *cfg.lambda;
    j["dimension"] = cfg.dimension;
    j["nodes_per_unit"] = cfg.nodes_per_unit;

    if (const auto* sol = std::get_if<EntireSolution>(&out)) {
        const auto& p = sol->final_profile;
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < p.u.size(); ++i)
            rows.push_back({p.r[i], p.u[i]});
        write_csv(fs::path(out_dir) / "solution.csv", {"r", "u"}, rows);
        manifest.add("solution.csv");

        std::vector<std::vector<double>> stage_rows;
        for (const auto& s : sol->stages)
            stage_rows.push_back({s.R, s.extinct ? 1.0 : 0.0, s.sup_norm,
                                  static_cast<double>(s.iterations),
                                  s.stage_delta});
        write_csv(fs::path(out_dir) / "stages.csv",
                  {"R", "extinct", "sup_norm", "iterations", "stage_delta"},
                  stage_rows);
        manifest.add("stages.csv");

        j["status"] = "solution";
        j["radius"] = p.radius;
        j["sup_norm"] = p.sup_norm();
        j["residual"] = p.residual;
        j["activation_R"] = sol->activation_R;
        j["stage_converged"] = sol->stage_converged;
        j["supersolution_constant"] = sol->supersolution_constant;
        j["supersolution_ok"] = sol->supersolution_ok;
        j["monotonicity_violations"] = sol->monotonicity_violations_total;
        j["sup_bound_M"] = p.sup_bound_M;
    } else {
        const auto& ext = std::get<Extinct>(out);
        j["status"] = "extinct";
        j["reason"] = ext.reason;
        j["radius"] = cfg.R_schedule.back();
        std::vector<std::vector<double>> traj;
        for (std::size_t i = 0; i < ext.sup_trajectory.size(); ++i)
            traj.push_back({static_cast<double>(i), ext.sup_trajectory[i]});
        write_csv(fs::path(out_dir) / "trajectory.csv",
                  {"iteration", "sup_norm"}, traj);
        manifest.add("trajectory.csv");

        // The zero steady state, written so downstream tooling has a profile.
        const double R = cfg.R_schedule.back();
        const auto grid =
            build_grid(cfg.dimension, R, grid_nodes(R, cfg.nodes_per_unit));
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < grid.node_count; ++i)
            rows.push_back({grid.nodes[i], 0.0});
        write_csv(fs::path(out_dir) / "solution.csv", {"r", "u"}, rows);
        manifest.add("solution.csv");
    }
    write_json_file(fs::path(out_dir) / "solve_summary.json", j);
    manifest.add("solve_summary.json");

    write_text(fs::path(out_dir) / "plot_solve.gp",
               "set datafile separator ','\n"
               "set xlabel 'r'\nset ylabel 'u(r)'\n"
               "plot 'solution.csv' skip 1 using 1:2 with lines title "
               "'steady state'\n");
    manifest.add("plot_solve.gp");
    manifest.write(timer.seconds());
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& config_path,
              const std::string& out_dir) {
    Timer timer;
    Manifest manifest("sweep", out_dir);
    manifest.note_config(config_path);

    if (cfg.R_schedule.empty()) throw ConfigError("sweep needs R_schedule");
    const auto V = make_potential(cfg);
    const auto f = make_absorption(cfg);
    const auto rows = bifurcation_sweep(V, f, cfg.lambda_grid, cfg.R_schedule,
                                        cfg.dimension, cfg.nodes_per_unit,
                                        cfg.solve);

    std::vector<std::vector<double>> csv;
    for (const auto& r : rows)
        csv.push_back({r.lambda, r.exists ? 1.0 : 0.0, r.sup_norm,
                       static_cast<double>(r.stages), r.activation_R,
                       static_cast<double>(r.iterations)});
    write_csv(fs::path(out_dir) / "sweep.csv",
              {"lambda", "exists", "sup_norm", "stages", "activation_R",
               "iterations"},
              csv);
    manifest.add("sweep.csv");

    json j;
    j["points"] = rows.size();
    if (const auto t = empirical_threshold(rows))
        j["empirical_threshold"] = *t;
    else
        j["empirical_threshold"] = nullptr;
    write_json_file(fs::path(out_dir) / "sweep_summary.json", j);
    manifest.add("sweep_summary.json");

    write_text(fs::path(out_dir) / "plot_sweep.gp",
               "set datafile separator ','\n"
               "set xlabel 'lambda'\nset ylabel 'sup u'\n"
               "plot 'sweep.csv' skip 1 using 1:3 with points pt 7 title "
               "'sup-norm vs lambda'\n");
    manifest.add("plot_sweep.gp");
    manifest.write(timer.seconds());
    return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& config_path,
               const std::string& in_dir, const std::string& out_dir) {
    Timer timer;
    Manifest manifest("verify", out_dir);
    manifest.note_config(config_path);

    const fs::path in(in_dir);
    std::ifstream sum_in(in / "solve_summary.json");
    if (!sum_in) throw ConfigError("verify: missing solve_summary.json in " + in_dir);
    json sum;
    sum_in >> sum;

    SolutionProfile profile;
    profile.dim = sum.value("dimension", cfg.dimension);
    profile.radius = sum.value("radius", 0.0);
    profile.lambda = sum.value("lambda", cfg.lambda.value_or(0.0));

    std::ifstream csv(in / "solution.csv");
    if (!csv) throw ConfigError("verify: missing solution.csv in " + in_dir);
    std::string line;
    std::getline(csv, line);  // header
    while (std::getline(csv, line)) {
        std::istringstream ss(line);
        double r, u;
        char comma;
        if (ss >> r >> comma >> u) {
            profile.r.push_back(r);
            profile.u.push_back(u);
        }
    }
    if (profile.r.size() < 3 || !(profile.radius > 0.0))
        throw ConfigError("verify: solution profile too small or malformed");

    const auto V = make_potential(cfg);
    const auto f = make_absorption(cfg);

    json j;
    j["lambda"] = profile.lambda;
    bool refused = false, identities_ok = true;

    try {
        const auto decay = decay_exponent(profile);
        j["decay"] = {{"slope", decay.slope},
                      {"target", decay.target},
                      {"pass", decay.pass},
                      {"window", {decay.r_lo, decay.r_hi}}};
    } catch (const std::domain_error& e) {
        j["decay"] = {{"refused", e.what()}};
        refused = true;
    }

    if (!refused) {
        const auto nr = norms(profile, V, f);
        j["norms"] = {
            {"l2", nr.l2_norm.value},
            {"l2_stability", nr.l2_norm.stability_ratio},
            {"energy", nr.energy.value},
            {"energy_stability", nr.energy.stability_ratio},
            {"int_Vplus_u", nr.int_Vplus_u.value},
            {"int_Vminus_u", nr.int_Vminus_u.value},
            {"int_f_u", nr.int_f_u.value}};
        j["boundary_flux"] = boundary_flux(profile);

        const double gap = flux_energy_gap(profile, V, f);
        j["flux_energy_gap"] = gap;
        identities_ok = identities_ok && gap <= 1e-6;

        const auto newton = newtonian_potential(profile, V);
        j["newtonian_identity_residual"] = newton.identity_residual;
        j["newtonian_tail_bound"] = newton.tail_bound;
        identities_ok = identities_ok && newton.identity_residual <= 1e-3;

        try {
            const auto cmp = newtonian_comparison(profile, newton);
            j["comparison"] = {{"C", cmp.C},
                               {"min_margin", cmp.min_margin},
                               {"pass", cmp.pass}};
            identities_ok = identities_ok && cmp.pass;
        } catch (const std::domain_error& e) {
            j["comparison"] = {{"refused", e.what()}};
            identities_ok = false;
        }
    }

    // Seeded spot check of the quadratic form symmetry on this grid.
    {
        const auto grid = build_grid(profile.dim, profile.radius,
                                     static_cast<int>(profile.u.size()));
        const auto form = build_stiffness(grid);
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        std::vector<double> a(grid.node_count), b(grid.node_count);
        double worst = 0.0;
        for (int rep = 0; rep < 8; ++rep) {
            for (auto& x : a) x = uni(rng);
            for (auto& x : b) x = uni(rng);
            const double ab = bilinear(form, a, b), ba = bilinear(form, b, a);
            worst = std::max(worst,
                             std::fabs(ab - ba) / std::max(1.0, std::fabs(ab)));
        }
        j["form_symmetry_check"] = worst;
        identities_ok = identities_ok && worst < 1e-12;
    }

    const bool ok = !refused && identities_ok;
    j["pass"] = ok;
    write_json_file(fs::path(out_dir) / "verify_report.json", j);
    manifest.add("verify_report.json");
    manifest.set_status(ok ? "complete" : "verification-failure");
    manifest.write(timer.seconds());
    return ok ? 0 : 1;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"principal-eigenvalue curves and logistic steady states on "
                 "expanding balls"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", in_dir;
    const std::vector<std::string> names = {"validate", "eig", "curve",
                                            "solve", "sweep", "verify"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run config (JSON)")
            ->required();
        sub->add_option("--out", out_dir, "output directory");
        if (name == "verify")
            sub->add_option("--in", in_dir,
                            "directory holding solve outputs")
                ->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const auto cfg = load_config(config_path);
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "validate") return cmd_validate(cfg, config_path, out_dir);
        if (cmd == "eig") return cmd_eig(cfg, config_path, out_dir);
        if (cmd == "curve") return cmd_curve(cfg, config_path, out_dir);
        if (cmd == "solve") return cmd_solve(cfg, config_path, out_dir);
        if (cmd == "sweep") return cmd_sweep(cfg, config_path, out_dir);
        if (cmd == "verify")
            return cmd_verify(cfg, config_path, in_dir, out_dir);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace logistic
