#include "tactoid/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "tactoid/parallel.hpp"
#include "tactoid/report_io.hpp"

namespace tactoid::cli {

namespace {

ordered_json config_json(const RunConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["curve"] = c.curve_path;
    j["builtin"] = c.builtin;
    j["grid"] = {{"nx", c.nx}, {"ny", c.ny}};
    j["samples"] = c.samples;
    j["tol"] = c.tol;
    j["opt_tol"] = c.opt_tol;
    j["v"] = c.v;
    j["eps"] = c.eps_list;
    j["v_list"] = c.v_list;
    j["r_list"] = c.r_list;
    j["K"] = c.K;
    j["max_iter"] = c.max_iter;
    j["diag_n"] = c.diag_n;
    j["functional"] = c.functional;
    j["sweep"] = c.sweep;
    j["out"] = c.out_dir;
    j["plots"] = c.plots;
    j["serial"] = c.serial;
    j["fail_on_divergence"] = c.fail_on_divergence;
    j["optimize_sweep"] = c.optimize_sweep;
    j["seed"] = c.seed;
    return j;
}

GraphCurve load_curve(const RunConfig& c) {
    if (!c.builtin.empty()) {
        GraphCurve g = make_builtin(c.builtin);
        return g;
    }
    if (c.curve_path.empty())
        throw Error(ErrorKind::domain_error,
                    "either --curve or --builtin is required");
    if (c.curve_path.size() > 9 &&
        c.curve_path.substr(c.curve_path.size() - 9) == ".spectral")
        return read_curve_spectral(c.curve_path);
    return read_curve_csv(c.curve_path);
}

void write_meta(const RunConfig& c, const std::string& dir) {
    // timestamps live in the sidecar so the reports stay byte-identical
    ordered_json meta;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    meta["unix_time"] =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    meta["threads"] = par::max_threads();
    write_json(meta, dir + "/run_meta.json");
    (void)c;
}

void emit_error(ErrorKind kind, const std::string& msg) {
    ordered_json e;
    e["error"] = to_string(kind);
    e["message"] = msg;
    std::cerr << e.dump() << "\n";
}

std::vector<double> default_r_list(double diam) {
    std::vector<double> r;
    for (int k = 1; k <= 7; ++k)
        r.push_back(diam / static_cast<double>(1 << k));
    return r;
}

FunctionalId parse_functional(const std::string& s) {
    if (s == "E") return FunctionalId::E;
    if (s == "Ev" || s == "E_v") return FunctionalId::Ev;
    if (s == "E0") return FunctionalId::E0;
    throw Error(ErrorKind::domain_error, "unknown functional: " + s);
}

int run_checked(const RunConfig& cfg) {
    const std::string dir = cfg.out_dir;
    std::filesystem::create_directories(dir);
    const ordered_json jcfg = config_json(cfg);
    write_meta(cfg, dir);

    SolveOptions solver;
    solver.tolerance = cfg.tol;

    if (cfg.command == "baseline") {
        const BaselineReport b = baseline_gamma0();
        ordered_json j = to_json(b);
        j["config"] = jcfg;
        write_json(j, dir + "/baseline.json");
        return 0;
    }

    if (cfg.command == "solve") {
        const GraphCurve curve = load_curve(cfg);
        const AngleField f = solve_harmonic(curve, cfg.nx, cfg.ny, solver);
        write_field_csv(f.grid, dir + "/field.csv");
        ordered_json meta;
        meta["config"] = jcfg;
        meta["grid"] = {{"nx", f.grid.nx},
                        {"ny", f.grid.ny},
                        {"clip_left", f.grid.clip_left},
                        {"clip_right", f.grid.clip_right},
                        {"cg_iterations", f.grid.cg_iterations},
                        {"cg_residual", f.grid.cg_residual}};
        meta["dirichlet_energy"] = dirichlet_energy(f);
        meta["green_identity_defect"] = green_identity_defect(f);
        write_json(meta, dir + "/field_meta.json");
        return 0;
    }

    if (cfg.command == "energy") {
        const GraphCurve curve = load_curve(cfg);
        TotalEnergyOptions opts;
        opts.probe_divergence = true;
        opts.solver = solver;
        const EnergyReport r = total_energy(curve, cfg.nx, cfg.ny, opts);
        ordered_json j = to_json(r);
        j["config"] = jcfg;
        write_json(j, dir + "/energy.json");
        if (r.divergent && cfg.fail_on_divergence) return 3;
        return 0;
    }

    if (cfg.command == "optimize") {
        OptimConfig oc;
        oc.functional = parse_functional(cfg.functional);
        oc.v = cfg.v;
        oc.K = cfg.K;
        oc.nx = cfg.nx;
        oc.ny = cfg.ny;
        oc.curve_samples = cfg.samples;
        oc.tol = cfg.opt_tol;
        oc.max_iter = cfg.max_iter;
        oc.seed = cfg.seed;
        oc.solver = solver;
        oc.checkpoint_every = cfg.checkpoint_every;
        oc.checkpoint_dir = dir;
        ShapeParams start;
        if (!cfg.builtin.empty() || !cfg.curve_path.empty())
            start = fit_params(load_curve(cfg), cfg.K);
        else {
            start.coeff.assign(cfg.K, 0.0);
            start.coeff[0] = 1.0;
        }
        const OptimResult res = minimize(start, oc);
        ordered_json j = to_json(res);
        j["config"] = jcfg;
        write_json(j, dir + "/optim.json");
        write_curve_csv(curve_from_params(res.params, cfg.samples),
                        dir + "/curve_final.csv");
        write_curve_spectral(curve_from_params(res.params, cfg.samples),
                             dir + "/curve_final.spectral");
        return 0;
    }

    if (cfg.command == "diagnose") {
        const GraphCurve curve = load_curve(cfg);
        const ParametricCurve pc = to_parametric(curve, cfg.diag_n);
        std::vector<double> rs = cfg.r_list;
        if (rs.empty()) {
            double diam = 2.0 * curve.a;
            rs = default_r_list(diam);
        }
        const DiagnosticsReport rep = diagnose(pc, rs);
        ordered_json j = to_json(rep);
        j["config"] = jcfg;
        write_json(j, dir + "/diagnostics.json");
        write_rtable_csv(rep.vanishing_modulus, dir + "/vanishing_modulus.csv");
        write_rtable_csv(rep.cusp.left, dir + "/cusp_left.csv");
        write_rtable_csv(rep.cusp.right, dir + "/cusp_right.csv");
        write_rtable_csv(rep.vmo, dir + "/vmo.csv");
        return 0;
    }

    if (cfg.command == "asymptotics") {
        SweepOptions so;
        so.nx = cfg.nx;
        so.ny = cfg.ny;
        so.solver = solver;
        so.optimize = cfg.optimize_sweep;
        SweepResult s;
        std::string name = cfg.sweep;
        if (name == "large") {
            std::vector<double> vs = cfg.v_list;
            if (vs.empty()) vs = {1e4, 1e5, 1e6, 1e7, 1e8};
            s = large_volume_sweep(vs, so);
        } else if (name == "small") {
            std::vector<double> es = cfg.eps_list;
            if (es.empty()) es = {0.2, 0.1, 0.05, 0.025};
            s = small_volume_sweep(es, so);
        } else if (name == "gamma") {
            std::vector<double> es = cfg.eps_list;
            if (es.empty()) es = {0.2, 0.1, 0.05, 0.025};
            GraphCurve curve = cfg.builtin.empty() && cfg.curve_path.empty()
                                   ? make_profile_g()
                                   : load_curve(cfg);
            s = gamma_convergence_table(curve, es, so);
        } else {
            throw Error(ErrorKind::domain_error, "unknown sweep: " + name);
        }
        ordered_json j = to_json(s);
        j["config"] = jcfg;
        write_json(j, dir + "/sweep.json");
        write_sweep_csv(s, dir + "/sweep.csv");
        if (cfg.plots)
            write_loglog_svg(s.params, s.gaps, "sweep " + name,
                             s.fitted_exponent, dir + "/sweep.svg");
        return 0;
    }

    throw Error(ErrorKind::domain_error, "unknown command: " + cfg.command);
}

}  // namespace

int run(const RunConfig& cfg) {
    par::set_serial(cfg.serial);
    try {
        return run_checked(cfg);
    } catch (const Error& e) {
        emit_error(e.kind(), e.what());
        switch (e.kind()) {
            case ErrorKind::solver_failure:
            case ErrorKind::degenerate_domain:
                return 2;
            default:
                return 1;
        }
    } catch (const std::exception& e) {
        emit_error(ErrorKind::io_error, e.what());
        return 1;
    }
}

int main_entry(int argc, char** argv) {
    CLI::App app{"tactoid: 2-D liquid-crystal droplet shape optimization"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string grid = "257x65";
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--curve", cfg.curve_path, "curve CSV or .spectral file");
        sub->add_option("--builtin", cfg.builtin,
                        "gamma0|semicircle|cosine|cusped:EPS|profile_g");
        sub->add_option("--grid", grid, "field grid NXxNY");
        sub->add_option("--tol", cfg.tol, "solver relative residual");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--samples", cfg.samples, "curve sample count");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_flag("--plots", cfg.plots, "emit SVG plots");
        sub->add_flag("--serial", cfg.serial, "force deterministic serial mode");
    };

    auto* solve = app.add_subcommand("solve", "solve the harmonic angle field");
    add_common(solve);
    auto* energy = app.add_subcommand("energy", "total energy with refinement probe");
    add_common(energy);
    energy->add_flag("--fail-on-divergence", cfg.fail_on_divergence,
                     "exit 3 when the divergence flag is raised");
    auto* optimize = app.add_subcommand("optimize", "minimize a droplet functional");
    add_common(optimize);
    optimize->add_option("--functional", cfg.functional, "E|Ev|E0");
    optimize->add_option("--v", cfg.v, "volume parameter");
    optimize->add_option("--K", cfg.K, "basis truncation order");
    optimize->add_option("--opt-tol", cfg.opt_tol, "gradient norm tolerance");
    optimize->add_option("--max-iter", cfg.max_iter, "iteration cap");
    optimize->add_option("--checkpoint-every", cfg.checkpoint_every,
                         "write curve checkpoints every N iterations");
    auto* diagnose = app.add_subcommand("diagnose", "geometric diagnostics");
    add_common(diagnose);
    diagnose->add_option("--n", cfg.diag_n, "arc-length sample count");
    diagnose->add_option("--r", cfg.r_list, "radius list")->delimiter(',');
    auto* asym = app.add_subcommand("asymptotics", "large/small volume sweeps");
    add_common(asym);
    asym->add_option("--sweep", cfg.sweep, "large|small|gamma");
    asym->add_option("--eps", cfg.eps_list, "eps list")->delimiter(',');
    asym->add_option("--v-list", cfg.v_list, "volume list")->delimiter(',');
    asym->add_flag("--optimize", cfg.optimize_sweep, "optimize at each sweep point");
    auto* baseline = app.add_subcommand("baseline", "explicit baseline configuration");
    add_common(baseline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    cfg.command = app.get_subcommands().front()->get_name();
    const auto xpos = grid.find('x');
    if (xpos == std::string::npos) {
        emit_error(ErrorKind::domain_error, "grid must be NXxNY");
        return 1;
    }
    try {
        cfg.nx = std::stoul(grid.substr(0, xpos));
        cfg.ny = std::stoul(grid.substr(xpos + 1));
    } catch (const std::exception&) {
        emit_error(ErrorKind::domain_error, "grid must be NXxNY");
        return 1;
    }
    if (const char* env = std::getenv("TACTOID_OUT")) cfg.out_dir = env;
    if (!(cfg.tol > 0.0) || cfg.nx < 3 || cfg.ny < 3 || !(cfg.v > 0.0)) {
        emit_error(ErrorKind::domain_error, "numeric options must be positive");
        return 1;
    }
    for (double e : cfg.eps_list)
        if (!(e > 0.0)) {
            emit_error(ErrorKind::domain_error, "eps values must be positive");
            return 1;
        }
    return run(cfg);
}

}  // namespace tactoid::cli
