// Command-line driver: run (optimization), eigen (lambda1 gamma-sweep),
// simulate (forward decay check), gradcheck (shape-derivative verification).
// Exit codes: 0 ok, 2 config error, 3 solver failure, 4 non-convergence with
// --require-convergence.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regionctl/field_io.hpp"
#include "regionctl/runner.hpp"

namespace {

using namespace regionctl;

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        if (end == item.c_str()) throw ConfigError("bad number in list: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// every config key is mirrored as --key <value>
void add_key_flags(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--config", c.config_path, "config file (key = value)");
    cmd->add_option("--preset", c.preset, "experiment1 | experiment2 | custom");
    static const char* keys[] = {
        "nx", "ny", "x_min", "x_max", "y_min", "y_max", "t_final", "n_steps", "d", "d1", "a",
        "r", "rho", "c0", "gamma", "K", "kernel", "kernel_constant", "local_c", "y0", "phi0",
        "sigma", "eps1", "eps2", "s0", "theta", "alpha", "beta", "maxiter", "eps_reg",
        "gmres_tol", "output_dir", "snapshot_stride", "format_version"};
    for (const char* key : keys) {
        std::string names = std::string("--") + key;
        if (std::string(key).find('_') != std::string::npos) {
            std::string dashed = key;
            for (char& ch : dashed)
                if (ch == '_') ch = '-';
            names += ",--" + dashed;
        }
        cmd->add_option_function<std::string>(
            names, [&c, key](const std::string& v) { c.overrides.emplace_back(key, v); }, key);
    }
}

RunConfig resolve(const CommonOpts& c) {
    RunConfig cfg;
    if (!c.config_path.empty()) {
        cfg = parse_config(c.config_path);
        if (!c.preset.empty() && c.preset != cfg.preset)
            throw ConfigError("--preset conflicts with the preset in the config file");
    } else {
        cfg = default_config(c.preset.empty() ? std::string("custom") : c.preset);
    }
    for (const auto& [key, value] : c.overrides) apply_config_key(cfg, key, value);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regional control of reaction-diffusion populations by level-set descent"};
    app.require_subcommand(1);

    CommonOpts run_opts, eigen_opts, sim_opts, grad_opts;
    bool require_convergence = false;
    bool emit_gnuplot = false;
    std::string sweep_axis;
    std::string sweep_values;
    std::string run_gammas;

    CLI::App* run = app.add_subcommand("run", "level-set cost descent (Algorithm 1)");
    add_key_flags(run, run_opts);
    run->add_flag("--require-convergence", require_convergence,
                  "exit 4 when the run stops at maxiter");
    run->add_flag("--emit-gnuplot", emit_gnuplot, "write a gnuplot script next to the history");
    run->add_option("--sweep", sweep_axis, "weight axis to sweep: alpha | beta");
    run->add_option("--sweep-values", sweep_values, "comma list of sweep values");
    run->add_option("--gamma-sweep", run_gammas,
                    "after the run, tabulate lambda1 over these gammas for the final region");

    std::string eigen_gammas = "0,0.5,1";
    std::string eigen_omega = "halfx";
    bool eigen_mollified = false;
    double eigen_tol = 1e-8;
    CLI::App* eig = app.add_subcommand("eigen", "principal-eigenvalue gamma sweep");
    add_key_flags(eig, eigen_opts);
    eig->add_option("--gammas", eigen_gammas, "ascending comma list of control rates");
    eig->add_option("--omega", eigen_omega, "control region: full | none | halfx | phi0");
    eig->add_flag("--mollified", eigen_mollified, "use H_sigma(phi) instead of a sharp mask");
    eig->add_option("--tol", eigen_tol, "eigenvalue tolerance");

    std::string sim_omega = "halfx";
    CLI::App* sim = app.add_subcommand("simulate", "forward system + decay-rate report");
    add_key_flags(sim, sim_opts);
    sim->add_option("--omega", sim_omega, "control region: full | none | halfx | phi0");

    int gc_directions = 5;
    double gc_step = 1e-3, gc_tol = 1e-2, gc_duality_tol = 1e-6;
    unsigned gc_seed = 42;
    CLI::App* gc = app.add_subcommand("gradcheck", "finite-difference shape-derivative check");
    add_key_flags(gc, grad_opts);
    gc->add_option("--directions", gc_directions, "number of random directions");
    gc->add_option("--step", gc_step, "finite-difference step s");
    gc->add_option("--tol", gc_tol, "directional relative tolerance");
    gc->add_option("--duality-tol", gc_duality_tol, "duality identity tolerance");
    gc->add_option("--seed", gc_seed, "direction seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            RunConfig cfg = resolve(run_opts);
            if (!sweep_axis.empty()) {
                run_weight_sweep(cfg, sweep_axis, parse_list(sweep_values));
                std::cout << "sweep finished under " << cfg.output_dir.string() << "\n";
                return 0;
            }
            OptimizationResult res = run_experiment(cfg);
            if (emit_gnuplot) write_history_plot_script(cfg.output_dir);
            std::cout << "stop: " << to_string(res.stop_reason) << " after " << res.iterations_run
                      << " iterations";
            if (!res.history.empty())
                std::cout << ", J " << format_g17(res.history.front().j_total) << " -> "
                          << format_g17(res.history.back().j_total);
            std::cout << "\noutputs in " << cfg.output_dir.string() << "\n";
            if (!run_gammas.empty()) {
                auto table =
                    run_eigen_sweep(cfg, parse_list(run_gammas), "phi0", true, 1e-8,
                                    cfg.output_dir / "eigen_sweep.csv");
                for (const auto& [gm, lam] : table)
                    std::cout << "gamma=" << gm << "  lambda1=" << format_g17(lam) << "\n";
            }
            if (require_convergence && res.stop_reason == StopReason::maxiter_reached) return 4;
            return 0;
        }
        if (eig->parsed()) {
            RunConfig cfg = resolve(eigen_opts);
            auto table = run_eigen_sweep(cfg, parse_list(eigen_gammas), eigen_omega,
                                         eigen_mollified, eigen_tol,
                                         cfg.output_dir / "eigen_sweep.csv");
            std::cout << "gamma,lambda1\n";
            for (const auto& [gm, lam] : table)
                std::cout << format_g17(gm) << ',' << format_g17(lam) << "\n";
            std::cout << "table written to " << (cfg.output_dir / "eigen_sweep.csv").string()
                      << "\n";
            return 0;
        }
        if (sim->parsed()) {
            RunConfig cfg = resolve(sim_opts);
            SimulateReport rep = run_simulate(cfg, sim_omega, cfg.output_dir / "decay.csv");
            std::cout << "lambda1 = " << format_g17(rep.lambda1)
                      << (rep.eradicable ? "  (eradicable)" : "  (not eradicable)") << "\n"
                      << "fitted decay rate of sup_x p over [T/2, T]: " << format_g17(rep.fitted_rate)
                      << "\n"
                      << "max(p - y) = " << format_g17(rep.comparison_gap)
                      << ", max(h - cap) = " << format_g17(rep.h_bound_gap) << "\n"
                      << "sup_x p(T) = " << format_g17(rep.final_sup_p) << "\n";
            return 0;
        }
        if (gc->parsed()) {
            RunConfig cfg = grad_opts.config_path.empty() && grad_opts.preset.empty()
                                ? default_config("experiment1")
                                : resolve(grad_opts);
            if (grad_opts.config_path.empty() && grad_opts.preset.empty()) {
                // bare gradcheck: compact verification fixture
                apply_config_key(cfg, "nx", "18");
                apply_config_key(cfg, "ny", "18");
                apply_config_key(cfg, "n_steps", "18");
                apply_config_key(cfg, "gmres_tol", "1e-10");
                apply_config_key(cfg, "alpha", "1");
                apply_config_key(cfg, "beta", "0");
                apply_config_key(cfg, "sigma", "5e-2");  // resolved on the 18^2 grid
                for (const auto& [key, value] : grad_opts.overrides)
                    apply_config_key(cfg, key, value);
                cfg.validate();
            }
            GradCheckReport rep =
                run_gradcheck(cfg, gc_directions, gc_step, gc_tol, gc_duality_tol, gc_seed);
            for (std::size_t d = 0; d < rep.rel_errors.size(); ++d)
                std::cout << "direction " << d << ": relative error "
                          << format_g17(rep.rel_errors[d]) << "\n";
            std::cout << "duality identity relative mismatch: " << format_g17(rep.duality_rel)
                      << "\n"
                      << (rep.pass ? "PASS" : "FAIL") << "\n";
            return rep.pass ? 0 : 4;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
