#include "regionctl/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <random>

#include <json.hpp>

#include "regionctl/elliptic.hpp"
#include "regionctl/field_io.hpp"
#include "regionctl/mollifier.hpp"
#include "regionctl/presets.hpp"

namespace regionctl {

namespace {

std::string iter_tag(int iter) { return "iter=" + std::to_string(iter); }

std::string snapshot_name(int iter) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "phi_iter_%04d.csv", iter);
    return buf;
}

void write_history(const std::vector<CostBreakdown>& history, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << "# iter,J_damage,J_area,J_perimeter,J\n";
    for (std::size_t k = 0; k < history.size(); ++k) {
        const CostBreakdown& c = history[k];
        out << (k + 1) << ',' << format_g17(c.j_damage) << ',' << format_g17(c.j_area) << ','
            << format_g17(c.j_perimeter) << ',' << format_g17(c.j_total) << '\n';
    }
}

void write_summary(const RunConfig& cfg, const OptimizationResult& res,
                   const std::filesystem::path& path) {
    nlohmann::json j;
    j["preset"] = cfg.preset;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["gamma"] = cfg.gamma;
    j["sigma"] = cfg.sigma;
    j["s0"] = cfg.s0;
    j["maxiter"] = cfg.maxiter;
    j["stop_reason"] = to_string(res.stop_reason);
    j["iterations_run"] = res.iterations_run;
    if (!res.history.empty()) {
        j["J_initial"] = res.history.front().j_total;
        j["J_final"] = res.history.back().j_total;
    }
    j["format_version"] = cfg.format_version;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace

OptimizationResult run_experiment(const RunConfig& cfg) {
    ResolvedRun run = build_run(cfg);
    std::filesystem::create_directories(cfg.output_dir);

    OptimizationResult res;
    try {
        res = run_optimization(run.opt);
    } catch (OptimizationAbort& e) {
        // keep what we have for post-mortem, then re-throw
        write_history(e.partial().history, cfg.output_dir / "cost_history.csv");
        throw;
    }

    write_history(res.history, cfg.output_dir / "cost_history.csv");
    for (const auto& [iter, phi] : res.phi_snapshots)
        dump_field(phi, FieldMeta{"phi", iter_tag(iter)}, cfg.output_dir / snapshot_name(iter));
    if (res.y_final)
        dump_field(*res.y_final, FieldMeta{"y", "t=" + format_g17(cfg.t_final)},
                   cfg.output_dir / "y_final.csv");
    if (res.r_initial)
        dump_field(*res.r_initial, FieldMeta{"r", "t=0"}, cfg.output_dir / "r_initial.csv");
    write_summary(cfg, res, cfg.output_dir / "summary.json");
    return res;
}

void run_weight_sweep(const RunConfig& cfg, const std::string& axis,
                      const std::vector<double>& values) {
    if (axis != "alpha" && axis != "beta") throw ConfigError("sweep axis must be alpha or beta");
    if (values.empty()) throw ConfigError("sweep needs at least one value");

    std::vector<std::future<void>> jobs;
    jobs.reserve(values.size());
    for (double v : values) {
        RunConfig sub = cfg;
        if (axis == "alpha")
            sub.alpha = v;
        else
            sub.beta = v;
        char dir[64];
        std::snprintf(dir, sizeof(dir), "alpha%g_beta%g", sub.alpha, sub.beta);
        sub.output_dir = cfg.output_dir / dir;
        jobs.push_back(std::async(std::launch::async, [sub] { run_experiment(sub); }));
    }
    for (auto& j : jobs) j.get();
}

ScalarField make_indicator(const RunConfig& cfg, const Grid& g, const std::string& omega,
                           bool mollified) {
    if (omega == "full") return ScalarField(g, 1.0);
    if (omega == "none") return ScalarField(g, 0.0);
    if (omega == "halfx") return presets::half_domain_indicator(g);
    if (omega == "phi0") {
        ScalarField phi = build_phi0(cfg, g);
        if (mollified) return heaviside_field(phi, cfg.sigma);
        ScalarField ind(g);
        for (int k = 0; k < g.size(); ++k) ind[k] = phi[k] > 0.0 ? 1.0 : 0.0;
        return ind;
    }
    throw ConfigError("unknown omega choice '" + omega + "' (full|none|halfx|phi0)");
}

std::vector<std::pair<double, double>> run_eigen_sweep(
    const RunConfig& cfg, const std::vector<double>& gammas, const std::string& omega,
    bool mollified, double tol, const std::optional<std::filesystem::path>& csv_path) {
    cfg.validate();
    Grid g(cfg.nx, cfg.ny, cfg.bounds);
    auto B = build_interaction(cfg, g);
    ScalarField K = cfg.solve_K ? solve_logistic_steady(ScalarField(g, cfg.r),
                                                        ScalarField(g, cfg.rho), cfg.d1, 1e-10)
                                : ScalarField(g, cfg.K_value);
    EigenSetup setup(cfg.d2, ScalarField(g, cfg.a), cfg.gamma,
                     make_indicator(cfg, g, omega, mollified), cfg.c0, K, B, 0.0);
    auto table = eigen_gamma_sweep(setup, gammas, tol);
    if (csv_path) {
        std::filesystem::create_directories(csv_path->parent_path());
        std::ofstream out(*csv_path);
        if (!out) throw ConfigError("cannot open " + csv_path->string() + " for writing");
        out << "# gamma,lambda1\n";
        for (const auto& [gm, lam] : table)
            out << format_g17(gm) << ',' << format_g17(lam) << '\n';
    }
    return table;
}

double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                      double t_lo) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < t_lo || !(values[k] > 0.0)) continue;
        const double x = times[k], y = std::log(values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw SolverFailure("decay fit needs at least two positive samples");
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return -slope;
}

SimulateReport run_simulate(const RunConfig& cfg, const std::string& omega,
                            const std::optional<std::filesystem::path>& csv_path) {
    cfg.validate();
    Grid g(cfg.nx, cfg.ny, cfg.bounds);
    auto B = build_interaction(cfg, g);
    ScalarField K = cfg.solve_K ? solve_logistic_steady(ScalarField(g, cfg.r),
                                                        ScalarField(g, cfg.rho), cfg.d1, 1e-10)
                                : ScalarField(g, cfg.K_value);
    ScalarField m = make_indicator(cfg, g, omega, false);

    SimulateReport rep;
    EigenSetup setup(cfg.d2, ScalarField(g, cfg.a), cfg.gamma, m, cfg.c0, K, B, 0.0);
    rep.lambda1 = principal_eigenpair(setup, 1e-9).lambda1;
    rep.eradicable = rep.lambda1 > 0.0;

    SystemParams params(cfg.d1, cfg.d2, ScalarField(g, cfg.r), ScalarField(g, cfg.rho),
                        ScalarField(g, cfg.a), cfg.c0, cfg.gamma, B, m);
    TimeScheme ts{cfg.t_final / cfg.n_steps, cfg.n_steps, cfg.gmres_tol};

    ScalarField h0 = K;  // starts at carrying capacity (h0 <= K)
    ScalarField p0(g, cfg.y0_value);
    auto [H, P] = solve_full_system(params, h0, p0, ts);
    Trajectory Y = solve_state(params, p0, K, ts);

    const double h_cap = std::max(h0.max(), K.max());
    std::vector<double> times(ts.n_steps + 1), sup_p(ts.n_steps + 1), sup_y(ts.n_steps + 1);
    for (int n = 0; n <= ts.n_steps; ++n) {
        times[n] = n * ts.dt;
        sup_p[n] = P[n].max();
        sup_y[n] = Y[n].max();
        for (int k = 0; k < g.size(); ++k) {
            rep.comparison_gap = std::max(rep.comparison_gap, P[n][k] - Y[n][k]);
            rep.h_bound_gap = std::max(rep.h_bound_gap, H[n][k] - h_cap);
        }
    }
    rep.final_sup_p = sup_p.back();
    rep.fitted_rate = fit_decay_rate(times, sup_p, cfg.t_final / 2.0);

    if (csv_path) {
        std::filesystem::create_directories(csv_path->parent_path());
        std::ofstream out(*csv_path);
        if (!out) throw ConfigError("cannot open " + csv_path->string() + " for writing");
        out << "# t,sup_p,sup_y\n";
        for (int n = 0; n <= ts.n_steps; ++n)
            out << format_g17(times[n]) << ',' << format_g17(sup_p[n]) << ','
                << format_g17(sup_y[n]) << '\n';
    }
    return rep;
}

ScalarField random_neumann_direction(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const int order = 3;
    std::vector<double> coeff((order + 1) * (order + 1));
    for (double& c : coeff) c = unif(rng);

    const Rect& b = g.bounds();
    ScalarField psi = ScalarField::sample(g, [&](double x, double y) {
        const double xh = (x - b.x_min) / b.width();
        const double yh = (y - b.y_min) / b.height();
        double v = 0.0;
        for (int p = 0; p <= order; ++p)
            for (int q = 0; q <= order; ++q)
                v += coeff[p * (order + 1) + q] * std::cos(p * std::numbers::pi * xh) *
                     std::cos(q * std::numbers::pi * yh);
        return v;
    });
    const double mx = psi.max_abs();
    for (double& v : psi.vec()) v /= mx;
    return psi;
}

GradCheckReport run_gradcheck(const RunConfig& cfg, int n_directions, double fd_step,
                              double tol_directional, double tol_duality, unsigned seed) {
    cfg.validate();
    Grid g(cfg.nx, cfg.ny, cfg.bounds);
    auto B = build_interaction(cfg, g);
    ScalarField K = cfg.solve_K ? solve_logistic_steady(ScalarField(g, cfg.r),
                                                        ScalarField(g, cfg.rho), cfg.d1, 1e-10)
                                : ScalarField(g, cfg.K_value);
    TimeScheme ts{cfg.t_final / cfg.n_steps, cfg.n_steps, cfg.gmres_tol};
    CostWeights w{cfg.theta, cfg.alpha, cfg.beta};
    const double eps_reg =
        cfg.eps_reg > 0.0 ? cfg.eps_reg : 1e-8 * g.bounds().diameter() / g.dx();

    ScalarField phi = build_phi0(cfg, g);
    ScalarField y0(g, cfg.y0_value);

    auto evaluate = [&](const ScalarField& phi_) {
        SystemParams params(cfg.d1, cfg.d2, ScalarField(g, cfg.r), ScalarField(g, cfg.rho),
                            ScalarField(g, cfg.a), cfg.c0, cfg.gamma, B,
                            heaviside_field(phi_, cfg.sigma));
        LevelSet ls(phi_, cfg.sigma);
        Trajectory y = solve_state(params, y0, K, ts);
        CostBreakdown J = cost_components(ls, y, K, *B, w);
        return std::make_pair(std::move(y), J);
    };

    auto [y, J0] = evaluate(phi);
    SystemParams params(cfg.d1, cfg.d2, ScalarField(g, cfg.r), ScalarField(g, cfg.rho),
                        ScalarField(g, cfg.a), cfg.c0, cfg.gamma, B,
                        heaviside_field(phi, cfg.sigma));
    Trajectory r = solve_adjoint(params, phi, cfg.sigma, K, ts);
    LevelSet ls(phi, cfg.sigma);
    ScalarField G = shape_derivative_density(ls, y, r, w, cfg.gamma, eps_reg);

    GradCheckReport rep;
    rep.fd_step = fd_step;
    for (int d = 0; d < n_directions; ++d) {
        ScalarField psi = random_neumann_direction(g, seed + d);
        ScalarField phi_s(g);
        for (int k = 0; k < g.size(); ++k) phi_s[k] = phi[k] + fd_step * psi[k];
        auto [ys, Js] = evaluate(phi_s);
        const double fd = (Js.j_total - J0.j_total) / fd_step;
        const double gdot = inner(G, psi);
        rep.rel_errors.push_back(std::abs(fd - gdot) / std::abs(gdot));
    }

    // duality identity: damage response of the linearized state equals the
    // adjoint pairing, for the first direction
    {
        ScalarField psi = random_neumann_direction(g, seed);
        Trajectory z = solve_linearized(params, y, phi, psi, cfg.sigma, K, ts);
        double lhs = 0.0;
        for (int n = 0; n <= ts.n_steps; ++n) {
            ScalarField Bz = B->apply(z[n]);
            ScalarField integrand(g);
            for (int k = 0; k < g.size(); ++k) integrand[k] = K[k] * Bz[k];
            const double theta = (n == 0 || n == ts.n_steps) ? 0.5 : 1.0;
            lhs += theta * ts.dt * integrate(integrand);
        }
        ScalarField R = ry_time_integral(r, y);
        ScalarField dpsi(g);
        for (int k = 0; k < g.size(); ++k)
            dpsi[k] = mollified_delta(phi[k], cfg.sigma) * psi[k];
        const double rhs = cfg.gamma * inner(dpsi, R);
        rep.duality_rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), std::abs(rhs));
    }

    rep.pass = rep.duality_rel <= tol_duality &&
               std::all_of(rep.rel_errors.begin(), rep.rel_errors.end(),
                           [&](double e) { return e <= tol_directional; });
    return rep;
}

void write_history_plot_script(const std::filesystem::path& dir) {
    std::ofstream out(dir / "plot_history.gp");
    if (!out) throw ConfigError("cannot open plot script for writing");
    out << "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set xlabel 'iteration'\n"
           "set multiplot layout 2,2\n"
           "plot 'cost_history.csv' using 1:2 with lines title 'J_damage'\n"
           "plot 'cost_history.csv' using 1:3 with lines title 'J_area'\n"
           "plot 'cost_history.csv' using 1:4 with lines title 'J_perimeter'\n"
           "plot 'cost_history.csv' using 1:5 with lines title 'J'\n"
           "unset multiplot\n";
}

}  // namespace regionctl
