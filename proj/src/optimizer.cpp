#include "regionctl/optimizer.hpp"

#include <cmath>
#include <string>

#include "regionctl/elliptic.hpp"
#include "regionctl/mollifier.hpp"

namespace regionctl {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::cost_converged: return "cost_converged";
        case StopReason::shape_converged: return "shape_converged";
        case StopReason::maxiter_reached: return "maxiter_reached";
    }
    return "?";
}

void OptimizerConfig::validate() const {
    if (maxiter < 1) throw ConfigError("maxiter must be >= 1");
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw ConfigError("eps1, eps2 must be > 0");
    if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
    if (weights.theta < 0.0 || weights.alpha < 0.0 || weights.beta < 0.0)
        throw ConfigError("cost weights must be >= 0");
    if (!(resolved_s0() > 0.0)) throw ConfigError("s0 must be > 0");
    if (snapshot_stride < 1) throw ConfigError("snapshot stride must be >= 1");
}

double OptimizerConfig::resolved_s0() const {
    if (s0 > 0.0) return s0;
    const double dx = phi0.grid().dx();
    return dx * dx;
}

double OptimizerConfig::resolved_eps_reg() const {
    if (eps_reg > 0.0) return eps_reg;
    const Grid& g = phi0.grid();
    return 1e-8 * g.bounds().diameter() / g.dx();
}

StopDecision check_stopping(double prev_J, double cur_J, const ScalarField& prev_phi,
                            const ScalarField& cur_phi, int next_iter,
                            const OptimizerConfig& cfg) {
    if (std::abs(cur_J - prev_J) < cfg.eps1) return {true, StopReason::cost_converged};
    ScalarField diff(prev_phi.grid());
    for (int k = 0; k < diff.size(); ++k) diff[k] = cur_phi[k] - prev_phi[k];
    const double area = prev_phi.grid().bounds().area();
    if (l2_norm(diff) / area < cfg.eps2) return {true, StopReason::shape_converged};
    if (next_iter > cfg.maxiter) return {true, StopReason::maxiter_reached};
    return {};
}

OptimizationResult run_optimization(const OptimizerConfig& cfg) {
    cfg.validate();
    const Grid& g = cfg.phi0.grid();
    const double s0 = cfg.resolved_s0();
    const double eps_reg = cfg.resolved_eps_reg();
    const double area = g.bounds().area();

    OptimizationResult res;
    auto abort_with = [&res](const SolverFailure& e) {
        return OptimizationAbort(std::string("optimization aborted: ") + e.what(), std::move(res));
    };

    ScalarField K = cfg.K ? *cfg.K
                          : solve_logistic_steady(cfg.params.r, cfg.params.rho, cfg.params.d1,
                                                  1e-10);

    ScalarField phi = cfg.phi0;
    res.phi_snapshots.emplace_back(0, phi);
    double prev_J = 1e30;  // Step 3: "a large value for J^(0)"

    try {
        for (int iter = 1; iter <= cfg.maxiter; ++iter) {
            SystemParams params = cfg.params;
            params.m = heaviside_field(phi, cfg.sigma);
            LevelSet ls(phi, cfg.sigma);

            Trajectory y = solve_state(params, cfg.y0, K, cfg.ts);
            CostBreakdown J = cost_components(ls, y, K, *params.B, cfg.weights);
            res.history.push_back(J);
            res.iterations_run = iter;
            res.y_final = y.back();

            if (std::abs(J.j_total - prev_J) < cfg.eps1) {
                res.stop_reason = StopReason::cost_converged;
                break;
            }

            Trajectory r = solve_adjoint(params, phi, cfg.sigma, K, cfg.ts);
            res.r_initial = r.front();
            ScalarField ry = ry_time_integral(r, y);
            LevelSet next =
                descent_step(ls, ry, cfg.weights, params.gamma, s0, eps_reg, cfg.ts.krylov_tol);

            ScalarField diff(g);
            for (int k = 0; k < g.size(); ++k) diff[k] = next.phi[k] - phi[k];
            const double shape_norm = l2_norm(diff) / area;

            phi = next.phi;
            if (iter % cfg.snapshot_stride == 0) res.phi_snapshots.emplace_back(iter, phi);

            if (shape_norm < cfg.eps2) {
                res.stop_reason = StopReason::shape_converged;
                break;
            }
            if (iter == cfg.maxiter) {
                res.stop_reason = StopReason::maxiter_reached;
                break;
            }
            prev_J = J.j_total;
        }
    } catch (const OptimizationAbort&) {
        throw;
    } catch (const SolverFailure& e) {
        res.phi_final = phi;
        throw abort_with(e);
    }

    res.phi_final = phi;
    if (res.phi_snapshots.empty() || res.phi_snapshots.back().first != res.iterations_run)
        res.phi_snapshots.emplace_back(res.iterations_run, phi);
    return res;
}

}  // namespace regionctl
