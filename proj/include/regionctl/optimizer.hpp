#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "regionctl/dynamics.hpp"
#include "regionctl/shape.hpp"

namespace regionctl {

enum class StopReason { cost_converged, shape_converged, maxiter_reached };

const char* to_string(StopReason r);

struct OptimizerConfig {
    int maxiter = 50;
    double eps1 = 1e-4;  // |J_{k+1} - J_k| tolerance
    double eps2 = 1e-5;  // ||phi_{k+1} - phi_k||_{L2} / area tolerance
    double s0 = 0.0;     // artificial-time step (0 -> dx^2)
    double sigma = 1e-2;
    CostWeights weights;
    TimeScheme ts;
    SystemParams params;  // params.m is overwritten from phi each iteration
    ScalarField phi0;
    ScalarField y0;
    std::optional<ScalarField> K;  // prescribed; otherwise solved from r, rho, d1
    double eps_reg = 0.0;          // 0 -> 1e-8 * diam(Omega) / dx
    int snapshot_stride = 1;

    OptimizerConfig(TimeScheme ts_, SystemParams params_, ScalarField phi0_, ScalarField y0_)
        : ts(ts_), params(std::move(params_)), phi0(std::move(phi0_)), y0(std::move(y0_)) {}

    void validate() const;
    double resolved_s0() const;
    double resolved_eps_reg() const;
};

struct OptimizationResult {
    std::vector<CostBreakdown> history;  // one entry per completed iteration
    std::vector<std::pair<int, ScalarField>> phi_snapshots;
    StopReason stop_reason = StopReason::maxiter_reached;
    int iterations_run = 0;
    std::optional<ScalarField> phi_final;
    std::optional<ScalarField> y_final;    // y(T) of the last state solve
    std::optional<ScalarField> r_initial;  // r(0) of the last adjoint solve
};

/// Solver failure inside the outer loop; carries the iterations completed so far.
class OptimizationAbort : public SolverFailure {
public:
    OptimizationAbort(const std::string& what, OptimizationResult partial)
        : SolverFailure(what), partial_(std::move(partial)) {}
    const OptimizationResult& partial() const { return partial_; }

private:
    OptimizationResult partial_;
};

struct StopDecision {
    bool stop = false;
    StopReason reason = StopReason::maxiter_reached;
};

/// Ordered stopping test: cost criterion, then shape criterion, then maxiter.
/// `next_iter` is the 1-based index of the iteration that would run next.
StopDecision check_stopping(double prev_J, double cur_J, const ScalarField& prev_phi,
                            const ScalarField& cur_phi, int next_iter,
                            const OptimizerConfig& cfg);

/// The outer descent loop updating phi: state solve, cost, cost test, adjoint
/// solve, descent step, shape + maxiter test. J^{(0)} starts at a large
/// sentinel so the cost criterion cannot fire on the first pass.
OptimizationResult run_optimization(const OptimizerConfig& cfg);

}  // namespace regionctl
