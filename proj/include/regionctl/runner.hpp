#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "regionctl/config.hpp"
#include "regionctl/optimizer.hpp"
#include "regionctl/spectral.hpp"

namespace regionctl {

/// Full optimization run: writes cost_history.csv (iter, J_damage, J_area,
/// J_perimeter, J), phi snapshots at the configured stride, the final state
/// y(T) and adjoint r(0) fields, and summary.json into cfg.output_dir.
OptimizationResult run_experiment(const RunConfig& cfg);

/// Fans out one run per weight value (axis "alpha" or "beta") into
/// per-(alpha,beta) subdirectories of cfg.output_dir. Runs execute in
/// parallel; each run's outputs stay deterministic.
void run_weight_sweep(const RunConfig& cfg, const std::string& axis,
                      const std::vector<double>& values);

/// Named control-region indicator: "full", "none", "halfx", or "phi0"
/// (thresholded initial level set; mollified == H_sigma instead of {0,1}).
ScalarField make_indicator(const RunConfig& cfg, const Grid& g, const std::string& omega,
                           bool mollified);

/// lambda1 per gamma for the given indicator; optionally writes gamma,lambda1
/// CSV (the eradicability table of the decay theorem).
std::vector<std::pair<double, double>> run_eigen_sweep(
    const RunConfig& cfg, const std::vector<double>& gammas, const std::string& omega,
    bool mollified, double tol, const std::optional<std::filesystem::path>& csv_path);

struct SimulateReport {
    double lambda1 = 0.0;
    double fitted_rate = 0.0;
    bool eradicable = false;
    double comparison_gap = 0.0;  // max over nodes/steps of p - y
    double h_bound_gap = 0.0;     // max over nodes/steps of h - max(h0, K)
    double final_sup_p = 0.0;
};

/// Forward solve of the full feedback-controlled system plus the linear bound
/// system; fits the exponential decay rate of sup_x p over [T/2, T] and
/// reports it against lambda1. Writes decay.csv (t, sup_p, sup_y) when a path
/// is given.
SimulateReport run_simulate(const RunConfig& cfg, const std::string& omega,
                            const std::optional<std::filesystem::path>& csv_path);

struct GradCheckReport {
    std::vector<double> rel_errors;  // per direction
    double duality_rel = 0.0;
    double fd_step = 0.0;
    bool pass = false;
};

/// Finite-difference verification of the shape derivative: for n seeded
/// Neumann-compatible directions psi compares <G, psi> against
/// (J(phi + s psi) - J(phi)) / s, and checks the damage duality identity.
GradCheckReport run_gradcheck(const RunConfig& cfg, int n_directions, double fd_step,
                              double tol_directional, double tol_duality, unsigned seed = 42);

/// Least-squares slope of log(values) over times[t >= t_lo]; returns -slope.
double fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                      double t_lo);

/// Deterministic smooth direction with zero normal derivative on the boundary
/// (cosine modes up to order 3), normalized to unit sup norm.
ScalarField random_neumann_direction(const Grid& g, unsigned seed);

/// Optional gnuplot companion script for cost_history.csv.
void write_history_plot_script(const std::filesystem::path& dir);

}  // namespace regionctl
