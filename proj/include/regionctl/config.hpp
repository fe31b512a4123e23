#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>

#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"
#include "regionctl/optimizer.hpp"

namespace regionctl {

/// Fully resolved run description: preset defaults overlaid with explicit keys.
/// All §4 quantities are plain keys; coefficient fields are spatially constant
/// at the configuration surface (arbitrary fields remain available through the
/// library API).
struct RunConfig {
    std::string preset = "custom";

    int nx = 36, ny = 36;
    Rect bounds{};

    double t_final = 1.0;
    int n_steps = 36;

    double d2 = 1e-2, d1 = 1e-2;
    double a = 1.0, r = 1.0, rho = 2.0;
    double c0 = 1.0, gamma = 1.0;

    bool solve_K = false;
    double K_value = 1.0;

    std::string kernel;  // experiment1 | experiment2 | constant | local
    double kernel_constant = 1.0;
    double local_c = 1.0;

    double y0_value = 1.0;
    std::string phi0_name = "experiment";  // experiment | halfplane

    double sigma = 1e-2, eps1 = 1e-4, eps2 = 1e-5;
    double s0 = 0.0;  // 0 -> dx^2
    double theta = 1.0, alpha = 100.0, beta = 0.1;
    int maxiter = 50;

    double eps_reg = 0.0;  // 0 -> auto (1e-8 * diam / dx)
    double gmres_tol = 1e-8;

    std::filesystem::path output_dir = "out";
    int snapshot_stride = 1;
    std::string format_version = "1";

    void validate() const;
};

/// Preset defaults before any explicit key is applied.
RunConfig default_config(const std::string& preset);

/// Applies one key=value pair; throws ConfigError on unknown keys or bad values.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Flat key=value file with '#'/';' comments; `[section]` headers are accepted
/// as organizational no-ops. The `preset` key (default custom) selects the
/// defaults; every other key overrides them. Unknown keys are hard errors.
RunConfig parse_config(const std::filesystem::path& path);

RunConfig parse_config_text(const std::string& text);

/// Materialized problem data built from a RunConfig.
struct ResolvedRun {
    Grid grid;
    std::shared_ptr<const InteractionOperator> B;
    OptimizerConfig opt;
};

ResolvedRun build_run(const RunConfig& cfg);

std::shared_ptr<const InteractionOperator> build_interaction(const RunConfig& cfg, const Grid& g);
ScalarField build_phi0(const RunConfig& cfg, const Grid& g);

}  // namespace regionctl
