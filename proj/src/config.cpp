#include "regionctl/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "regionctl/presets.hpp"

namespace regionctl {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
    return static_cast<int>(x);
}

}  // namespace

void RunConfig::validate() const {
    if (nx < 3 || ny < 3) throw ConfigError("key 'nx'/'ny': need at least 3 nodes per axis");
    if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min))
        throw ConfigError("domain bounds are degenerate");
    if (!(t_final > 0.0)) throw ConfigError("key 't_final': must be > 0");
    if (n_steps < 1) throw ConfigError("key 'n_steps': must be >= 1");
    if (!(d2 > 0.0) || !(d1 > 0.0)) throw ConfigError("diffusion coefficients must be > 0");
    if (!(a > 0.0)) throw ConfigError("key 'a': must be > 0");
    if (!(r > 0.0) || !(rho > 0.0)) throw ConfigError("keys 'r','rho': must be > 0");
    if (!(c0 > 0.0)) throw ConfigError("key 'c0': must be > 0");
    if (gamma < 0.0) throw ConfigError("key 'gamma': must be >= 0");
    if (!solve_K && !(K_value > 0.0)) throw ConfigError("key 'K': must be > 0 or 'solve'");
    if (kernel.empty()) throw ConfigError("missing key 'kernel' (required for preset=custom)");
    if (kernel != "experiment1" && kernel != "experiment2" && kernel != "constant" &&
        kernel != "local")
        throw ConfigError("key 'kernel': unknown kernel '" + kernel + "'");
    if (kernel == "constant" && kernel_constant < 0.0)
        throw ConfigError("key 'kernel_constant': must be >= 0");
    if (kernel == "local" && local_c < 0.0) throw ConfigError("key 'local_c': must be >= 0");
    if (y0_value < 0.0) throw ConfigError("key 'y0': must be >= 0");
    if (phi0_name != "experiment" && phi0_name != "halfplane")
        throw ConfigError("key 'phi0': unknown choice '" + phi0_name + "'");
    if (!(sigma > 0.0)) throw ConfigError("key 'sigma': must be > 0");
    if (!(eps1 > 0.0) || !(eps2 > 0.0)) throw ConfigError("keys 'eps1','eps2': must be > 0");
    if (s0 < 0.0) throw ConfigError("key 's0': must be > 0 (or omitted for dx^2)");
    if (theta < 0.0 || alpha < 0.0 || beta < 0.0)
        throw ConfigError("cost weights theta/alpha/beta must be >= 0");
    if (maxiter < 1) throw ConfigError("key 'maxiter': must be >= 1");
    if (eps_reg < 0.0) throw ConfigError("key 'eps_reg': must be > 0 (or 'auto')");
    if (!(gmres_tol > 0.0)) throw ConfigError("key 'gmres_tol': must be > 0");
    if (snapshot_stride < 1) throw ConfigError("key 'snapshot_stride': must be >= 1");
}

RunConfig default_config(const std::string& preset) {
    RunConfig c;  // struct defaults are the §4 scalar values
    c.preset = preset;
    if (preset == "experiment1") {
        c.kernel = "experiment1";
        c.s0 = 1e-5;
    } else if (preset == "experiment2") {
        c.kernel = "experiment2";
        c.s0 = 1e-60;
    } else if (preset == "custom") {
        // kernel intentionally left empty: must be specified
    } else {
        throw ConfigError("key 'preset': unknown preset '" + preset + "'");
    }
    return c;
}

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "preset") return;  // consumed before overlay
    if (key == "nx") cfg.nx = to_int(key, value);
    else if (key == "ny") cfg.ny = to_int(key, value);
    else if (key == "x_min") cfg.bounds.x_min = to_double(key, value);
    else if (key == "x_max") cfg.bounds.x_max = to_double(key, value);
    else if (key == "y_min") cfg.bounds.y_min = to_double(key, value);
    else if (key == "y_max") cfg.bounds.y_max = to_double(key, value);
    else if (key == "t_final") cfg.t_final = to_double(key, value);
    else if (key == "n_steps") cfg.n_steps = to_int(key, value);
    else if (key == "d") cfg.d2 = to_double(key, value);
    else if (key == "d1") cfg.d1 = to_double(key, value);
    else if (key == "a") cfg.a = to_double(key, value);
    else if (key == "r") cfg.r = to_double(key, value);
    else if (key == "rho") cfg.rho = to_double(key, value);
    else if (key == "c0") cfg.c0 = to_double(key, value);
    else if (key == "gamma") cfg.gamma = to_double(key, value);
    else if (key == "K") {
        if (value == "solve") {
            cfg.solve_K = true;
        } else {
            cfg.solve_K = false;
            cfg.K_value = to_double(key, value);
        }
    } else if (key == "kernel") cfg.kernel = value;
    else if (key == "kernel_constant") cfg.kernel_constant = to_double(key, value);
    else if (key == "local_c") cfg.local_c = to_double(key, value);
    else if (key == "y0") cfg.y0_value = to_double(key, value);
    else if (key == "phi0") cfg.phi0_name = value;
    else if (key == "sigma") cfg.sigma = to_double(key, value);
    else if (key == "eps1") cfg.eps1 = to_double(key, value);
    else if (key == "eps2") cfg.eps2 = to_double(key, value);
    else if (key == "s0") cfg.s0 = to_double(key, value);
    else if (key == "theta") cfg.theta = to_double(key, value);
    else if (key == "alpha") cfg.alpha = to_double(key, value);
    else if (key == "beta") cfg.beta = to_double(key, value);
    else if (key == "maxiter") cfg.maxiter = to_int(key, value);
    else if (key == "eps_reg") cfg.eps_reg = (value == "auto") ? 0.0 : to_double(key, value);
    else if (key == "gmres_tol") cfg.gmres_tol = to_double(key, value);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "snapshot_stride") cfg.snapshot_stride = to_int(key, value);
    else if (key == "format_version") cfg.format_version = value;
    else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            continue;  // sections organize the file; keys are flat
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }

    std::string preset = "custom";
    if (auto it = kv.find("preset"); it != kv.end()) preset = it->second;
    RunConfig cfg = default_config(preset);
    for (const auto& [key, value] : kv) apply_config_key(cfg, key, value);
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::shared_ptr<const InteractionOperator> build_interaction(const RunConfig& cfg, const Grid& g) {
    if (cfg.kernel == "experiment1")
        return std::make_shared<InteractionOperator>(
            InteractionOperator::nonlocal(g, presets::experiment1_kernel));
    if (cfg.kernel == "experiment2")
        return std::make_shared<InteractionOperator>(
            InteractionOperator::nonlocal(g, presets::experiment2_kernel));
    if (cfg.kernel == "constant") {
        const double v = cfg.kernel_constant;
        return std::make_shared<InteractionOperator>(InteractionOperator::nonlocal(
            g, [v](double, double, double, double) { return v; }));
    }
    if (cfg.kernel == "local")
        return std::make_shared<InteractionOperator>(
            InteractionOperator::local(ScalarField(g, cfg.local_c)));
    throw ConfigError("key 'kernel': unknown kernel '" + cfg.kernel + "'");
}

ScalarField build_phi0(const RunConfig& cfg, const Grid& g) {
    if (cfg.phi0_name == "experiment") return presets::initial_level_set_field(g);
    if (cfg.phi0_name == "halfplane") {
        const double mid = 0.5 * (g.bounds().x_min + g.bounds().x_max);
        return ScalarField::sample(g, [mid](double x, double) { return mid - x; });
    }
    throw ConfigError("key 'phi0': unknown choice '" + cfg.phi0_name + "'");
}

ResolvedRun build_run(const RunConfig& cfg) {
    cfg.validate();
    Grid g(cfg.nx, cfg.ny, cfg.bounds);
    auto B = build_interaction(cfg, g);

    TimeScheme ts{cfg.t_final / cfg.n_steps, cfg.n_steps, cfg.gmres_tol};
    SystemParams params(cfg.d1, cfg.d2, ScalarField(g, cfg.r), ScalarField(g, cfg.rho),
                        ScalarField(g, cfg.a), cfg.c0, cfg.gamma, B, ScalarField(g, 0.0));

    OptimizerConfig opt(ts, std::move(params), build_phi0(cfg, g), ScalarField(g, cfg.y0_value));
    opt.maxiter = cfg.maxiter;
    opt.eps1 = cfg.eps1;
    opt.eps2 = cfg.eps2;
    opt.s0 = cfg.s0;
    opt.sigma = cfg.sigma;
    opt.weights = CostWeights{cfg.theta, cfg.alpha, cfg.beta};
    if (!cfg.solve_K) opt.K = ScalarField(g, cfg.K_value);
    opt.eps_reg = cfg.eps_reg;
    opt.snapshot_stride = cfg.snapshot_stride;

    return ResolvedRun{g, B, std::move(opt)};
}

}  // namespace regionctl
