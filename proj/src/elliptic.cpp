#include "regionctl/elliptic.hpp"

#include <cmath>

#include "regionctl/gmres.hpp"

namespace regionctl {

namespace {

// out = -d Lap(v) + eta v - scale K (B v), on raw vectors
struct EllipticApply {
    const Grid& g;
    double d;
    const ScalarField& eta;
    const EllipticProblem::Coupling* coupling;

    void operator()(const std::vector<double>& in, std::vector<double>& out) const {
        ScalarField v(g);
        v.vec() = in;
        ScalarField lap = apply_neumann_laplacian(v);
        out.resize(in.size());
        for (int k = 0; k < g.size(); ++k) out[k] = -d * lap[k] + eta[k] * in[k];
        if (coupling) {
            ScalarField bv = coupling->B->apply(v);
            for (int k = 0; k < g.size(); ++k) out[k] -= coupling->scale * coupling->K[k] * bv[k];
        }
    }
};

}  // namespace

ScalarField solve_linear_elliptic(const EllipticProblem& p, double tol) {
    const Grid& g = p.eta.grid();
    EllipticApply A{g, p.d, p.eta, p.coupling ? &*p.coupling : nullptr};
    ScalarField psi(g);
    GmresOptions opts;
    opts.tol = tol;
    GmresInfo info = gmres_solve([&A](const std::vector<double>& in,
                                      std::vector<double>& out) { A(in, out); },
                                 p.rhs.vec(), psi.vec(), opts);
    if (!info.converged)
        throw SolverFailure("elliptic solve did not converge (rel residual " +
                                std::to_string(info.rel_residual) + ")",
                            info.rel_residual);
    require_finite(psi, "elliptic solve");
    return psi;
}

ScalarField solve_logistic_steady(const ScalarField& r, const ScalarField& rho, double d1,
                                  double tol) {
    const Grid& g = r.grid();
    if (r.min() <= 0.0 || rho.min() <= 0.0)
        throw ConfigError("logistic steady state needs r > 0 and rho > 0");

    ScalarField K(g);
    for (int k = 0; k < g.size(); ++k) K[k] = r[k] / rho[k];

    auto residual = [&](const ScalarField& u) {
        ScalarField lap = apply_neumann_laplacian(u);
        ScalarField res(g);
        for (int k = 0; k < g.size(); ++k) res[k] = -d1 * lap[k] - r[k] * u[k] + rho[k] * u[k] * u[k];
        return res;
    };

    auto norm2 = [](const ScalarField& f) {
        double s = 0.0;
        for (double v : f.values()) s += v * v;
        return std::sqrt(s);
    };

    ScalarField res = residual(K);
    double rn = norm2(res);
    const int max_newton = 50;
    for (int it = 0; it < max_newton && rn > tol; ++it) {
        // Jacobian: -d1 Lap - r + 2 rho K
        ScalarField jac_zero(g);
        for (int k = 0; k < g.size(); ++k) jac_zero[k] = -r[k] + 2.0 * rho[k] * K[k];
        EllipticApply J{g, d1, jac_zero, nullptr};
        std::vector<double> rhs(g.size());
        for (int k = 0; k < g.size(); ++k) rhs[k] = -res[k];
        std::vector<double> delta(g.size(), 0.0);
        GmresOptions opts;
        opts.tol = std::min(1e-6, tol);
        GmresInfo info = gmres_solve([&J](const std::vector<double>& in,
                                          std::vector<double>& out) { J(in, out); },
                                     rhs, delta, opts);
        if (!info.converged)
            throw SolverFailure("logistic Newton: inner solve stalled", info.rel_residual);

        // step halving until the residual norm decreases
        double step = 1.0;
        ScalarField K_new(g);
        for (int half = 0; half < 30; ++half) {
            for (int k = 0; k < g.size(); ++k) K_new[k] = K[k] + step * delta[k];
            ScalarField res_new = residual(K_new);
            const double rn_new = norm2(res_new);
            if (rn_new < rn) {
                K = K_new;
                res = res_new;
                rn = rn_new;
                break;
            }
            step *= 0.5;
            if (half == 29)
                throw SolverFailure("logistic Newton diverged (residual " + std::to_string(rn) + ")",
                                    rn);
        }
    }
    if (rn > tol)
        throw SolverFailure("logistic Newton did not reach tolerance (residual " +
                                std::to_string(rn) + ")",
                            rn);
    if (K.min() <= 0.0)
        throw SolverFailure("logistic Newton converged to a non-positive branch");
    require_finite(K, "logistic steady state");
    return K;
}

}  // namespace regionctl
