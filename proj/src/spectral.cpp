#include "regionctl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regionctl/gmres.hpp"

namespace regionctl {

namespace {

void validate(const EigenSetup& s) {
    if (s.gamma < 0.0 || s.eps < 0.0 || s.c0 <= 0.0)
        throw ConfigError("eigen setup needs gamma >= 0, eps >= 0, c0 > 0");
    if (s.omega_indicator.min() < -1e-12 || s.omega_indicator.max() > 1.0 + 1e-12)
        throw ConfigError("omega indicator must take values in [0,1]");
    if (!s.B) throw ConfigError("eigen setup has no interaction operator");
}

struct ShiftedOperator {
    const Grid& g;
    double d2;
    ScalarField zo;    // a + gamma m + shift
    ScalarField Keps;  // K + eps
    double c0;
    const InteractionOperator& B;

    void apply(const std::vector<double>& in, std::vector<double>& out, bool adjoint) const {
        ScalarField v(g);
        v.vec() = in;
        ScalarField lap = apply_neumann_laplacian(v);
        out.resize(in.size());
        if (!adjoint) {
            ScalarField bv = B.apply(v);
            for (int k = 0; k < g.size(); ++k)
                out[k] = -d2 * lap[k] + zo[k] * in[k] - c0 * Keps[k] * bv[k];
        } else {
            ScalarField kv(g);
            for (int k = 0; k < g.size(); ++k) kv[k] = Keps[k] * in[k];
            ScalarField bkv = B.apply_adjoint(kv);
            for (int k = 0; k < g.size(); ++k) out[k] = -d2 * lap[k] + zo[k] * in[k] - c0 * bkv[k];
        }
    }
};

struct PowerResult {
    double lambda;
    ScalarField psi;
};

// Two-sided power iteration on the resolvent of the (possibly adjoint) shifted
// operator. `primal_is_adjoint` swaps the roles so the same loop serves both
// eigenproblems.
PowerResult resolvent_power_iteration(const EigenSetup& s, double tol, int max_iter,
                                      bool primal_is_adjoint) {
    validate(s);
    const Grid& g = s.a.grid();
    const int n = g.size();

    ScalarField zo(g), Keps(g);
    for (int k = 0; k < n; ++k) {
        zo[k] = s.a[k] + s.gamma * s.omega_indicator[k];
        Keps[k] = s.K[k] + s.eps;
    }
    const double shift =
        std::max(0.0, s.c0 * Keps.max() * s.B->norm_bound() - zo.min()) + 1.0;
    for (int k = 0; k < n; ++k) zo[k] += shift;

    ShiftedOperator A{g, s.d2, zo, Keps, s.c0, *s.B};
    LinearOp fwd = [&A, primal_is_adjoint](const std::vector<double>& in,
                                           std::vector<double>& out) {
        A.apply(in, out, primal_is_adjoint);
    };
    LinearOp adj = [&A, primal_is_adjoint](const std::vector<double>& in,
                                           std::vector<double>& out) {
        A.apply(in, out, !primal_is_adjoint);
    };

    const std::vector<double> w = quadrature_weights(g);
    auto wdot = [&w](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) acc += w[k] * a[k] * b[k];
        return acc;
    };
    auto wnormalize = [&](std::vector<double>& v) {
        const double nn = std::sqrt(wdot(v, v));
        for (double& x : v) x /= nn;
        return nn;
    };

    std::vector<double> v(n, 1.0), u(n, 1.0);
    wnormalize(v);
    wnormalize(u);
    std::vector<double> Tv(v), Tu(u);  // also serve as warm starts

    GmresOptions opts;
    opts.tol = std::max(1e-13, 1e-2 * tol);

    double mu_prev = 0.0;
    bool have_prev = false;
    std::vector<double> Av(n);
    for (int it = 0; it < max_iter; ++it) {
        GmresInfo iv = gmres_solve(fwd, v, Tv, opts);
        GmresInfo iu = gmres_solve(adj, u, Tu, opts);
        if (!iv.converged || !iu.converged)
            throw SolverFailure("eigen resolvent solve did not converge",
                                std::max(iv.rel_residual, iu.rel_residual));

        const double denom = wdot(v, u);
        if (denom == 0.0) throw SolverFailure("eigen iteration lost biorthogonality");
        const double mu = wdot(Tv, u) / denom;

        v = Tv;
        wnormalize(v);
        u = Tu;
        wnormalize(u);

        // converged when both the two-sided quotient has settled and the
        // iterate satisfies the eigen equation: ||A v - lambda v|| <= tol
        if (have_prev && std::abs(mu - mu_prev) < tol * std::max(1.0, std::abs(mu))) {
            const double lambda_shifted = 1.0 / mu;
            fwd(v, Av);
            double res2 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double rk = Av[k] - lambda_shifted * v[k];
                res2 += w[k] * rk * rk;
            }
            const double lambda = lambda_shifted - shift;
            if (std::sqrt(res2) <= tol * std::max(1.0, std::abs(lambda))) {
                ScalarField psi(g);
                psi.vec() = v;
                // the resolvent is positivity preserving; a sign flip of the
                // whole vector is the only admissible ambiguity
                if (integrate(psi) < 0.0)
                    for (double& x : psi.vec()) x = -x;
                if (psi.min() <= 0.0)
                    throw SolverFailure("eigen iterate lost positivity (min " +
                                        std::to_string(psi.min()) + ")");
                const double norm = l2_norm(psi);
                for (double& x : psi.vec()) x /= norm;
                return {lambda, std::move(psi)};
            }
        }
        mu_prev = mu;
        have_prev = true;
    }
    throw SolverFailure("power iteration stagnated after " + std::to_string(max_iter) +
                        " iterations (last lambda " + std::to_string(1.0 / mu_prev - shift) + ")");
}

}  // namespace

EigenPair principal_eigenpair(const EigenSetup& s, double tol, int max_power_iter) {
    PowerResult r = resolvent_power_iteration(s, tol, max_power_iter, false);
    return {r.lambda, std::move(r.psi)};
}

double adjoint_principal_eigenvalue(const EigenSetup& s, double tol, int max_power_iter) {
    return resolvent_power_iteration(s, tol, max_power_iter, true).lambda;
}

std::vector<std::pair<double, double>> eigen_gamma_sweep(const EigenSetup& s,
                                                         std::span<const double> gammas,
                                                         double tol) {
    for (std::size_t k = 0; k + 1 < gammas.size(); ++k)
        if (!(gammas[k] <= gammas[k + 1])) throw ConfigError("gamma sweep must be ascending");
    std::vector<std::pair<double, double>> out;
    out.reserve(gammas.size());
    for (double gm : gammas) {
        if (gm < 0.0) throw ConfigError("gamma must be >= 0");
        EigenSetup si = s;
        si.gamma = gm;
        out.emplace_back(gm, principal_eigenpair(si, tol).lambda1);
    }
    return out;
}

}  // namespace regionctl
