#include "regionctl/dynamics.hpp"

#include <cmath>
#include <string>

#include "regionctl/gmres.hpp"
#include "regionctl/mollifier.hpp"

namespace regionctl {

namespace {

void validate_scheme(const TimeScheme& ts) {
    if (!(ts.dt > 0.0) || ts.n_steps < 1) throw ConfigError("time scheme needs dt > 0, n_steps >= 1");
}

// Implicit step operator M = I + dt(-d Lap + zo). Self-adjoint in the
// quadrature inner product (mirror-ghost Laplacian + diagonal terms), so the
// adjoint recursion reuses the same apply.
struct ImplicitStep {
    const Grid& g;
    double d;
    double dt;
    ScalarField zo;
    GmresOptions opts;

    void apply(const std::vector<double>& in, std::vector<double>& out) const {
        ScalarField v(g);
        v.vec() = in;
        ScalarField lap = apply_neumann_laplacian(v);
        out.resize(in.size());
        for (int k = 0; k < g.size(); ++k) out[k] = in[k] + dt * (-d * lap[k] + zo[k] * in[k]);
    }

    // rhs in, solution out; warm starts from the incoming value of x
    void solve(const ScalarField& rhs, ScalarField& x, const char* what) const {
        GmresInfo info = gmres_solve(
            [this](const std::vector<double>& in, std::vector<double>& out) { apply(in, out); },
            rhs.vec(), x.vec(), opts);
        if (!info.converged)
            throw SolverFailure(std::string(what) + ": Krylov step did not converge (rel residual " +
                                    std::to_string(info.rel_residual) + ")",
                                info.rel_residual);
    }
};

void check_nonnegative(const ScalarField& f, double tol_neg, int step, const char* what) {
    const double mn = f.min();
    if (mn < -tol_neg)
        throw SolverFailure(std::string(what) + ": negative value " + std::to_string(mn) +
                            " at step " + std::to_string(step) + " (step-size violation)");
    require_finite(f, what);
}

}  // namespace

std::pair<Trajectory, Trajectory> solve_full_system(const SystemParams& p, const ScalarField& h0,
                                                    const ScalarField& p0, const TimeScheme& ts) {
    validate_scheme(ts);
    const Grid& g = h0.grid();
    if (h0.min() < 0.0 || p0.min() < 0.0) throw ConfigError("initial densities must be >= 0");

    ScalarField zo_h(g), zo_p(g);
    for (int k = 0; k < g.size(); ++k) {
        zo_h[k] = -p.r[k];
        zo_p[k] = p.a[k] + p.gamma * p.m[k];
    }
    GmresOptions opts{ts.krylov_tol, 0};
    ImplicitStep Mh{g, p.d1, ts.dt, zo_h, opts};
    ImplicitStep Mp{g, p.d2, ts.dt, zo_p, opts};

    const double tol_h = 1e-8 * h0.max();
    const double tol_p = 1e-8 * p0.max();

    Trajectory H{ts.dt, {h0}}, P{ts.dt, {p0}};
    H.fields.reserve(ts.n_steps + 1);
    P.fields.reserve(ts.n_steps + 1);
    ScalarField h = h0, pp = p0;
    for (int n = 0; n < ts.n_steps; ++n) {
        ScalarField Bp = p.B->apply(pp);
        ScalarField rhs_h(g), rhs_p(g);
        for (int k = 0; k < g.size(); ++k) {
            rhs_h[k] = h[k] + ts.dt * (-p.rho[k] * h[k] * h[k] - h[k] * Bp[k]);
            rhs_p[k] = pp[k] + ts.dt * (p.c0 * h[k] * Bp[k]);
        }
        Mh.solve(rhs_h, h, "full system (h)");
        Mp.solve(rhs_p, pp, "full system (p)");
        check_nonnegative(h, tol_h, n + 1, "full system (h)");
        check_nonnegative(pp, tol_p, n + 1, "full system (p)");
        H.fields.push_back(h);
        P.fields.push_back(pp);
    }
    return {std::move(H), std::move(P)};
}

Trajectory solve_state(const SystemParams& p, const ScalarField& y0, const ScalarField& K,
                       const TimeScheme& ts) {
    validate_scheme(ts);
    const Grid& g = y0.grid();
    if (y0.min() < 0.0) throw ConfigError("initial state must be >= 0");

    ScalarField zo(g);
    for (int k = 0; k < g.size(); ++k) zo[k] = p.a[k] + p.gamma * p.m[k];
    ImplicitStep M{g, p.d2, ts.dt, zo, GmresOptions{ts.krylov_tol, 0}};
    const double tol_neg = 1e-8 * y0.max();

    Trajectory Y{ts.dt, {y0}};
    Y.fields.reserve(ts.n_steps + 1);
    ScalarField y = y0;
    for (int n = 0; n < ts.n_steps; ++n) {
        ScalarField By = p.B->apply(y);
        ScalarField rhs(g);
        for (int k = 0; k < g.size(); ++k) rhs[k] = y[k] + ts.dt * p.c0 * K[k] * By[k];
        M.solve(rhs, y, "state");
        check_nonnegative(y, tol_neg, n + 1, "state");
        Y.fields.push_back(y);
    }
    return Y;
}

Trajectory solve_linearized(const SystemParams& p, const Trajectory& y, const ScalarField& phi,
                            const ScalarField& psi_dir, double sigma, const ScalarField& K,
                            const TimeScheme& ts) {
    validate_scheme(ts);
    const Grid& g = phi.grid();
    if (y.steps() != ts.n_steps) throw ConfigError("state trajectory does not match time scheme");

    ScalarField zo(g), force(g);
    for (int k = 0; k < g.size(); ++k) {
        zo[k] = p.a[k] + p.gamma * p.m[k];
        force[k] = p.gamma * mollified_delta(phi[k], sigma) * psi_dir[k];
    }
    ImplicitStep M{g, p.d2, ts.dt, zo, GmresOptions{ts.krylov_tol, 0}};

    Trajectory Z{ts.dt, {ScalarField(g)}};
    Z.fields.reserve(ts.n_steps + 1);
    ScalarField z(g);
    for (int n = 0; n < ts.n_steps; ++n) {
        ScalarField Bz = p.B->apply(z);
        ScalarField rhs(g);
        const ScalarField& ynew = y[n + 1];
        for (int k = 0; k < g.size(); ++k)
            rhs[k] = z[k] + ts.dt * (p.c0 * K[k] * Bz[k] - force[k] * ynew[k]);
        M.solve(rhs, z, "linearized state");
        require_finite(z, "linearized state");
        Z.fields.push_back(z);
    }
    return Z;
}

Trajectory solve_adjoint(const SystemParams& p, const ScalarField& phi, double sigma,
                         const ScalarField& K, const TimeScheme& ts) {
    validate_scheme(ts);
    const Grid& g = phi.grid();

    ScalarField zo(g);
    for (int k = 0; k < g.size(); ++k)
        zo[k] = p.a[k] + p.gamma * mollified_heaviside(phi[k], sigma);
    ImplicitStep M{g, p.d2, ts.dt, zo, GmresOptions{ts.krylov_tol, 0}};

    ScalarField gK = p.B->apply_adjoint(K);  // B*K source

    const int N = ts.n_steps;
    std::vector<ScalarField> rev;
    rev.reserve(N + 1);
    ScalarField r(g);  // r(T) = 0
    rev.push_back(r);
    for (int n = N; n >= 1; --n) {
        const double theta = (n == N) ? 0.5 : 1.0;
        ScalarField Kr(g);
        for (int k = 0; k < g.size(); ++k) Kr[k] = K[k] * r[k];
        ScalarField BKr = p.B->apply_adjoint(Kr);
        ScalarField rhs(g);
        for (int k = 0; k < g.size(); ++k)
            rhs[k] = r[k] + ts.dt * (p.c0 * BKr[k] - theta * gK[k]);
        M.solve(rhs, r, "adjoint");
        require_finite(r, "adjoint");
        rev.push_back(r);
    }

    Trajectory R{ts.dt, {}};
    R.fields.reserve(N + 1);
    for (int n = N; n >= 0; --n) R.fields.push_back(std::move(rev[n]));
    return R;
}

}  // namespace regionctl
