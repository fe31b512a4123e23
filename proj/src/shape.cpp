#include "regionctl/shape.hpp"

#include <cmath>
#include <string>

#include "regionctl/gmres.hpp"

namespace regionctl {

ScalarField curvature_term(const ScalarField& phi, double eps_reg) {
    if (!(eps_reg > 0.0)) throw ConfigError("curvature regularization must be > 0");
    const Grid& g = phi.grid();
    ScalarField gx(g), gy(g);
    gradient_components(phi, gx, gy);
    ScalarField nx(g), ny(g);
    for (int k = 0; k < g.size(); ++k) {
        const double mag = std::sqrt(gx[k] * gx[k] + gy[k] * gy[k] + eps_reg * eps_reg);
        nx[k] = gx[k] / mag;
        ny[k] = gy[k] / mag;
    }
    ScalarField dnx_dx(g), dnx_dy(g), dny_dx(g), dny_dy(g);
    gradient_components(nx, dnx_dx, dnx_dy);
    gradient_components(ny, dny_dx, dny_dy);
    ScalarField out(g);
    for (int k = 0; k < g.size(); ++k) out[k] = dnx_dx[k] + dny_dy[k];
    return out;
}

CostBreakdown cost_components(const LevelSet& ls, const Trajectory& y, const ScalarField& K,
                              const InteractionOperator& B, const CostWeights& w) {
    const Grid& g = ls.phi.grid();
    if (!(y.front().grid() == g) || !(K.grid() == g))
        throw ConfigError("cost evaluation on mismatched grids");

    CostBreakdown c;
    const int N = y.steps();
    for (int n = 0; n <= N; ++n) {
        ScalarField By = B.apply(y[n]);
        ScalarField integrand(g);
        for (int k = 0; k < g.size(); ++k) integrand[k] = K[k] * By[k];
        const double theta = (n == 0 || n == N) ? 0.5 : 1.0;
        c.j_damage += theta * y.dt * integrate(integrand);
    }
    c.j_area = integrate(heaviside_field(ls.phi, ls.sigma));
    ScalarField gm = gradient_magnitude(ls.phi);
    ScalarField per(g);
    for (int k = 0; k < g.size(); ++k) per[k] = mollified_delta(ls.phi[k], ls.sigma) * gm[k];
    c.j_perimeter = integrate(per);
    c.j_total = w.theta * c.j_damage + w.alpha * c.j_area + w.beta * c.j_perimeter;
    return c;
}

ScalarField ry_time_integral(const Trajectory& r, const Trajectory& y) {
    if (r.steps() != y.steps() || r.dt != y.dt)
        throw ConfigError("adjoint/state trajectories are not aligned in time");
    const Grid& g = y.front().grid();
    ScalarField acc(g);
    for (int n = 1; n <= y.steps(); ++n) {
        const ScalarField& rn = r[n - 1];
        const ScalarField& yn = y[n];
        for (int k = 0; k < g.size(); ++k) acc[k] += y.dt * rn[k] * yn[k];
    }
    return acc;
}

ScalarField shape_derivative_density(const LevelSet& ls, const Trajectory& y, const Trajectory& r,
                                     const CostWeights& w, double gamma, double eps_reg) {
    const Grid& g = ls.phi.grid();
    ScalarField R = ry_time_integral(r, y);
    ScalarField curv = curvature_term(ls.phi, eps_reg);
    ScalarField G(g);
    for (int k = 0; k < g.size(); ++k) {
        G[k] = mollified_delta(ls.phi[k], ls.sigma) *
               (gamma * w.theta * R[k] + w.alpha - w.beta * curv[k]);
    }
    return G;
}

namespace {

// flux-form variable-coefficient operator sum of d/dx (gface d/dx .) with
// zero flux through the boundary faces; gface = arithmetic face mean of ginv
struct CurvatureFlowOp {
    const Grid& g;
    const ScalarField& delta;  // delta_sigma(phi^n)
    const ScalarField& ginv;   // 1 / |grad phi^n|_reg
    double factor;             // s0 * beta

    void operator()(const std::vector<double>& in, std::vector<double>& out) const {
        const int nx = g.nx(), ny = g.ny();
        const double ax = 1.0 / (g.dx() * g.dx()), ay = 1.0 / (g.dy() * g.dy());
        out.resize(in.size());
        for (int j = 0; j < ny; ++j) {
            for (int i = 0; i < nx; ++i) {
                const int k = g.index(i, j);
                double div = 0.0;
                if (i > 0) {
                    const int km = g.index(i - 1, j);
                    div += ax * 0.5 * (ginv[k] + ginv[km]) * (in[km] - in[k]);
                }
                if (i < nx - 1) {
                    const int kp = g.index(i + 1, j);
                    div += ax * 0.5 * (ginv[k] + ginv[kp]) * (in[kp] - in[k]);
                }
                if (j > 0) {
                    const int km = g.index(i, j - 1);
                    div += ay * 0.5 * (ginv[k] + ginv[km]) * (in[km] - in[k]);
                }
                if (j < ny - 1) {
                    const int kp = g.index(i, j + 1);
                    div += ay * 0.5 * (ginv[k] + ginv[kp]) * (in[kp] - in[k]);
                }
                out[k] = in[k] - factor * delta[k] * div;
            }
        }
    }
};

}  // namespace

LevelSet descent_step(const LevelSet& ls, const ScalarField& ry_integral, const CostWeights& w,
                      double gamma, double s0, double eps_reg, double krylov_tol) {
    if (!(s0 > 0.0)) throw ConfigError("descent step needs s0 > 0");
    const Grid& g = ls.phi.grid();

    ScalarField delta = delta_field(ls.phi, ls.sigma);
    ScalarField rhs(g);
    for (int k = 0; k < g.size(); ++k)
        rhs[k] = ls.phi[k] +
                 s0 * delta[k] * (-gamma * w.theta * ry_integral[k] - w.alpha);

    if (w.beta == 0.0) return LevelSet(std::move(rhs), ls.sigma);

    ScalarField gx(g), gy(g);
    gradient_components(ls.phi, gx, gy);
    ScalarField ginv(g);
    for (int k = 0; k < g.size(); ++k)
        ginv[k] = 1.0 / std::sqrt(gx[k] * gx[k] + gy[k] * gy[k] + eps_reg * eps_reg);

    CurvatureFlowOp A{g, delta, ginv, s0 * w.beta};
    ScalarField phi_new = ls.phi;  // warm start
    GmresInfo info = gmres_solve(
        [&A](const std::vector<double>& in, std::vector<double>& out) { A(in, out); }, rhs.vec(),
        phi_new.vec(), GmresOptions{krylov_tol, 0});
    if (!info.converged)
        throw SolverFailure("implicit curvature solve did not converge (rel residual " +
                                std::to_string(info.rel_residual) + ")",
                            info.rel_residual);
    require_finite(phi_new, "descent step");
    return LevelSet(std::move(phi_new), ls.sigma);
}

}  // namespace regionctl
