#pragma once

#include <utility>

#include "regionctl/dynamics.hpp"
#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"
#include "regionctl/mollifier.hpp"

namespace regionctl {

/// Level-set description of the control region omega = { phi > 0 } together
/// with the mollification width of the Heaviside/delta surrogates.
struct LevelSet {
    ScalarField phi;
    double sigma = 1e-2;

    LevelSet(ScalarField phi_, double sigma_) : phi(std::move(phi_)), sigma(sigma_) {
        if (!(sigma > 0.0)) throw ConfigError("level set needs sigma > 0");
    }
};

struct CostWeights {
    double theta = 1.0, alpha = 0.0, beta = 0.0;
};

struct CostBreakdown {
    double j_damage = 0.0, j_area = 0.0, j_perimeter = 0.0, j_total = 0.0;
};

/// div( grad phi / sqrt(|grad phi|^2 + eps_reg^2) ) — the regularized mean
/// curvature term of the descent velocity. Central differences of the nodal
/// unit normal, one-sided at the boundary.
ScalarField curvature_term(const ScalarField& phi, double eps_reg);

/// J components for one level set: damage = trapezoid-in-time integral of
/// \int K (B y) dx over the state trajectory; area / perimeter from the
/// mollified geometry functionals. j_total = theta*damage + alpha*area +
/// beta*perimeter exactly.
CostBreakdown cost_components(const LevelSet& ls, const Trajectory& y, const ScalarField& K,
                              const InteractionOperator& B, const CostWeights& w);

/// sum_{n=1..N} dt r^{n-1} y^n — the discrete realization of \int_0^T r y dt
/// that pairs exactly with the adjoint recursion (see solve_adjoint), making
/// the damage part of the shape derivative the exact derivative of the
/// discrete cost.
ScalarField ry_time_integral(const Trajectory& r, const Trajectory& y);

/// Interior density G of the shape derivative, dJ(phi)(psi) ~ <G, psi>:
///   G = delta_sigma(phi) [ gamma \int r y dt + alpha - beta curvature ].
/// The boundary integral of the continuous formula vanishes under the
/// zero-flux closure used by descent_step.
ScalarField shape_derivative_density(const LevelSet& ls, const Trajectory& y, const Trajectory& r,
                                     const CostWeights& w, double gamma, double eps_reg);

/// One artificial-time step of the gradient flow
///   d_s phi = delta_sigma(phi) [ -gamma \int r y dt - alpha + beta curvature ],
/// explicit in the damage/area velocity, semi-implicit in the curvature term
/// (div(grad phi_new / |grad phi_old|) in flux form), zero-flux boundary.
LevelSet descent_step(const LevelSet& ls, const ScalarField& ry_integral, const CostWeights& w,
                      double gamma, double s0, double eps_reg, double krylov_tol = 1e-8);

}  // namespace regionctl
