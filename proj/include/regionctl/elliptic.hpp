#pragma once

#include <optional>

#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"

namespace regionctl {

/// Steady problem  -d Lap(psi) + eta psi - scale * K (B psi) = rhs  with
/// homogeneous Neumann boundary. The coupling term is optional.
struct EllipticProblem {
    double d = 1.0;
    ScalarField eta;
    ScalarField rhs;
    struct Coupling {
        ScalarField K;
        const InteractionOperator* B = nullptr;
        double scale = 1.0;
    };
    std::optional<Coupling> coupling;

    EllipticProblem(double d_, ScalarField eta_, ScalarField rhs_)
        : d(d_), eta(std::move(eta_)), rhs(std::move(rhs_)) {}
};

/// GMRES on the discrete operator; returns psi with residual <= tol*||rhs||.
/// Throws SolverFailure on non-convergence (carrying the final residual).
ScalarField solve_linear_elliptic(const EllipticProblem& p, double tol);

/// Maximal nonnegative steady state of -d1 Lap(K) = r K - rho K^2 (the carrying
/// capacity). Damped Newton started from the strictly positive field r/rho,
/// which is exact for constant coefficients and avoids the trivial zero branch.
ScalarField solve_logistic_steady(const ScalarField& r, const ScalarField& rho, double d1,
                                  double tol);

}  // namespace regionctl
