#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"

namespace regionctl {

/// Data of the eigenproblem
///   -d2 Lap(Psi) + a Psi + gamma m Psi - c0 (K + eps)(B Psi) = lambda Psi,
/// Neumann boundary; m is the control indicator (chi_omega or its mollified
/// version), eps the perturbation of the carrying capacity.
struct EigenSetup {
    double d2 = 1.0;
    ScalarField a;
    double gamma = 0.0;
    ScalarField omega_indicator;
    double c0 = 1.0;
    ScalarField K;
    std::shared_ptr<const InteractionOperator> B;
    double eps = 0.0;

    EigenSetup(double d2_, ScalarField a_, double gamma_, ScalarField m_, double c0_,
               ScalarField K_, std::shared_ptr<const InteractionOperator> B_, double eps_ = 0.0)
        : d2(d2_), a(std::move(a_)), gamma(gamma_), omega_indicator(std::move(m_)), c0(c0_),
          K(std::move(K_)), B(std::move(B_)), eps(eps_) {}
};

struct EigenPair {
    double lambda1 = 0.0;
    ScalarField psi1;
};

/// Principal eigenpair by power iteration on the resolvent
/// T = (A + shift)^{-1} with shift chosen so the shifted operator is coercive
/// (an M-matrix, hence positivity preserving). lambda1 = 1/r(T) - shift; psi1
/// is returned positive with unit L2 norm. The Rayleigh quotient is formed
/// against the simultaneously iterated adjoint vector.
EigenPair principal_eigenpair(const EigenSetup& s, double tol, int max_power_iter = 5000);

/// Principal eigenvalue of the adjoint problem (B* coupling, multiplication by
/// K + eps before B*). Cross-check only: equals the primal value.
double adjoint_principal_eigenvalue(const EigenSetup& s, double tol, int max_power_iter = 5000);

/// lambda1 per gamma, ascending gammas.
std::vector<std::pair<double, double>> eigen_gamma_sweep(const EigenSetup& s,
                                                         std::span<const double> gammas,
                                                         double tol);

}  // namespace regionctl
