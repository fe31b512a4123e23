#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"

namespace regionctl {

/// Semi-implicit time march: diffusion and linear zeroth-order terms implicit,
/// nonlocal / nonlinear couplings explicit at the previous step.
struct TimeScheme {
    double dt = 0.0;
    int n_steps = 0;
    double krylov_tol = 1e-3;

    double horizon() const { return dt * n_steps; }
};

struct SystemParams {
    double d1 = 1.0, d2 = 1.0;
    ScalarField r, rho, a;
    double c0 = 1.0, gamma = 0.0;
    std::shared_ptr<const InteractionOperator> B;
    ScalarField m;  // control indicator in [0,1]: chi_omega or H_sigma(phi)

    SystemParams(double d1_, double d2_, ScalarField r_, ScalarField rho_, ScalarField a_,
                 double c0_, double gamma_, std::shared_ptr<const InteractionOperator> B_,
                 ScalarField m_)
        : d1(d1_), d2(d2_), r(std::move(r_)), rho(std::move(rho_)), a(std::move(a_)), c0(c0_),
          gamma(gamma_), B(std::move(B_)), m(std::move(m_)) {}
};

/// Fields at t = 0, dt, ..., n_steps*dt.
struct Trajectory {
    double dt = 0.0;
    std::vector<ScalarField> fields;

    int steps() const { return static_cast<int>(fields.size()) - 1; }
    const ScalarField& operator[](int n) const { return fields[n]; }
    const ScalarField& front() const { return fields.front(); }
    const ScalarField& back() const { return fields.back(); }
};

/// Full prey-predator system with the feedback control u = -gamma p:
///   dt h - d1 Lap h = r h - rho h^2 - h (Bp)
///   dt p - d2 Lap p = -a p + c0 h (Bp) - gamma m p
/// Negative node values beyond -1e-8*max(initial) abort (step-size violation).
std::pair<Trajectory, Trajectory> solve_full_system(const SystemParams& p, const ScalarField& h0,
                                                    const ScalarField& p0, const TimeScheme& ts);

/// Linear predator bound / state equation:
///   dt y - d2 Lap y = -a y + c0 K (By) - gamma m y,  y(0) = y0.
Trajectory solve_state(const SystemParams& p, const ScalarField& y0, const ScalarField& K,
                       const TimeScheme& ts);

/// Exact linearization of solve_state with respect to the level set:
///   dt z - d2 Lap z = -a z + c0 K (Bz) - gamma m z - gamma delta_sigma(phi) psi y,
/// z(0) = 0. The forcing is evaluated at the new time level, which makes z the
/// exact derivative of the discrete state recursion (the implicit matrix itself
/// depends on phi). Requires p.m == H_sigma(phi).
Trajectory solve_linearized(const SystemParams& p, const Trajectory& y, const ScalarField& phi,
                            const ScalarField& psi_dir, double sigma, const ScalarField& K,
                            const TimeScheme& ts);

/// Backward adjoint of the damage functional (terminal r(T) = 0):
///   dt r + d Lap r = a r - c0 B*(K r) + gamma H_sigma(phi) r + B*K.
/// Discretized as the exact transpose of the forward recursion in the
/// quadrature inner product; the B*K source carries the trapezoid time weight
/// (1/2 on the terminal backward step) so that the pairing
///   sum_{n=1..N} dt r^{n-1} y^n
/// is the exact adjoint representation of the trapezoidal damage quadrature.
Trajectory solve_adjoint(const SystemParams& p, const ScalarField& phi, double sigma,
                         const ScalarField& K, const TimeScheme& ts);

}  // namespace regionctl
