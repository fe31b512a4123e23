#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "regionctl/grid.hpp"

namespace regionctl {

/// kappa(x, x') evaluated at (x1, x2, x1', x2').
using KernelFn = std::function<double(double, double, double, double)>;

/// The interaction operator B of the prey-predator coupling, in its two forms:
///   Local:    (By)(x) = c(x) y(x)
///   Nonlocal: (By)(x) = \int kappa(x,x') y(x') dx'
/// The nonlocal kernel is stored dense, sampled at node pairs; the integral is
/// the trapezoid quadrature. apply_adjoint is the exact transpose in the
/// quadrature inner product, so <By, w> == <y, B*w> to roundoff.
class InteractionOperator {
public:
    static InteractionOperator local(ScalarField c);
    static InteractionOperator nonlocal(const Grid& g, const KernelFn& kappa);

    ScalarField apply(const ScalarField& y) const;
    ScalarField apply_adjoint(const ScalarField& w) const;

    /// Row-sum operator norm bound: sup_x \int kappa(x,x')dx' (nonlocal) or
    /// max c (local). Used for the coercivity shifts.
    double norm_bound() const;

    const Grid& grid() const { return grid_; }
    bool is_local() const { return local_; }

private:
    InteractionOperator(Grid g, bool is_local) : grid_(g), local_(is_local) {}

    Grid grid_;
    bool local_;
    std::vector<double> c_;       // local multiplier
    std::vector<double> kernel_;  // dense row-major kappa[i_out * n + i_in]
    std::vector<double> w_;       // quadrature weights
};

}  // namespace regionctl
