#pragma once

#include <functional>
#include <vector>

namespace regionctl {

struct GmresOptions {
    double tol = 1e-3;  // relative to ||b||
    int max_iter = 0;   // 0 -> min(10*n, n)
};

struct GmresInfo {
    bool converged = false;
    int iterations = 0;
    double rel_residual = 0.0;
};

using LinearOp = std::function<void(const std::vector<double>&, std::vector<double>&)>;

/// Full GMRES (no restarts, no preconditioner). `x` carries the initial guess
/// on entry and the solution on exit. Residual test is ||b - Ax|| <= tol*||b||.
GmresInfo gmres_solve(const LinearOp& apply, const std::vector<double>& b, std::vector<double>& x,
                      const GmresOptions& opts = {});

}  // namespace regionctl
