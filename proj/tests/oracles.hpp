// Test-only oracles, independent of the production solver paths:
// dense assembly of the discrete operators plus a full-spectrum eigensolver.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <functional>
#include <vector>

#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"
#include "regionctl/spectral.hpp"

namespace regionctl::test {

/// Column-by-column dense assembly of a linear field operator.
inline Eigen::MatrixXd assemble_dense(const Grid& g,
                                      const std::function<ScalarField(const ScalarField&)>& op) {
    const int n = g.size();
    Eigen::MatrixXd A(n, n);
    for (int c = 0; c < n; ++c) {
        ScalarField e(g);
        e[c] = 1.0;
        ScalarField col = op(e);
        for (int r = 0; r < n; ++r) A(r, c) = col[r];
    }
    return A;
}

/// Dense matrix of the eigenproblem operator
///   -d2 Lap + (a + gamma m) - c0 (K + eps) B.
inline Eigen::MatrixXd assemble_eigen_operator(const EigenSetup& s) {
    const Grid& g = s.a.grid();
    return assemble_dense(g, [&](const ScalarField& v) {
        ScalarField lap = apply_neumann_laplacian(v);
        ScalarField bv = s.B->apply(v);
        ScalarField out(g);
        for (int k = 0; k < g.size(); ++k)
            out[k] = -s.d2 * lap[k] + (s.a[k] + s.gamma * s.omega_indicator[k]) * v[k] -
                     s.c0 * (s.K[k] + s.eps) * bv[k];
        return out;
    });
}

struct DensePrincipal {
    double lambda;
    double imag_part;  // of the selected eigenvalue, should be ~0
};

/// Full-spectrum oracle: the principal eigenvalue is the one of smallest real
/// part (the bottom of the spectrum carries the positive eigenfunction).
inline DensePrincipal dense_principal_eigenvalue(const EigenSetup& s) {
    Eigen::MatrixXd A = assemble_eigen_operator(s);
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    const auto& ev = es.eigenvalues();
    int best = 0;
    for (int k = 1; k < ev.size(); ++k)
        if (ev[k].real() < ev[best].real()) best = k;
    return {ev[best].real(), ev[best].imag()};
}

/// Deterministic pseudo-random field (values in [-1, 1]).
inline ScalarField random_field(const Grid& g, unsigned seed) {
    std::uint64_t state = 0x9E3779B97F4A7C15ull ^ (seed * 0xBF58476D1CE4E5B9ull + 1);
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return static_cast<double>(state >> 11) / static_cast<double>(1ull << 53);
    };
    ScalarField f(g);
    for (int k = 0; k < g.size(); ++k) f[k] = 2.0 * next() - 1.0;
    return f;
}

}  // namespace regionctl::test
