#include "regionctl/gmres.hpp"

#include <cmath>
#include <cstddef>

namespace regionctl {

namespace {
double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}
double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }
}  // namespace

GmresInfo gmres_solve(const LinearOp& apply, const std::vector<double>& b, std::vector<double>& x,
                      const GmresOptions& opts) {
    const int n = static_cast<int>(b.size());
    GmresInfo info;

    const double bnorm = nrm2(b);
    if (bnorm == 0.0) {
        x.assign(n, 0.0);
        info.converged = true;
        return info;
    }

    int cap = opts.max_iter > 0 ? opts.max_iter : 10 * n;
    if (cap > n) cap = n;  // exact termination dimension of the Krylov space

    // r0 = b - A x0
    std::vector<double> r(n), tmp(n);
    apply(x, tmp);
    for (int k = 0; k < n; ++k) r[k] = b[k] - tmp[k];
    double beta = nrm2(r);
    info.rel_residual = beta / bnorm;
    if (info.rel_residual <= opts.tol) {
        info.converged = true;
        return info;
    }

    std::vector<std::vector<double>> V;  // Arnoldi basis
    V.reserve(64);
    V.push_back(r);
    for (double& v : V[0]) v /= beta;

    std::vector<std::vector<double>> H;  // column m holds H(0..m+1, m)
    std::vector<double> cs, sn;          // Givens rotations
    std::vector<double> g = {beta};      // rotated rhs

    int m = 0;
    for (; m < cap; ++m) {
        std::vector<double> w(n);
        apply(V[m], w);
        std::vector<double> h(m + 2, 0.0);
        for (int i = 0; i <= m; ++i) {  // modified Gram-Schmidt
            h[i] = dot(w, V[i]);
            for (int k = 0; k < n; ++k) w[k] -= h[i] * V[i][k];
        }
        h[m + 1] = nrm2(w);

        // apply existing rotations to the new column
        for (int i = 0; i < m; ++i) {
            const double t = cs[i] * h[i] + sn[i] * h[i + 1];
            h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
            h[i] = t;
        }
        // new rotation annihilating h[m+1]
        const double denom = std::hypot(h[m], h[m + 1]);
        double c = 1.0, s = 0.0;
        if (denom > 0.0) {
            c = h[m] / denom;
            s = h[m + 1] / denom;
        }
        cs.push_back(c);
        sn.push_back(s);
        h[m] = denom;
        const double gm = g[m];
        g.push_back(-s * gm);
        g[m] = c * gm;
        H.push_back(std::move(h));

        info.rel_residual = std::abs(g[m + 1]) / bnorm;
        const bool lucky = H[m][m + 1] == 0.0 || !(std::isfinite(H[m][m + 1]));
        if (info.rel_residual <= opts.tol || lucky) {
            ++m;
            break;
        }
        if (V.size() <= static_cast<std::size_t>(m + 1)) V.reserve(V.size() * 2);
        V.push_back(w);
        for (double& v : V[m + 1]) v /= H[m][m + 1];
    }

    // back substitution on the m x m triangular system
    std::vector<double> ym(m, 0.0);
    for (int i = m - 1; i >= 0; --i) {
        double s = g[i];
        for (int k = i + 1; k < m; ++k) s -= H[k][i] * ym[k];
        ym[i] = s / H[i][i];
    }
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) x[k] += ym[i] * V[i][k];

    info.iterations = m;
    info.converged = info.rel_residual <= opts.tol;
    return info;
}

}  // namespace regionctl
