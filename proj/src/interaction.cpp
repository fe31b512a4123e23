#include "regionctl/interaction.hpp"

#include <algorithm>
#include <stdexcept>

namespace regionctl {

InteractionOperator InteractionOperator::local(ScalarField c) {
    if (c.min() < 0.0) throw ConfigError("local interaction multiplier must be >= 0");
    InteractionOperator op(c.grid(), true);
    op.c_.assign(c.values().begin(), c.values().end());
    return op;
}

InteractionOperator InteractionOperator::nonlocal(const Grid& g, const KernelFn& kappa) {
    InteractionOperator op(g, false);
    const int n = g.size();
    op.kernel_.resize(static_cast<std::size_t>(n) * n);
    for (int jo = 0; jo < g.ny(); ++jo) {
        for (int io = 0; io < g.nx(); ++io) {
            const int row = g.index(io, jo);
            double* out = op.kernel_.data() + static_cast<std::size_t>(row) * n;
            const double xo = g.x(io), yo = g.y(jo);
            for (int ji = 0; ji < g.ny(); ++ji) {
                for (int ii = 0; ii < g.nx(); ++ii) {
                    const double v = kappa(xo, yo, g.x(ii), g.y(ji));
                    if (!(v >= 0.0)) throw ConfigError("nonlocal kernel must be >= 0 everywhere");
                    out[g.index(ii, ji)] = v;
                }
            }
        }
    }
    op.w_ = quadrature_weights(g);
    return op;
}

ScalarField InteractionOperator::apply(const ScalarField& y) const {
    if (!(y.grid() == grid_)) throw ConfigError("interaction operator applied on mismatched grid");
    const int n = grid_.size();
    ScalarField out(grid_);
    if (local_) {
        for (int k = 0; k < n; ++k) out[k] = c_[k] * y[k];
        return out;
    }
    std::vector<double> wy(n);
    for (int k = 0; k < n; ++k) wy[k] = w_[k] * y[k];
    for (int i = 0; i < n; ++i) {
        const double* row = kernel_.data() + static_cast<std::size_t>(i) * n;
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += row[k] * wy[k];
        out[i] = s;
    }
    return out;
}

ScalarField InteractionOperator::apply_adjoint(const ScalarField& v) const {
    if (!(v.grid() == grid_)) throw ConfigError("interaction operator applied on mismatched grid");
    const int n = grid_.size();
    ScalarField out(grid_);
    if (local_) {
        for (int k = 0; k < n; ++k) out[k] = c_[k] * v[k];
        return out;
    }
    // (B*v)_j = sum_i kappa(x_i, x_j) w_i v_i  — transposed kernel, row weights
    for (int i = 0; i < n; ++i) {
        const double* row = kernel_.data() + static_cast<std::size_t>(i) * n;
        const double wv = w_[i] * v[i];
        if (wv == 0.0) continue;
        for (int k = 0; k < n; ++k) out[k] += row[k] * wv;
    }
    return out;
}

double InteractionOperator::norm_bound() const {
    if (local_) return *std::max_element(c_.begin(), c_.end());
    const int n = grid_.size();
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* row = kernel_.data() + static_cast<std::size_t>(i) * n;
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += row[k] * w_[k];
        m = std::max(m, s);
    }
    return m;
}

}  // namespace regionctl
