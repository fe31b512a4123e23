#include "regionctl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace regionctl {

Grid::Grid(int nx, int ny, Rect bounds) : nx_(nx), ny_(ny), bounds_(bounds) {
    if (nx < 3 || ny < 3) throw ConfigError("grid needs nx, ny >= 3");
    if (!(bounds.x_max > bounds.x_min) || !(bounds.y_max > bounds.y_min))
        throw ConfigError("grid bounds are degenerate");
    dx_ = bounds.width() / (nx - 1);
    dy_ = bounds.height() / (ny - 1);
}

Grid build_grid(int nx, int ny, Rect bounds) { return Grid(nx, ny, bounds); }

double ScalarField::min() const { return *std::min_element(v_.begin(), v_.end()); }
double ScalarField::max() const { return *std::max_element(v_.begin(), v_.end()); }
double ScalarField::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

ScalarField apply_neumann_laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    const double ax = 1.0 / (g.dx() * g.dx()), ay = 1.0 / (g.dy() * g.dy());
    ScalarField out(g);
    for (int j = 0; j < ny; ++j) {
        const int jm = (j == 0) ? 1 : j - 1;
        const int jp = (j == ny - 1) ? ny - 2 : j + 1;
        for (int i = 0; i < nx; ++i) {
            const int im = (i == 0) ? 1 : i - 1;
            const int ip = (i == nx - 1) ? nx - 2 : i + 1;
            const double c = f.at(i, j);
            out.at(i, j) = ax * (f.at(im, j) - 2.0 * c + f.at(ip, j)) +
                           ay * (f.at(i, jm) - 2.0 * c + f.at(i, jp));
        }
    }
    return out;
}

std::vector<double> quadrature_weights(const Grid& g) {
    std::vector<double> w(g.size());
    const double base = g.dx() * g.dy();
    for (int j = 0; j < g.ny(); ++j) {
        const double wy = (j == 0 || j == g.ny() - 1) ? 0.5 : 1.0;
        for (int i = 0; i < g.nx(); ++i) {
            const double wx = (i == 0 || i == g.nx() - 1) ? 0.5 : 1.0;
            w[g.index(i, j)] = base * wx * wy;
        }
    }
    return w;
}

double integrate(const ScalarField& f) {
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int j = 0; j < g.ny(); ++j) {
        const double wy = (j == 0 || j == g.ny() - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int i = 0; i < g.nx(); ++i) {
            const double wx = (i == 0 || i == g.nx() - 1) ? 0.5 : 1.0;
            row += wx * f.at(i, j);
        }
        acc += wy * row;
    }
    return acc * g.dx() * g.dy();
}

void gradient_components(const ScalarField& f, ScalarField& gx, ScalarField& gy) {
    const Grid& g = f.grid();
    const int nx = g.nx(), ny = g.ny();
    const double hx = g.dx(), hy = g.dy();
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double dfx, dfy;
            if (i == 0)
                dfx = (f.at(1, j) - f.at(0, j)) / hx;
            else if (i == nx - 1)
                dfx = (f.at(nx - 1, j) - f.at(nx - 2, j)) / hx;
            else
                dfx = (f.at(i + 1, j) - f.at(i - 1, j)) / (2.0 * hx);
            if (j == 0)
                dfy = (f.at(i, 1) - f.at(i, 0)) / hy;
            else if (j == ny - 1)
                dfy = (f.at(i, ny - 1) - f.at(i, ny - 2)) / hy;
            else
                dfy = (f.at(i, j + 1) - f.at(i, j - 1)) / (2.0 * hy);
            gx.at(i, j) = dfx;
            gy.at(i, j) = dfy;
        }
    }
}

ScalarField gradient_magnitude(const ScalarField& f) {
    ScalarField gx(f.grid()), gy(f.grid());
    gradient_components(f, gx, gy);
    ScalarField out(f.grid());
    for (int k = 0; k < out.size(); ++k) out[k] = std::hypot(gx[k], gy[k]);
    return out;
}

double inner(const ScalarField& f, const ScalarField& g) {
    ScalarField prod(f.grid());
    for (int k = 0; k < prod.size(); ++k) prod[k] = f[k] * g[k];
    return integrate(prod);
}

double l2_norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }

bool all_finite(const ScalarField& f) {
    for (double x : f.values())
        if (!std::isfinite(x)) return false;
    return true;
}

void require_finite(const ScalarField& f, const char* what) {
    if (!all_finite(f)) throw SolverFailure(std::string(what) + ": non-finite field values");
}

}  // namespace regionctl
