#pragma once

#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "regionctl/errors.hpp"

namespace regionctl {

struct Rect {
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    double diameter() const { return std::hypot(width(), height()); }
};

/// Uniform node-centered tensor grid on a rectangle. Node (i,j) sits at
/// (x_min + i*dx, y_min + j*dy); fields are stored row-major, index = j*nx + i.
class Grid {
public:
    Grid(int nx, int ny, Rect bounds);

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int size() const { return nx_ * ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    const Rect& bounds() const { return bounds_; }

    double x(int i) const { return bounds_.x_min + i * dx_; }
    double y(int j) const { return bounds_.y_min + j * dy_; }
    int index(int i, int j) const { return j * nx_ + i; }

    bool operator==(const Grid& o) const {
        return nx_ == o.nx_ && ny_ == o.ny_ && bounds_.x_min == o.bounds_.x_min &&
               bounds_.x_max == o.bounds_.x_max && bounds_.y_min == o.bounds_.y_min &&
               bounds_.y_max == o.bounds_.y_max;
    }

private:
    int nx_, ny_;
    Rect bounds_;
    double dx_, dy_;
};

Grid build_grid(int nx, int ny, Rect bounds);

/// Node values of a scalar function on a Grid, row-major.
class ScalarField {
public:
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid_(g), v_(g.size(), fill) {}

    template <class F>
    static ScalarField sample(const Grid& g, F&& f) {
        ScalarField out(g);
        for (int j = 0; j < g.ny(); ++j)
            for (int i = 0; i < g.nx(); ++i) out.v_[g.index(i, j)] = f(g.x(i), g.y(j));
        return out;
    }

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(v_.size()); }

    double operator[](int k) const { return v_[k]; }
    double& operator[](int k) { return v_[k]; }
    double at(int i, int j) const { return v_[grid_.index(i, j)]; }
    double& at(int i, int j) { return v_[grid_.index(i, j)]; }

    std::span<const double> values() const { return v_; }
    std::span<double> values() { return v_; }
    const std::vector<double>& vec() const { return v_; }
    std::vector<double>& vec() { return v_; }

    double min() const;
    double max() const;
    double max_abs() const;

private:
    Grid grid_;
    std::vector<double> v_;
};

/// 5-point Laplacian with mirror (ghost-node) reflection: the discrete
/// realization of homogeneous Neumann boundary conditions. Self-adjoint in the
/// trapezoid-weighted inner product, and integrate(laplacian(f)) == 0.
ScalarField apply_neumann_laplacian(const ScalarField& f);

/// Trapezoidal quadrature over the rectangle (corner/edge weights 1/4 / 1/2).
double integrate(const ScalarField& f);

/// Per-node trapezoid quadrature weights (dx*dy scaled), same layout as fields.
std::vector<double> quadrature_weights(const Grid& g);

/// Components of grad f: central differences in the interior, one-sided at the
/// boundary (exact on linear fields).
void gradient_components(const ScalarField& f, ScalarField& gx, ScalarField& gy);

/// |grad f| from gradient_components.
ScalarField gradient_magnitude(const ScalarField& f);

/// Quadrature inner product <f,g> = sum w_k f_k g_k.
double inner(const ScalarField& f, const ScalarField& g);

/// sqrt(<f,f>) — the discrete L2(Omega) norm.
double l2_norm(const ScalarField& f);

bool all_finite(const ScalarField& f);

/// Throws SolverFailure when f contains NaN/Inf. `what` names the producer.
void require_finite(const ScalarField& f, const char* what);

}  // namespace regionctl
