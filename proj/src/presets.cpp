#include "regionctl/presets.hpp"

#include <cmath>
#include <numbers>

namespace regionctl {
namespace presets {

namespace {
constexpr double pi = std::numbers::pi;
}

double experiment1_kernel(double x1, double x2, double xp1, double xp2) {
    const double k1 = x1 * x1 * std::sin(pi * x1) + x2 * x2 * std::sin(pi * x2);
    const double k2 = 100.0 * (xp1 * xp1 * std::cos(pi * xp1) + xp2 * xp2 * std::cos(pi * xp2));
    return std::abs(k1 * k2);
}

double experiment2_kernel(double x1, double x2, double xp1, double xp2) {
    const double k1 = 500.0 * std::sin(3.0 * pi * x1) * std::cos(5.0 * pi * x2) *
                      std::exp(-(x1 - x2 - 0.2) * (x1 - x2 - 0.2) -
                               3.0 * (x1 - x2 - 0.8) * (x1 - x2 - 0.8));
    const double k2 = 500.0 * std::sin(5.0 * pi * xp1) * std::cos(3.0 * pi * xp2) *
                      std::exp(-5.0 * (xp1 - 0.2) * (xp1 - 0.2) - (xp2 - 0.8) * (xp2 - 0.8));
    return std::abs(k1 * k2);
}

double initial_level_set(double x1, double x2) {
    return std::exp(-3.0 * (x1 - 0.5) * (x1 - 0.5) - 3.0 * (x2 - 0.5) * (x2 - 0.5)) +
           std::sin(3.0 * pi * x1) * std::sin(5.0 * pi * x2) - 0.75;
}

ScalarField initial_level_set_field(const Grid& g) {
    return ScalarField::sample(g, initial_level_set);
}

ScalarField half_domain_indicator(const Grid& g) {
    const double mid = 0.5 * (g.bounds().x_min + g.bounds().x_max);
    return ScalarField::sample(g, [mid](double x, double) { return x < mid ? 1.0 : 0.0; });
}

}  // namespace presets
}  // namespace regionctl
