#pragma once

#include "regionctl/grid.hpp"
#include "regionctl/interaction.hpp"

namespace regionctl {
namespace presets {

/// Experiment-1 kernel: kappa(x,x') = |k1(x) k2(x')| with
///   k1 = x1^2 sin(pi x1) + x2^2 sin(pi x2)
///   k2 = 100 (x1'^2 cos(pi x1') + x2'^2 cos(pi x2'))
double experiment1_kernel(double x1, double x2, double xp1, double xp2);

/// Experiment-2 kernel: kappa(x,x') = |k1(x) k2(x')| with
///   k1 = 500 sin(3 pi x1) cos(5 pi x2) exp(-(x1-x2-0.2)^2 - 3 (x1-x2-0.8)^2)
///   k2 = 500 sin(5 pi x1') cos(3 pi x2') exp(-5 (x1'-0.2)^2 - (x2'-0.8)^2)
double experiment2_kernel(double x1, double x2, double xp1, double xp2);

/// Initial level set of both experiments:
///   exp(-3(x1-0.5)^2 - 3(x2-0.5)^2) + sin(3 pi x1) sin(5 pi x2) - 0.75
double initial_level_set(double x1, double x2);

ScalarField initial_level_set_field(const Grid& g);

/// Indicator of the left half of the domain (x1 < midpoint), sharp {0,1}.
ScalarField half_domain_indicator(const Grid& g);

}  // namespace presets
}  // namespace regionctl
