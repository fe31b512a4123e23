#pragma once

#include <cmath>
#include <numbers>

#include "regionctl/grid.hpp"

namespace regionctl {

/// H_sigma(s) = (1 + (2/pi) atan(s/sigma)) / 2 — smooth Heaviside surrogate.
inline double mollified_heaviside(double s, double sigma) {
    return 0.5 * (1.0 + (2.0 / std::numbers::pi) * std::atan(s / sigma));
}

/// delta_sigma(s) = sigma / (pi (sigma^2 + s^2)) — derivative of H_sigma.
inline double mollified_delta(double s, double sigma) {
    return sigma / (std::numbers::pi * (sigma * sigma + s * s));
}

inline ScalarField heaviside_field(const ScalarField& phi, double sigma) {
    ScalarField out(phi.grid());
    for (int k = 0; k < phi.size(); ++k) out[k] = mollified_heaviside(phi[k], sigma);
    return out;
}

inline ScalarField delta_field(const ScalarField& phi, double sigma) {
    ScalarField out(phi.grid());
    for (int k = 0; k < phi.size(); ++k) out[k] = mollified_delta(phi[k], sigma);
    return out;
}

}  // namespace regionctl
