#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "crackfd/grid.hpp"

namespace crackfd {

/// Indicator of [l_lo, l_hi] (endpoints inclusive) scaled by amplitude.
struct StepWise {
    double amplitude{1.0};
    double l_lo{0.0};
    double l_hi{1.0};
};

/// amplitude * exp(-decay * l).
struct Exponential {
    double amplitude{1.0};
    double decay{1.0};
};

using InitialCondition = std::variant<StepWise, Exponential>;

std::vector<std::string> validate(const InitialCondition& ic);

/// Closed form of the initial distribution at any real l >= 0.
double initial_value(const InitialCondition& ic, double l);

/// Stress of the linear ramp at level n: v_sigma * (n * dt).
template <std::floating_point T = double>
T sigma_at(std::size_t t_index, const Grid& grid, const Params& params) {
    return static_cast<T>(params.v_sigma) *
           (static_cast<T>(t_index) * static_cast<T>(grid.dt));
}

// The gate and the velocity keep two different association orders on purpose:
// (l*sigma^2)*beta for the gate, (l*beta)*sigma^2 for the velocity.

/// Strict gate: beta*l*sigma^2 - alpha > 0.
template <std::floating_point T = double>
bool growth_active(T l, T sigma, const Params& params) {
    const T s2 = sigma * sigma;
    return l * s2 * static_cast<T>(params.beta) - static_cast<T>(params.alpha) > T(0);
}

/// Rice-Griffith velocity: -alpha + beta*l*sigma^2 above the threshold, else 0.
template <std::floating_point T = double>
T crack_velocity(T l, T sigma, const Params& params) {
    if (!growth_active(l, sigma, params)) return T(0);
    const T s2 = sigma * sigma;
    return std::max(T(0), l * static_cast<T>(params.beta) * s2 - static_cast<T>(params.alpha));
}

/// Samples the initial condition on every node (computed in binary64, rounded once to T).
template <std::floating_point T = double>
Field<T> initial_field(const InitialCondition& ic, const Grid& grid) {
    Field<T> field;
    field.time_index = 0;
    field.values.resize(grid.node_count());
    for (std::size_t i = 0; i <= grid.lmax; ++i) {
        field.values[i] = static_cast<T>(initial_value(ic, node_length(i, grid)));
    }
    return field;
}

}  // namespace crackfd
