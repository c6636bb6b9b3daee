#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "crackfd/grid.hpp"
#include "crackfd/physics.hpp"

namespace crackfd {

enum class SchemeKind { Ftcs, Upwind };
enum class Precision { Binary32, Binary64 };

/// The stepper was handed a field that already contains non-finite values.
class BlownUpInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Per-step switches. The term toggles are test hooks; half_coefficient_compat
 * replaces the centered coefficient dt/(2 dl) by dt/dl, the form used by an
 * older transcription of the scheme.
 */
struct StepOptions {
    bool advection{true};
    bool source{true};
    bool half_coefficient_compat{false};
};

struct RunConfig {
    SchemeKind scheme{SchemeKind::Ftcs};
    Params params;
    Grid grid;
    InitialCondition ic{Exponential{}};
    std::size_t stride{10};
    double blowup_threshold{1e12};
    Precision precision{Precision::Binary64};
    StepOptions options;
};

std::vector<std::string> validate(const RunConfig& config);

/// BlownUp iff any value is non-finite or exceeds threshold in magnitude.
enum class BlowupState { Ok, BlownUp };

template <std::floating_point T>
BlowupState blowup_check(std::span<const T> values, double threshold) {
    for (const T v : values) {
        if (!std::isfinite(v) || std::abs(static_cast<double>(v)) > threshold) {
            return BlowupState::BlownUp;
        }
    }
    return BlowupState::Ok;
}

template <std::floating_point T>
BlowupState blowup_check(const Field<T>& field, double threshold) {
    return blowup_check(std::span<const T>(field.values), threshold);
}

namespace detail {

template <std::floating_point T>
void require_steppable(const Field<T>& field, std::size_t t_index, const Grid& grid) {
    if (field.values.size() != grid.node_count()) {
        throw ContractViolation("field has " + std::to_string(field.values.size()) +
                                " nodes, grid expects " + std::to_string(grid.node_count()));
    }
    if (field.time_index != t_index) {
        throw ContractViolation("field time_index " + std::to_string(field.time_index) +
                                " does not match step level " + std::to_string(t_index));
    }
    for (const T v : field.values) {
        if (!std::isfinite(v)) {
            throw BlownUpInput("non-finite value in field at level " + std::to_string(t_index));
        }
    }
}

// One explicit step. Every node update reads the old field only; the
// expressions follow the evaluation order of the reference double loop so that
// a direct transliteration reproduces the result bit for bit.
template <SchemeKind Scheme, std::floating_point T>
Field<T> explicit_step(const Field<T>& field, std::size_t t_index, const Grid& grid,
                       const Params& params, const StepOptions& opts) {
    require_steppable(field, t_index, grid);

    const T dl = static_cast<T>(grid.dl);
    const T dt = static_cast<T>(grid.dt);
    const T alpha = static_cast<T>(params.alpha);
    const T beta = static_cast<T>(params.beta);
    const T sigma = sigma_at<T>(t_index, grid, params);
    const T s2 = sigma * sigma;
    const T centered_span = opts.half_coefficient_compat ? dl : T(2) * dl;

    const auto& f = field.values;
    Field<T> out{f, t_index + 1};

    for (std::size_t i = 1; i < grid.lmax; ++i) {
        const T l = static_cast<T>(i) * dl;
        if (!growth_active(l, sigma, params)) continue;

        const T coeff = l * beta * s2 - alpha;
        T advection = T(0);
        if (opts.advection) {
            if constexpr (Scheme == SchemeKind::Ftcs) {
                advection = coeff * dt / centered_span * (f[i + 1] - f[i - 1]);
            } else if (coeff > T(0)) {
                advection = coeff * dt / dl * (f[i] - f[i - 1]);
            } else {
                advection = coeff * dt / dl * (f[i + 1] - f[i]);
            }
        }
        const T retained =
            opts.source ? f[i] * (T(1) - (T(3) * beta * s2 - T(2) * alpha / l) * dt) : f[i];
        out.values[i] = retained - advection;
    }
    return out;
}

}  // namespace detail

/**
 * Forward-time centered-space step from level t_index to t_index + 1.
 *
 * Interior nodes with active growth get
 *   f_i (1 - (3 beta s^2 - 2 alpha / l_i) dt) - (l_i beta s^2 - alpha) dt / (2 dl) (f_{i+1} - f_{i-1}),
 * with s the stress at t_index. Inactive nodes and both boundary nodes are copied.
 */
template <std::floating_point T>
Field<T> ftcs_step(const Field<T>& field, std::size_t t_index, const Grid& grid,
                   const Params& params, const StepOptions& opts = {}) {
    return detail::explicit_step<SchemeKind::Ftcs>(field, t_index, grid, params, opts);
}

/// Donor-cell variant: same source term, one-sided advective difference taken against the velocity.
template <std::floating_point T>
Field<T> upwind_step(const Field<T>& field, std::size_t t_index, const Grid& grid,
                     const Params& params, const StepOptions& opts = {}) {
    return detail::explicit_step<SchemeKind::Upwind>(field, t_index, grid, params, opts);
}

template <std::floating_point T>
Field<T> step(SchemeKind scheme, const Field<T>& field, std::size_t t_index, const Grid& grid,
              const Params& params, const StepOptions& opts = {}) {
    return scheme == SchemeKind::Ftcs ? ftcs_step(field, t_index, grid, params, opts)
                                      : upwind_step(field, t_index, grid, params, opts);
}

/**
 * Marches the initial field through tmax - 1 steps at precision T, ignoring
 * config.precision. Level 0 and the last computed level are always stored.
 * The run stops at the first level that fails blowup_check; that field is
 * stored as the final snapshot.
 */
template <std::floating_point T>
Trajectory<T> run_as(const RunConfig& config);

using AnyTrajectory = std::variant<Trajectory<float>, Trajectory<double>>;

/// Runs at config.precision.
AnyTrajectory run(const RunConfig& config);

extern template Trajectory<float> run_as<float>(const RunConfig&);
extern template Trajectory<double> run_as<double>(const RunConfig&);

std::string to_string(SchemeKind scheme);
std::string to_string(Precision precision);

}  // namespace crackfd
