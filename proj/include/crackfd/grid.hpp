#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crackfd {

/// Raised when an operation is called outside its documented domain.
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * Physical constants of the crack growth law.
 *
 *   alpha   crack-resistance coefficient [length/time]
 *   beta    growth coefficient [1/(stress^2 time)]
 *   v_sigma loading speed of the stress ramp [stress/time]
 *
 * Units live in documentation only; all values are plain reals.
 */
struct Params {
    double alpha{1.0};
    double beta{1.0};
    double v_sigma{1.0};
};

/**
 * Uniform discretization in crack length and time.
 *
 * Node i sits at l = i*dl for i in [0, lmax]; level n sits at t = n*dt for
 * n in [0, tmax). Node 0 (l = 0) is singular for the stencils and is never
 * updated.
 */
struct Grid {
    double dl{0.05};
    double dt{0.001};
    std::size_t lmax{200};
    std::size_t tmax{3000};

    std::size_t node_count() const { return lmax + 1; }
    double domain_length() const { return static_cast<double>(lmax) * dl; }
};

/// Distribution samples f(i*dl) at one time level.
template <std::floating_point T>
struct Field {
    std::vector<T> values;
    std::size_t time_index{0};

    bool operator==(const Field&) const = default;
};

/// Terminal state of a time-marching run.
struct RunStatus {
    std::optional<std::size_t> blown_up_at;

    bool completed() const { return !blown_up_at.has_value(); }
    bool operator==(const RunStatus&) const = default;

    static RunStatus done() { return {}; }
    static RunStatus blown_up(std::size_t level) { return {level}; }
};

/// "Completed" or "BlownUpAt:N".
std::string to_string(const RunStatus& status);

/// Stride-decimated sequence of fields, strictly increasing in time_index.
template <std::floating_point T>
struct Trajectory {
    std::vector<Field<T>> snapshots;
    std::size_t stride{1};
    RunStatus status;
};

/// Physical length of node i: exactly one multiplication i*dl.
double node_length(std::size_t i, const Grid& grid);

/// Physical time of level n: n*dt.
inline double level_time(std::size_t n, const Grid& grid) {
    return static_cast<double>(n) * grid.dt;
}

/// Every violated invariant of params and grid; empty means valid.
std::vector<std::string> validate(const Params& params, const Grid& grid);

/// Throws ContractViolation listing all violations, if any.
void require_valid(const Params& params, const Grid& grid);

}  // namespace crackfd
