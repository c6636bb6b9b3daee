#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "crackfd/grid.hpp"
#include "crackfd/solver.hpp"

namespace crackfd {

enum class NormKind { L1, L2, Linf };

/// Which nodes enter a norm. Interior drops the two frozen boundary nodes.
enum class NodeSet { All, Interior };

/// Trapezoid quadrature of l^k f(l) over [0, lmax*dl], k in {0, 1, 2, 3}.
double moment(std::span<const double> values, const Grid& grid, int k);

template <std::floating_point T>
double moment(const Field<T>& field, const Grid& grid, int k) {
    const std::vector<double> wide(field.values.begin(), field.values.end());
    return moment(std::span<const double>(wide), grid, k);
}

/**
 * Discrete norm of a - b. L1 and L2 use trapezoid weights (exact on
 * constants), Linf is the max-abs. With NodeSet::Interior the boundary
 * differences are treated as zero.
 */
double norm_error(const Field<double>& a, const Field<double>& b, const Grid& grid, NormKind p,
                  NodeSet nodes = NodeSet::All);

/// Sum of |f[i+1] - f[i]| over adjacent pairs.
template <std::floating_point T>
double total_variation(std::span<const T> values) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        tv += std::abs(static_cast<double>(values[i + 1]) - static_cast<double>(values[i]));
    }
    return tv;
}

template <std::floating_point T>
double total_variation(const Field<T>& field) {
    return total_variation(std::span<const T>(field.values));
}

/// Widens a field to binary64 (exact for binary32 input).
template <std::floating_point T>
Field<double> widen(const Field<T>& field) {
    return {std::vector<double>(field.values.begin(), field.values.end()), field.time_index};
}

struct ComparisonRecord {
    std::size_t time_index{0};
    double l1_error{0.0};
    double l2_error{0.0};
    double linf_error{0.0};
    double second_moment_numeric{0.0};
    double second_moment_analytic{0.0};
    double total_variation{0.0};
};

struct ComparisonReport {
    std::vector<ComparisonRecord> records;
    RunStatus status;
};

/// Runs config and scores every stored snapshot against the closed-form field (interior nodes).
ComparisonReport compare_run(const RunConfig& config);

/// Same scoring for an already computed trajectory.
template <std::floating_point T>
ComparisonReport compare_trajectory(const Trajectory<T>& trajectory, const RunConfig& config);

inline constexpr std::array<double, 3> kDivergenceThresholds{1e-6, 1e-3, 1e-1};

struct DivergenceRecord {
    std::size_t time_index{0};
    double relative_l2{0.0};
};

struct PrecisionReport {
    RunStatus status_f32;
    RunStatus status_f64;
    std::vector<DivergenceRecord> divergence;
    /// First common level whose divergence exceeds kDivergenceThresholds[k].
    std::array<std::optional<std::size_t>, 3> first_exceeding;
};

/// ||a - b||_2 / ||b||_2 over interior nodes; 0 when both vanish, +inf when only b does.
double relative_l2_divergence(const Field<double>& a, const Field<double>& b);

/// Builds a report from two already computed trajectories with equal stride.
PrecisionReport compare_precisions(const Trajectory<float>& f32, const Trajectory<double>& f64);

/// Runs config at binary32 and binary64 (concurrently) and measures their divergence.
PrecisionReport precision_experiment(const RunConfig& config);

}  // namespace crackfd
