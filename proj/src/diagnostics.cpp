#include "crackfd/diagnostics.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <map>
#include <string>

#include "crackfd/analytic.hpp"

namespace crackfd {

namespace {

double trapezoid(std::span<const double> integrand, double dl) {
    if (integrand.size() < 2) return 0.0;
    double interior = 0.0;
    for (std::size_t i = 1; i + 1 < integrand.size(); ++i) {
        interior += integrand[i];
    }
    return dl * (0.5 * integrand.front() + interior + 0.5 * integrand.back());
}

double integer_power(double base, int k) {
    double out = 1.0;
    for (int j = 0; j < k; ++j) out *= base;
    return out;
}

void require_same_shape(const Field<double>& a, const Field<double>& b, const Grid& grid) {
    if (a.values.size() != b.values.size() || a.values.size() != grid.node_count()) {
        throw ContractViolation("norm_error: fields of " + std::to_string(a.values.size()) + " and " +
                                std::to_string(b.values.size()) + " nodes on a grid of " +
                                std::to_string(grid.node_count()));
    }
    if (a.time_index != b.time_index) {
        throw ContractViolation("norm_error: time levels " + std::to_string(a.time_index) + " and " +
                                std::to_string(b.time_index) + " differ");
    }
}

}  // namespace

double moment(std::span<const double> values, const Grid& grid, int k) {
    if (k < 0 || k > 3) {
        throw ContractViolation("moment order must be in {0, 1, 2, 3}, got " + std::to_string(k));
    }
    if (values.size() != grid.node_count()) {
        throw ContractViolation("moment: field size does not match grid");
    }
    std::vector<double> integrand(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        integrand[i] = integer_power(node_length(i, grid), k) * values[i];
    }
    return trapezoid(integrand, grid.dl);
}

double norm_error(const Field<double>& a, const Field<double>& b, const Grid& grid, NormKind p,
                  NodeSet nodes) {
    require_same_shape(a, b, grid);
    const std::size_t n = a.values.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) {
        diff[i] = std::abs(a.values[i] - b.values[i]);
    }
    if (nodes == NodeSet::Interior) {
        diff.front() = 0.0;
        diff.back() = 0.0;
    }
    switch (p) {
        case NormKind::L1:
            return trapezoid(diff, grid.dl);
        case NormKind::L2: {
            for (double& d : diff) d *= d;
            return std::sqrt(trapezoid(diff, grid.dl));
        }
        case NormKind::Linf:
            return *std::max_element(diff.begin(), diff.end());
    }
    return 0.0;
}

template <std::floating_point T>
ComparisonReport compare_trajectory(const Trajectory<T>& trajectory, const RunConfig& config) {
    const Grid& grid = config.grid;
    ComparisonReport report;
    report.status = trajectory.status;
    report.records.reserve(trajectory.snapshots.size());

    for (const auto& snapshot : trajectory.snapshots) {
        const Field<double> numeric = widen(snapshot);
        const Field<double> exact = analytic_field(snapshot.time_index, grid, config.params, config.ic);

        ComparisonRecord rec;
        rec.time_index = snapshot.time_index;
        rec.l1_error = norm_error(numeric, exact, grid, NormKind::L1, NodeSet::Interior);
        rec.l2_error = norm_error(numeric, exact, grid, NormKind::L2, NodeSet::Interior);
        rec.linf_error = norm_error(numeric, exact, grid, NormKind::Linf, NodeSet::Interior);
        rec.second_moment_numeric = moment(std::span<const double>(numeric.values), grid, 2);
        rec.second_moment_analytic = moment(std::span<const double>(exact.values), grid, 2);
        rec.total_variation = total_variation(snapshot);
        report.records.push_back(rec);
    }
    return report;
}

template ComparisonReport compare_trajectory<float>(const Trajectory<float>&, const RunConfig&);
template ComparisonReport compare_trajectory<double>(const Trajectory<double>&, const RunConfig&);

ComparisonReport compare_run(const RunConfig& config) {
    if (config.params.v_sigma == 0.0) {
        throw DomainError("compare_run needs v_sigma > 0 for the closed-form reference");
    }
    return std::visit([&](const auto& trajectory) { return compare_trajectory(trajectory, config); },
                      run(config));
}

double relative_l2_divergence(const Field<double>& a, const Field<double>& b) {
    if (a.values.size() != b.values.size()) {
        throw ContractViolation("relative_l2_divergence: field sizes differ");
    }
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 1; i + 1 < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        num += d * d;
        den += b.values[i] * b.values[i];
    }
    if (num == 0.0) return 0.0;
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

PrecisionReport compare_precisions(const Trajectory<float>& f32, const Trajectory<double>& f64) {
    if (f32.stride != f64.stride) {
        throw ContractViolation("precision comparison needs equal strides");
    }
    PrecisionReport report;
    report.status_f32 = f32.status;
    report.status_f64 = f64.status;

    std::map<std::size_t, const Field<double>*> by_level;
    for (const auto& s : f64.snapshots) by_level.emplace(s.time_index, &s);

    for (const auto& s : f32.snapshots) {
        const auto it = by_level.find(s.time_index);
        if (it == by_level.end()) continue;
        const double div = relative_l2_divergence(widen(s), *it->second);
        report.divergence.push_back({s.time_index, div});
        for (std::size_t k = 0; k < kDivergenceThresholds.size(); ++k) {
            if (!report.first_exceeding[k] && div > kDivergenceThresholds[k]) {
                report.first_exceeding[k] = s.time_index;
            }
        }
    }
    return report;
}

PrecisionReport precision_experiment(const RunConfig& config) {
    auto f32 = std::async(std::launch::async, [&config] { return run_as<float>(config); });
    const auto f64 = run_as<double>(config);
    return compare_precisions(f32.get(), f64);
}

}  // namespace crackfd
