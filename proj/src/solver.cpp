#include "crackfd/solver.hpp"

namespace crackfd {

std::vector<std::string> validate(const RunConfig& config) {
    auto violations = validate(config.params, config.grid);
    for (auto& v : validate(config.ic)) {
        violations.push_back(std::move(v));
    }
    if (config.stride < 1) violations.emplace_back("stride >= 1");
    if (!(config.blowup_threshold > 0.0)) violations.emplace_back("blowup_threshold > 0");
    return violations;
}

template <std::floating_point T>
Trajectory<T> run_as(const RunConfig& config) {
    if (const auto violations = validate(config); !violations.empty()) {
        std::string msg = "invalid run configuration:";
        for (const auto& v : violations) msg += " [" + v + "]";
        throw ContractViolation(msg);
    }
    const Grid& grid = config.grid;

    Trajectory<T> trajectory;
    trajectory.stride = config.stride;

    Field<T> current = initial_field<T>(config.ic, grid);
    trajectory.snapshots.push_back(current);
    if (blowup_check(current, config.blowup_threshold) == BlowupState::BlownUp) {
        trajectory.status = RunStatus::blown_up(0);
        return trajectory;
    }

    const std::size_t last_level = grid.tmax - 1;
    for (std::size_t n = 0; n < last_level; ++n) {
        current = step(config.scheme, current, n, grid, config.params, config.options);
        const std::size_t level = n + 1;

        if (blowup_check(current, config.blowup_threshold) == BlowupState::BlownUp) {
            trajectory.snapshots.push_back(std::move(current));
            trajectory.status = RunStatus::blown_up(level);
            return trajectory;
        }
        if (level % config.stride == 0 || level == last_level) {
            trajectory.snapshots.push_back(current);
        }
    }
    trajectory.status = RunStatus::done();
    return trajectory;
}

template Trajectory<float> run_as<float>(const RunConfig&);
template Trajectory<double> run_as<double>(const RunConfig&);

AnyTrajectory run(const RunConfig& config) {
    if (config.precision == Precision::Binary32) {
        return run_as<float>(config);
    }
    return run_as<double>(config);
}

std::string to_string(SchemeKind scheme) {
    return scheme == SchemeKind::Ftcs ? "ftcs" : "upwind";
}

std::string to_string(Precision precision) {
    return precision == Precision::Binary32 ? "f32" : "f64";
}

}  // namespace crackfd
