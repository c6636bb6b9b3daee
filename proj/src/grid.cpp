#include "crackfd/grid.hpp"

#include <cmath>

namespace crackfd {

std::string to_string(const RunStatus& status) {
    if (status.completed()) {
        return "Completed";
    }
    return "BlownUpAt:" + std::to_string(*status.blown_up_at);
}

double node_length(std::size_t i, const Grid& grid) {
    if (i > grid.lmax) {
        throw ContractViolation("node index " + std::to_string(i) + " outside [0, " +
                                std::to_string(grid.lmax) + "]");
    }
    return static_cast<double>(i) * grid.dl;
}

std::vector<std::string> validate(const Params& params, const Grid& grid) {
    std::vector<std::string> violations;
    auto check = [&](bool ok, const char* what) {
        if (!ok) violations.emplace_back(what);
    };

    check(std::isfinite(params.alpha), "alpha finite");
    check(std::isfinite(params.beta), "beta finite");
    check(std::isfinite(params.v_sigma), "v_sigma finite");
    // NaN fails the finiteness check above; the comparisons below stay quiet for it.
    check(!(params.alpha < 0.0), "alpha >= 0");
    check(!(params.beta <= 0.0), "beta > 0");
    check(!(params.v_sigma < 0.0), "v_sigma >= 0");

    check(std::isfinite(grid.dl), "dl finite");
    check(std::isfinite(grid.dt), "dt finite");
    check(!(grid.dl <= 0.0), "dl > 0");
    check(!(grid.dt <= 0.0), "dt > 0");
    check(grid.lmax >= 3, "lmax >= 3");
    check(grid.tmax >= 1, "tmax >= 1");
    return violations;
}

void require_valid(const Params& params, const Grid& grid) {
    const auto violations = validate(params, grid);
    if (violations.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) {
        msg += " [" + v + "]";
    }
    throw ContractViolation(msg);
}

}  // namespace crackfd
