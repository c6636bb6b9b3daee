#include "crackfd/physics.hpp"

#include <cmath>

namespace crackfd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

std::vector<std::string> validate(const InitialCondition& ic) {
    std::vector<std::string> violations;
    std::visit(overloaded{
                   [&](const StepWise& s) {
                       if (!std::isfinite(s.amplitude) || !std::isfinite(s.l_lo) ||
                           !std::isfinite(s.l_hi))
                           violations.emplace_back("step parameters finite");
                       if (s.amplitude < 0.0) violations.emplace_back("amp >= 0");
                       if (s.l_lo < 0.0) violations.emplace_back("l_lo >= 0");
                       if (!(s.l_lo < s.l_hi)) violations.emplace_back("l_lo < l_hi");
                   },
                   [&](const Exponential& e) {
                       if (!std::isfinite(e.amplitude) || !std::isfinite(e.decay))
                           violations.emplace_back("exponential parameters finite");
                       if (e.amplitude < 0.0) violations.emplace_back("amp >= 0");
                       if (!(e.decay > 0.0)) violations.emplace_back("decay > 0");
                   },
               },
               ic);
    return violations;
}

double initial_value(const InitialCondition& ic, double l) {
    return std::visit(overloaded{
                          [l](const StepWise& s) {
                              return (s.l_lo <= l && l <= s.l_hi) ? s.amplitude : 0.0;
                          },
                          [l](const Exponential& e) { return e.amplitude * std::exp(-e.decay * l); },
                      },
                      ic);
}

}  // namespace crackfd
