#include "crackfd/analytic.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace crackfd {

namespace {

constexpr double kTermTolerance = 1e-16;
constexpr int kMaxIterations = 10000;

// x^a e^-x / a * sum_n x^n / ((a+1)...(a+n))
double gamma_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int n = 0; n < kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * kTermTolerance) break;
    }
    return sum * std::exp(a * std::log(x) - x);
}

// Upper function Gamma(a, x) by modified Lentz evaluation of
// e^-x x^a (1/(x+1-a-) 1*(1-a)/(x+3-a-) 2*(2-a)/(x+5-a-) ...).
double upper_gamma_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kTermTolerance) break;
    }
    return std::exp(a * std::log(x) - x) * h;
}

}  // namespace

double lower_incomplete_gamma(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("lower_incomplete_gamma: a must be positive, got " + std::to_string(a));
    }
    if (!(x >= 0.0)) {
        throw DomainError("lower_incomplete_gamma: x must be >= 0, got " + std::to_string(x));
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return std::tgamma(a);
    if (x < a + 1.0) return gamma_series(a, x);
    return std::tgamma(a) - upper_gamma_fraction(a, x);
}

CharacteristicState characteristic_state(double t, const Params& params) {
    if (!(t >= 0.0)) {
        throw DomainError("characteristic_state: t must be >= 0");
    }
    if (params.v_sigma == 0.0) {
        throw DomainError("characteristic_state: degenerate loading, v_sigma = 0");
    }
    const double v2 = params.v_sigma * params.v_sigma;
    CharacteristicState state;
    state.b_coeff = params.beta * v2 / 3.0;
    const double x = state.b_coeff * t * t * t;
    state.decay_factor = std::exp(-x);
    state.gamma_term =
        params.alpha == 0.0
            ? 0.0
            : params.alpha / std::cbrt(9.0 * params.beta * v2) * lower_incomplete_gamma(1.0 / 3.0, x);
    return state;
}

double analytic_solution(double l, double t, const CharacteristicState& state,
                         const Params& params, const InitialCondition& ic) {
    if (l == 0.0) {
        throw DomainError("analytic_solution: singular at l = 0");
    }
    if (!(l > 0.0)) {
        throw DomainError("analytic_solution: l must be positive");
    }
    const bool moving = params.alpha <= params.beta * params.v_sigma * params.v_sigma * l * t * t;
    if (!moving) return initial_value(ic, l);

    const double u = l * state.decay_factor + state.gamma_term;
    return state.decay_factor * (u * u * initial_value(ic, u)) / (l * l);
}

double analytic_solution(double l, double t, const Params& params, const InitialCondition& ic) {
    return analytic_solution(l, t, characteristic_state(t, params), params, ic);
}

Field<double> analytic_field(std::size_t t_index, const Grid& grid, const Params& params,
                             const InitialCondition& ic) {
    require_valid(params, grid);
    const double t = level_time(t_index, grid);
    const auto state = characteristic_state(t, params);

    Field<double> field;
    field.time_index = t_index;
    field.values.resize(grid.node_count());
    field.values[0] = initial_value(ic, 0.0);
    for (std::size_t i = 1; i <= grid.lmax; ++i) {
        field.values[i] = analytic_solution(node_length(i, grid), t, state, params, ic);
    }
    return field;
}

}  // namespace crackfd
