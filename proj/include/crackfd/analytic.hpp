#pragma once

#include <stdexcept>

#include "crackfd/grid.hpp"
#include "crackfd/physics.hpp"

namespace crackfd {

/// Argument outside the domain of a special function or of the closed-form solution.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/**
 * Lower incomplete gamma function
 *
 *     gamma(a, x) = int_0^x s^(a-1) e^(-s) ds,   a > 0, x >= 0.
 *
 * Power series for x < a + 1, Lentz continued fraction of the upper function
 * otherwise (gamma = Gamma(a) - Gamma(a, x)). Relative error stays below
 * 1e-12 for a in [1/4, 2], x in [0, 50].
 */
double lower_incomplete_gamma(double a, double x);

/**
 * Time-dependent pieces of the closed-form solution at physical time t:
 *
 *   b_coeff      = beta v^2 / 3
 *   decay_factor = exp(-b_coeff t^3)
 *   gamma_term   = alpha / (9 beta v^2)^(1/3) * gamma(1/3, b_coeff t^3)
 *
 * The characteristic through (l, t) starts at l * decay_factor + gamma_term.
 */
struct CharacteristicState {
    double b_coeff{0.0};
    double decay_factor{1.0};
    double gamma_term{0.0};
};

/// Throws DomainError for t < 0 or v_sigma == 0 (the cube root degenerates).
CharacteristicState characteristic_state(double t, const Params& params);

/**
 * Closed-form distribution at (l, t), l > 0.
 *
 * Where alpha <= beta v^2 l t^2 the value is transported along the
 * characteristic, l^-2 * decay * F(l*decay + gamma_term) with F(x) = x^2 f0(x);
 * elsewhere it is the initial value f0(l).
 */
double analytic_solution(double l, double t, const Params& params, const InitialCondition& ic);

/// Overload reusing a precomputed state for time t.
double analytic_solution(double l, double t, const CharacteristicState& state,
                         const Params& params, const InitialCondition& ic);

/// Closed-form field at level t_index. Node 0 holds f0(0) as untransported boundary data.
Field<double> analytic_field(std::size_t t_index, const Grid& grid, const Params& params,
                             const InitialCondition& ic);

}  // namespace crackfd
