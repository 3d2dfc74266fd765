#pragma once

#include <gmpxx.h>

#include <optional>

#include "ulcert/ratcore.hpp"

namespace ulcert {

// Two-branch objective at tau = 1, alpha = beta:
//   min{ (1 - beta d)^2 d,  beta d (1/(m+2) - beta d^2) }
// Negative or infeasible (beta d >= 1, beta d^2 >= 1/(m+2)) inputs return 0;
// the optimum is interior so the sentinel never binds at the solution.
mpf_class objective(long m, const mpf_class& d, const mpf_class& beta);

// For fixed d, the beta equating the two branches: smaller root of
// 2 b^2 d^2 - b (2 d + 1/(m+2)) + 1 = 0. nullopt when the discriminant is
// negative (branches never meet).
std::optional<mpf_class> beta_equilibrium(long m, const mpf_class& d);

struct OptResult {
  long m = 0;
  mpf_class d_star, beta_star;
  mpf_class bound;       // objective at the optimum
  mpf_class branch_gap;  // |branch1 - branch2| at the optimum
};

// Golden-section over d with beta on the equilibrium curve, then a local 2-D
// refinement; 256-bit floats throughout, relative tolerance 1e-12 on d.
// Postconditions checked: interior optimum, branch_gap <= 1e-9 * bound,
// bound > 1/(4(m+2)).
OptResult solve(long m);

}  // namespace ulcert
