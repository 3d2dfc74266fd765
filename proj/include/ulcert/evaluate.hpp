#pragma once

#include <vector>

#include "ulcert/ratcore.hpp"
#include "ulcert/stepfun.hpp"

namespace ulcert {

// All evaluators take 1 to 4 coordinates (covers the two- and three-variable
// problems with one spare); anything else throws std::invalid_argument.

// Q * min_{1<=n<=Q} prod_i ||n*x_i||, exact.
Rat dmin(const std::vector<Rat>& xs, const Int& Q);

// Same minimization with a rational Q: the range is n <= floor(Q) but the
// prefactor stays the exact Q. Certificates with rational Q_k compare
// against this.
Rat dmin_ratQ(const std::vector<Rat>& xs, const Rat& Q);

// Certified lower bound over an enclosure rectangle:
// Q * min_{1<=n<=Q} prod_i nearest_dist_lower(X_i, n) <= dmin(point, Q) for
// every point of the rectangle.
Rat dmin_lower(const std::vector<RatInterval>& Xs, const Int& Q);
Rat dmin_lower_ratQ(const std::vector<RatInterval>& Xs, const Rat& Q);

// (Q / psi(Q)) * min_{1<=n<=Q} prod_i ||n*x_i||.
Rat weighted_min(const std::vector<Rat>& xs, const Int& Q, const StepFunctionSpec& psi);

struct ProfileEntry {
  Int Q;
  Rat inner_min;  // min_{n<=Q} of the product; nonincreasing in Q
  Rat value;      // Q * inner_min
};

std::vector<ProfileEntry> profile(const std::vector<Rat>& xs, const std::vector<Int>& Qs);
std::vector<ProfileEntry> profile_lower(const std::vector<RatInterval>& Xs,
                                        const std::vector<Int>& Qs);

}  // namespace ulcert
