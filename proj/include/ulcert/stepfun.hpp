#pragma once

#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"

namespace ulcert {

// Growth / weight functions Phi and Psi, exact rational values at positive
// integers:
//   constant(c)        t -> c
//   reciprocal_log     t -> 1 / floor(log2(t+1))
//   power(a)           t -> t^a            (a may be negative, e.g. 1/t)
//   power(a, b)        t -> floor(t^(a/b)) (b > 1 requires a >= 1)
//   table(v_1..v_n)    t -> v_{(t-1) mod n + 1}  (periodic repetition)
struct StepFunctionSpec {
  enum class Kind { constant, reciprocal_log, power, table };

  Kind kind = Kind::constant;
  Rat c = 1;
  long num = 1, den = 1;
  std::vector<Rat> values;

  static StepFunctionSpec constant(const Rat& v);
  static StepFunctionSpec reciprocal_log();
  static StepFunctionSpec power(long a, long b = 1);
  static StepFunctionSpec table(std::vector<Rat> v);

  Rat eval(const Int& t) const;  // t >= 1

  // True for kinds that are nonincreasing (constant, reciprocal_log,
  // power with a <= 0); lets choose_Q use K = 1 without scanning.
  bool nonincreasing() const;
  // Valid as a Phi: nondecreasing and unbounded (power with a >= 1).
  bool nondecreasing_unbounded() const;

  // Phi^{-1}(x) = min{ t : Phi(y) >= x for all y >= t }; for the nondecreasing
  // kinds this is the smallest t with eval(t) >= x. Requires
  // nondecreasing_unbounded().
  Int inverse_at_least(const Rat& x) const;

  // "const:3/2" | "recip_log" | "pow:2" | "pow:1/2" | "pow:-1" | "table:1,2,1"
  static StepFunctionSpec parse(const std::string& s);
  std::string describe() const;
};

}  // namespace ulcert
