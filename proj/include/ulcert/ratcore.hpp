#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace ulcert {

using Int = mpz_class;
using Rat = mpq_class;  // mpq_class keeps lowest terms and a positive denominator

// Accepts "a/b", plain integers "a", and decimal literals "0.25". Throws
// std::invalid_argument on anything else (including b = 0).
Rat parse_rat(const std::string& s);

// Exact "num/den" form, den always printed (so "7" serializes as "7/1").
std::string rat_str(const Rat& x);

double rat_approx(const Rat& x);

Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);

// x - floor(x), in [0, 1).
Rat frac_part(const Rat& x);

// ||x||: distance to the nearest integer, in [0, 1/2]. Exactly 1/2 at
// half-integers (the tie is symmetric, no break needed).
Rat nearest_dist(const Rat& x);

// Closed interval [lo, hi] with rational endpoints; degenerate (lo == hi) legal.
struct RatInterval {
  Rat lo, hi;

  RatInterval() = default;
  RatInterval(Rat l, Rat h);  // throws std::invalid_argument unless lo <= hi

  Rat width() const { return hi - lo; }
  Rat mid() const;
  bool degenerate() const { return lo == hi; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  // o inside the open interior (strict at both ends)
  bool strictly_contains(const RatInterval& o) const { return lo < o.lo && o.hi < hi; }
};

// inf / sup of ||n*x|| over x in X, exact. n*X is an interval; the inf is 0 iff
// n*X meets an integer, else an endpoint value; the sup is 1/2 iff n*X meets a
// half-integer, else an endpoint value.
Rat nearest_dist_lower(const RatInterval& X, const Int& n);
Rat nearest_dist_upper(const RatInterval& X, const Int& n);

// Finite continued fraction [integer_part; a_1, ..., a_k], all a_i >= 1.
// canonical == the word is empty or ends with a quotient >= 2; every rational
// has exactly one canonical and one non-canonical word.
struct CFWord {
  Int integer_part;
  std::vector<Int> quotients;
  bool canonical = true;
};

// Euclidean expansion; always returns the canonical word.
CFWord cf_expand(const Rat& x);

Rat cf_value(const CFWord& w);

// Convergents (p_k, q_k), k = 0..len(quotients); the 0th pair is
// (integer_part, 1). Each pair is automatically in lowest terms and q_k is
// strictly increasing from k = 2 on.
std::vector<std::pair<Int, Int>> convergents(const CFWord& w);

// The other finite representation of the same value:
//   [a0; ..., a_k] (a_k >= 2)  <->  [a0; ..., a_k - 1, 1]
//   [a0;]                      <->  [a0 - 1; 1]
// Involution; flips the canonical flag.
CFWord non_canonical_twin(const CFWord& w);

// Irrational (or, with empty period, rational) number given by an eventually
// periodic continued fraction [integer_part; prefix..., (period...) repeating].
struct CFSpec {
  Int integer_part = 0;
  std::vector<Int> prefix;
  std::vector<Int> period;

  bool is_rational() const { return period.empty(); }
  Int quotient(std::size_t i) const;  // i >= 1, one-based like a_i
  Int max_quotient() const;           // max over prefix and period (1 if none)
  // Interval with rational endpoints containing the value, of width < target.
  // For rationals: the degenerate exact point.
  RatInterval enclosure(const Rat& width_below) const;
  Rat value_rational() const;  // only for is_rational()

  static CFSpec golden();  // [0; 1,1,1,...]
  static CFSpec sqrt2();   // [1; 2,2,2,...]
  // "golden", "sqrt2", or "cf:INT:a,b:c,d" meaning [INT; a,b, (c,d) repeating]
  // (prefix part may be empty: "cf:0::2").
  static CFSpec parse(const std::string& s);
  std::string describe() const;
};

}  // namespace ulcert
