#pragma once

#include <map>
#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"
#include "ulcert/stepfun.hpp"

namespace ulcert {

// A badly approximable tuple zeta (one CF-defined component per coordinate)
// together with a certified constant C:
//   prod_i ||s zeta_i|| >= C * Psi(s) / s  for all s >= 1.
struct BadTupleSpec {
  std::vector<CFSpec> components;
  Rat C;
};

// C = min( 1/(a+2), exact scan of s * ||s zeta|| over s <= scan_to ), where a
// bounds the quotients. The 1/(a+2) floor is valid for every s (for
// q_k <= s < q_{k+1}, ||s zeta|| >= 1/(q_{k+1} + q_k) >= 1/((a+2) s)); the
// scan can only confirm or lower it. Single component with Psi = 1 only.
Rat bad_constant(const BadTupleSpec& spec, const Int& scan_to);

// Smallest Q with Phi(Q) > q and Psi(Q) <= K * min_{0<t<=Q} Psi(t). Throws
// std::runtime_error past the cutoff.
Int choose_Q(const Int& q, const StepFunctionSpec& phi, const StepFunctionSpec& psi,
             const Rat& K, const Int& cutoff = 1000000);

// Smallest power of 2 (including 1) making the choose_Q condition satisfiable
// for every level start; K = 1 immediately for nonincreasing Psi.
Rat choose_K(const StepFunctionSpec& psi, const Int& scan_to);

struct TwistedLevel {
  Int p, q;       // the level's base fraction p/q
  Int Qk;         // choose_Q(q)
  RatInterval I;  // [p/q + (1/6) q^{-1} Q^{-1}, p/q + (1/3) q^{-1} Q^{-1}]
  Rat certified;  // exact value of (Q Phi(Q)/Psi(Q)) min_n lower(...) products
  Int argmin_n;
  std::string argmin_case;  // multiple_of_pq | generic
  std::map<std::string, Rat> case_min;
};

struct TwistedTrace {
  std::vector<TwistedLevel> levels;
  Rat C, K;
  RatInterval xi;  // final enclosure
  Rat threshold;   // C / (6K)
};

// Iterates the nested intervals: at each level the smallest q (then smallest
// p, gcd(p,q)=1) whose window fits strictly inside the current interval, with
// Q = choose_Q(q). Certifies every level over its own interval (every deeper
// xi lies inside it) and zeta enclosures of width < Q^{-3} (refined once and
// retried if a level comes out below C/(6K)).
TwistedTrace build_and_certify(const BadTupleSpec& spec, const StepFunctionSpec& phi,
                               const StepFunctionSpec& psi, long levels);

}  // namespace ulcert
