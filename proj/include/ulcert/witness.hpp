#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"

namespace ulcert {

struct SearchConfig {
  RatInterval I, J;  // both inside (1/10, 9/10), positive width
  Rat tau;           // > 1
  long m = 5;
  std::uint64_t T_lo = 2, T_hi = 0;  // prime range for q and s
  std::uint64_t max_witnesses = 16;
  Rat left_margin = 0;  // search targets [lo, hi - left_margin] of I and J

  void validate() const;  // throws std::invalid_argument listing violations
};

struct Quadruple {
  Int p, q, r, s;
};

struct WitnessCertificate {
  Quadruple quad;
  Rat ratio;  // q/s
  CFWord cf_ps_over_q;  // expansion of {p*s/q} = u/q
  CFWord cf_qr_over_s;  // expansion of {q*r/s} = v/s
  std::map<std::string, bool> checks;  // C1, C2, C3, reducedness, primality
  bool all_ok() const;
};

// Searches primes q, s in [T_lo, T_hi] with 1/tau < q/s < tau, q != s:
// u in M_q(m) gives p = u s^{-1} mod q (kept if p/q lands in the shrunk I),
// v in M_s(m) gives r = v q^{-1} mod s (kept if r/s lands in the shrunk J).
// Emits up to max_witnesses fully verified certificates in lexicographic
// (q, s, p, r) order. Empty result is not an error.
std::vector<WitnessCertificate> find_witnesses(const SearchConfig& cfg);

// Recomputes every condition from scratch out of ratcore/zaremba primitives;
// shares no state with the search.
WitnessCertificate verify_witness(const Quadruple& quad, const RatInterval& I,
                                  const RatInterval& J, const Rat& tau, long m);

}  // namespace ulcert
