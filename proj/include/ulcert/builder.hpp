#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"
#include "ulcert/witness.hpp"

namespace ulcert {

struct BuilderParams {
  long m = 5;
  Rat tau, d, alpha, beta;
  long steps = 1;
  SearchConfig search;  // prime-range template; I/J are driven by the state

  static Rat default_alpha(const Rat& beta);  // beta * (1 - 10^-6)
};

// Every constraint violation, exactly checked; empty list means ok. tau = 1 is
// accepted here (the optimizer's limit point); running the construction needs
// tau > 1 or no witness can satisfy the strict ratio condition.
std::vector<std::string> validate_params(const BuilderParams& p);

// min{ (1 - beta d)^2 d , alpha d ((m+2)^{-1} - beta tau^{-1} d^2) / tau^2 },
// exact. Requires validate_params ok.
Rat analytic_bound(const BuilderParams& p);

struct LevelEntry {
  Quadruple quad;       // the witness consumed at this level
  Rat Qk;               // tau^{-1} d q_k s_k, exact
  RatInterval I, J;     // the intervals after the step (level k+1)
};

struct ConstructionState {
  long k = 0;           // number of steps taken
  RatInterval I, J;     // current intervals
  std::vector<LevelEntry> history;
};

ConstructionState initial_state(const RatInterval& I0, const RatInterval& J0);

struct WitnessNotFound : std::runtime_error {
  std::uint64_t searched_hi;
  ConstructionState partial;
  WitnessNotFound(const std::string& what, std::uint64_t hi, ConstructionState st)
      : std::runtime_error(what), searched_hi(hi), partial(std::move(st)) {}
};

// One nesting step: finds the lexicographically (q, s, p, r) smallest witness
// whose intervals fit (p/q >= I.lo and p/q + beta q^{-3} <= I.hi, same for
// r/s in J), then sets I <- [p/q + alpha q^{-3}, p/q + beta q^{-3}] and J
// likewise. The denominator cap doubles in stages; a stage covers every
// q <= cap, so the first nonempty stage already contains the global minimum.
ConstructionState step(const ConstructionState& st, const BuilderParams& p);

struct StepCertificate {
  long k = 0;
  Rat Qk;
  Rat analytic;         // analytic_bound for comparison; not a bound on certified
  Rat certified_lower;  // exact; valid for every (xi, zeta) in the enclosures
  Int argmin_n;
  std::string argmin_case;  // generic | multiple_of_pq | multiple_of_rs
  std::map<std::string, Rat> case_min;  // per-case minimum over its n's
};

struct CertifyInconclusive : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// L = Q_k * min_{1<=n<=floor(Q_k)} ndl(I_now, n) * ndl(J_now, n) over the
// state's current (narrowest) intervals. Throws CertifyInconclusive when the
// enclosure is too wide for level k (needs width < min(q_k^-3, s_k^-3)) or
// when L = 0; otherwise L > 0 and the invariant holds for the whole rectangle.
StepCertificate certify(const ConstructionState& st, const BuilderParams& p, long k);

struct RunResult {
  ConstructionState state;
  std::vector<StepCertificate> certs;  // levels 0 .. steps-2
  RatInterval xi, zeta;                // final enclosures (= state.I, state.J)
  std::string status;                  // "ok" | "no-certifiable-level"
};

// steps nesting steps from I0 = J0 = [1/5, 4/5] (or the search config's I, J),
// then certificates for levels 0..steps-2, each against the final enclosure.
RunResult run(const BuilderParams& p);

}  // namespace ulcert
