#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"
#include "ulcert/stepfun.hpp"

namespace ulcert {

// S is either a finite set of primes or the complement of one.
struct SSpec {
  enum class Kind { include, exclude_finite };
  Kind kind = Kind::include;
  std::vector<Int> primes;  // distinct primes, ascending

  static SSpec include(std::vector<Int> ps);
  static SSpec exclude_finite(std::vector<Int> ps);
  // include lists must be nonempty; empty exclude lists (S = all primes) are
  // legal only when allow_empty_exclude.
  void validate(bool allow_empty_exclude = false) const;
  bool contains_prime(const Int& p) const;
  // "include:3,5" | "exclude:5"
  static SSpec parse(const std::string& s);
  std::string describe() const;
};

// |q|_S. include: prod_{p in S} p^{-v_p(q)} by factoring out the listed primes
// only. exclude_finite: (1/|q|) * prod_{p excluded} p^{v_p(q)} via the product
// formula; q is never fully factored. q = 0 rejected.
Rat s_norm(const Int& q, const SSpec& S);

Int p_valuation(Int q, const Int& p);  // v_p(q), q != 0

// ---------------------------------------------------------------------------
// p-adic construction

struct PadicParams {
  Int p;
  std::vector<Rat> beta_schedule;  // one beta per level, each in (0, 1/2)
  long depth = 1;

  void validate() const;
};

struct PadicLevel {
  Int a, u;            // center u / p^a, p never divides u
  Int Qk;              // p^a - 1
  Rat beta;
  RatInterval window;  // center +- beta p^{-2a} / 2
};

struct PadicConstruction {
  PadicParams params;
  std::vector<PadicLevel> levels;  // strictly nested windows
  RatInterval enclosure;           // innermost window
};

// Digit policy (deterministic): u_0 = 1 with a_0 = min{ a : beta_0 p^a >=
// 1 - beta_0 } (the smallest level-0 scale whose certificate can reach
// 1 - 2 beta_0); u_{k+1} = u_k + t p^{a_k} ... extended so that the top base-p
// digits of u_{k+1} are u_k's digits and the appended offset t is the smallest
// positive integer with p not dividing u_{k+1} and strict window nesting;
// a_{k+1} is minimal admitting such a t.
PadicConstruction build_padic(const PadicParams& params);

struct PadicCertificate {
  long k = 0;
  Int Qk;
  // exact Q_k * min_{0<s<=Q_k} lower(||s xi|| over the level window) * |s|_p;
  // valid for every xi deeper in the nest
  Rat value;
  std::uint64_t argmin_s = 0;
};

// Asserts 1 - 2 beta_k <= value <= 1 (Dirichlet ceiling); throws
// std::runtime_error on violation or when the enclosure escapes the level
// window. Levels with Q_k <= plain_threshold run a direct rational loop; the
// rest use a 64-bit residue accumulator with a sound prune (skipped s are
// provably above the running minimum), so both paths return the exact same
// minimum and smallest minimizer. Level moduli must fit 64 bits.
PadicCertificate certify_padic(const PadicConstruction& c, long k,
                               std::uint64_t plain_threshold = 100000);

// ---------------------------------------------------------------------------
// S-twisted construction

struct STwistedLevel {
  Int a, pk;           // center pk / base^a, base never divides pk
  Int Qk;              // Phi^{-1}(base^a)
  RatInterval window;  // offsets [5/24, 7/24] / (base^a Q): strictly inside
                       // the (1/6, 1/3)/(base^a Q) target at both ends
};

struct STwistedConstruction {
  SSpec S;
  Int base;
  StepFunctionSpec phi;
  std::vector<STwistedLevel> levels;
  RatInterval enclosure;
};

// Nested base^{-a_k} windows with Q_k = Phi^{-1}(base^{a_k}); base must be a
// prime outside S and Phi nondecreasing unbounded.
STwistedConstruction build_s_twisted(const SSpec& S, const Int& base,
                                     const StepFunctionSpec& phi, long depth);

struct STwistedCertificate {
  long k = 0;
  Int Qk;
  Rat value;     // certified lower bound on Q Phi(Q) min_s lower(||s xi||) |s|_S
  Rat case1_min; // exact minimum over s = y base^{a_k}; attained at y = 1
  bool case1_all_ge_phi_sixth = false;  // every case-1 entry >= Phi(Q_k)/6
  std::optional<Rat> case2_min;    // exact when the s-loop ran exhaustively
  std::optional<Rat> case2_floor;  // analytic floor otherwise
  bool exhaustive = false;
};

// Below exhaustive_threshold the minimum is computed exactly over every
// s <= Q_k. Above it: case 1 (base^{a_k} | s) in closed form -- inside the
// window ||y base^{a_k} xi|| = y * (base^{a_k} lo - p_k) exactly, so the
// minimum sits at y = 1 since |s|_S shrinks by at most y -- and case 2 by the
// exact rational floor Q Phi(Q) (17/24) / (base^{a_k} M), M the largest
// S-smooth integer <= Q_k. Both are certified lower bounds; value >= 1/3 is
// asserted either way.
STwistedCertificate certify_s_twisted(const STwistedConstruction& c, long k,
                                      std::uint64_t exhaustive_threshold = 1u << 21);

// ---------------------------------------------------------------------------
// Singleton-complement decay

struct ScanEntry {
  Int Q;
  Rat lower, upper;  // certified enclosure of f(Q) = Q min_{0<q<=Q} ||q xi|| |q|_S
  Int argmin_q;      // minimizer of the upper-bound scan
  bool exhaustive = false;
};

// S = exclude_finite{excluded}. Uses the convergent candidate set
// (denominators s_k and s_k + t s_{k-1}) for the upper bound and confirms
// exhaustively for Q <= 10^4, which makes lower/upper a true enclosure there.
// Rational xi is allowed (f = 0 once Q reaches the denominator).
std::vector<ScanEntry> singleton_scan(const CFSpec& xi, const Int& excluded,
                                      const std::vector<Int>& Q_list);

}  // namespace ulcert
