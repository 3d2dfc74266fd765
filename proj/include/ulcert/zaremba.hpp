#pragma once

#include <cstdint>
#include <vector>

#include "ulcert/ratcore.hpp"

namespace ulcert {

// F_m membership for rationals is inclusive: x is in F_m iff the canonical
// expansion OR its non-canonical twin has all quotients <= m. Requires
// 0 < x < 1 (std::domain_error otherwise).
bool is_Fm(const Rat& x, long m);

// M_q(m): the Zaremba m-numerators for q.
struct ZarembaSet {
  Int q;
  long m = 0;
  std::vector<Int> numerators;  // strictly increasing, all coprime to q
};

// Enumerates M_q(m) by depth-first generation of the continued-fraction words
// with quotients <= m (interior) and final quotient <= m+1 whose denominator
// is exactly q. Complete: exactly the u in [1, q-1] with gcd(u, q) = 1 and
// is_Fm(u/q, m). Requires q >= 2.
ZarembaSet zaremba_numerators(const Int& q, long m);

// Reference implementation scanning every residue; cross-check for q <= 2000.
ZarembaSet zaremba_numerators_scan(const Int& q, long m);

// All primes in [lo, hi], ascending; segmented so hi up to ~1e9 is feasible.
std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi);

// Deterministic Miller-Rabin, valid for the full uint64 range.
bool is_prime_u64(std::uint64_t n);

struct DensityRow {
  std::uint64_t q;
  std::size_t card;  // |M_q(m)|
  bool pass;         // card >= q^sigma, compared exactly
};

struct DensityReport {
  long T = 0;
  Rat gamma, sigma;
  long m = 0;
  std::vector<DensityRow> rows;  // primes in [gamma*T, T], ascending
  Rat density;                   // passing fraction; 1 on an empty range
};

// For each prime q in [gamma*T, T]: |M_q(m)| and whether it reaches q^sigma
// (card^t >= q^s for sigma = s/t, exact integer comparison).
DensityReport density_report(long T, const Rat& gamma, long m, const Rat& sigma);

}  // namespace ulcert
