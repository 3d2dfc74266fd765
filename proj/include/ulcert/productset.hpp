#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ulcert/ratcore.hpp"

namespace ulcert {

// A Lemma-4.1-style instance: prime modulus N, residue set M, window
// H = {L+1, ..., L+H} with L + H <= N - 1.
struct ProductSetInstance {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> M;  // residues in [0, N-1], sorted, distinct
  std::uint64_t L = 0, H = 0;

  void validate() const;  // throws std::invalid_argument, rejects composite N
  double d() const;           // H/N
  double sigma_floor() const; // log|M| / log N
};

struct ExceptionalReport {
  std::vector<std::uint64_t> E;  // ascending
  std::size_t card = 0;
  // 1 - log|E|/log N; empty E reported as nullopt ("empty" in JSON)
  std::optional<double> eta_fit;
};

// E = { e in [1, N-1] : e^{-1} * window misses M entirely }. Computed both as
// stated and through the dual "e*M misses the window" form; the two must
// agree (logic_error otherwise). e = 0 is excluded: e^{-1} is undefined there.
ExceptionalReport exceptional_set(const ProductSetInstance& inst);

// |sum_{e in E} sum_{m in M} exp(2 pi i lambda e m / N)| in double precision;
// exactly |E|*|M| when lambda == 0 mod N.
double exp_sum(std::uint64_t lambda, const std::vector<std::uint64_t>& E,
               const std::vector<std::uint64_t>& M, std::uint64_t N);

struct VinogradovReport {
  std::size_t E_card = 0, M_card = 0;
  double max_ratio = 0;  // max over lambda of |S(lambda)| / sqrt(N |E| |M|)
  std::uint64_t argmax_lambda = 0;
  bool ok = true;  // every ratio <= 1 + 1e-6
};

// Checks |S(lambda)| <= sqrt(N |E| |M|) * (1 + 1e-6) for every lambda in
// [1, N-1]; vacuous (ok, ratio 0) when E is empty.
VinogradovReport verify_vinogradov(const ProductSetInstance& inst);

// Exact star discrepancy of points in [0, 1) via the sorted-points formula
// D* = max_k max( k/n - x_(k), x_(k) - (k-1)/n ).
Rat star_discrepancy(std::vector<Rat> points);

struct ETReport {
  bool empty = false;  // E empty: chain skipped
  Rat delta;           // exact star discrepancy of Gamma = { e m / N }
  double bound = 0;    // 3 * (1/K + sum_{h<=K} |S(h)|/(h |E| |M|)), K = N-1
  bool delta_le_bound = false;
  std::uint64_t window_count = 0;  // Gamma points inside [(L+1)/N, (L+H)/N]
};

// The Erdos-Turan sanity chain with the explicit constant 3 and truncation
// K = N-1. window_count is 0 by the construction of E; asserted, not assumed.
ETReport erdos_turan_chain(const ProductSetInstance& inst);

}  // namespace ulcert
