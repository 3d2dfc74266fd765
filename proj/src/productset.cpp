#include "ulcert/productset.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "internal.hpp"
#include "ulcert/zaremba.hpp"

namespace ulcert {

void ProductSetInstance::validate() const {
  if (!is_prime_u64(N)) throw std::invalid_argument("N must be prime");
  if (M.empty()) throw std::invalid_argument("M must be nonempty");
  if (!std::is_sorted(M.begin(), M.end()) ||
      std::adjacent_find(M.begin(), M.end()) != M.end())
    throw std::invalid_argument("M must be sorted and distinct");
  if (M.back() >= N) throw std::invalid_argument("M residues must lie in [0, N-1]");
  if (H < 1) throw std::invalid_argument("window must be nonempty");
  if (L + H > N - 1) throw std::invalid_argument("window must fit in [1, N-1]");
}

double ProductSetInstance::d() const { return static_cast<double>(H) / static_cast<double>(N); }

double ProductSetInstance::sigma_floor() const {
  return std::log(static_cast<double>(M.size())) / std::log(static_cast<double>(N));
}

namespace {

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * a % n);
    a = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * a % n);
    e >>= 1;
  }
  return r;
}

}  // namespace

ExceptionalReport exceptional_set(const ProductSetInstance& inst) {
  inst.validate();
  const std::uint64_t N = inst.N;
  std::vector<bool> in_M(N, false);
  for (std::uint64_t m : inst.M) in_M[m] = true;
  std::vector<std::uint64_t> direct, dual;
  for (std::uint64_t e = 1; e < N; ++e) {
    std::uint64_t inv = powmod_u64(e, N - 2, N);
    bool miss = true;
    for (std::uint64_t w = inst.L + 1; w <= inst.L + inst.H; ++w) {
      if (in_M[static_cast<std::uint64_t>(static_cast<unsigned __int128>(inv) * w % N)]) {
        miss = false;
        break;
      }
    }
    if (miss) direct.push_back(e);
  }
  for (std::uint64_t e = 1; e < N; ++e) {
    bool miss = true;
    for (std::uint64_t m : inst.M) {
      std::uint64_t em = static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * m % N);
      if (em >= inst.L + 1 && em <= inst.L + inst.H) {
        miss = false;
        break;
      }
    }
    if (miss) dual.push_back(e);
  }
  if (direct != dual)
    throw std::logic_error("the two characterizations of the exceptional set disagree");
  ExceptionalReport rep;
  rep.E = std::move(direct);
  rep.card = rep.E.size();
  if (rep.card > 0)
    rep.eta_fit = 1.0 - std::log(static_cast<double>(rep.card)) / std::log(static_cast<double>(N));
  return rep;
}

double exp_sum(std::uint64_t lambda, const std::vector<std::uint64_t>& E,
               const std::vector<std::uint64_t>& M, std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  if (lambda % N == 0) return static_cast<double>(E.size()) * static_cast<double>(M.size());
  std::vector<std::complex<double>> roots(N);
  const double twopi = 2.0 * std::acos(-1.0);
  for (std::uint64_t k = 0; k < N; ++k)
    roots[k] = std::polar(1.0, twopi * static_cast<double>(k) / static_cast<double>(N));
  std::complex<double> sum = 0;
  for (std::uint64_t e : E)
    for (std::uint64_t m : M) {
      std::uint64_t k = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(lambda % N) * (e % N) % N * (m % N) % N);
      sum += roots[k];
    }
  return std::abs(sum);
}

VinogradovReport verify_vinogradov(const ProductSetInstance& inst) {
  ExceptionalReport er = exceptional_set(inst);
  VinogradovReport rep;
  rep.E_card = er.card;
  rep.M_card = inst.M.size();
  if (er.card == 0) return rep;
  double denom = std::sqrt(static_cast<double>(inst.N) * static_cast<double>(er.card) *
                           static_cast<double>(inst.M.size()));
  for (std::uint64_t lambda = 1; lambda < inst.N; ++lambda) {
    double ratio = exp_sum(lambda, er.E, inst.M, inst.N) / denom;
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax_lambda = lambda;
    }
  }
  rep.ok = rep.max_ratio <= 1.0 + 1e-6;
  return rep;
}

Rat star_discrepancy(std::vector<Rat> points) {
  if (points.empty()) throw std::invalid_argument("discrepancy of an empty set");
  for (const Rat& x : points)
    if (x < 0 || x >= 1) throw std::invalid_argument("points must lie in [0, 1)");
  std::sort(points.begin(), points.end());
  const unsigned long n = static_cast<unsigned long>(points.size());
  Rat best = 0;
  for (unsigned long k = 1; k <= n; ++k) {
    const Rat& x = points[k - 1];
    Rat a = Rat(k, n) - x;
    Rat b = x - Rat(k - 1, n);
    if (a > best) best = a;
    if (b > best) best = b;
  }
  return best;
}

ETReport erdos_turan_chain(const ProductSetInstance& inst) {
  ExceptionalReport er = exceptional_set(inst);
  ETReport rep;
  if (er.card == 0) {
    rep.empty = true;
    rep.delta = 0;
    rep.delta_le_bound = true;
    return rep;
  }
  const std::uint64_t N = inst.N;
  std::vector<Rat> gamma;
  gamma.reserve(er.card * inst.M.size());
  std::uint64_t in_window = 0;
  for (std::uint64_t e : er.E)
    for (std::uint64_t m : inst.M) {
      std::uint64_t em = static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * m % N);
      if (em >= inst.L + 1 && em <= inst.L + inst.H) ++in_window;
      Rat point(static_cast<unsigned long>(em), static_cast<unsigned long>(N));
      point.canonicalize();
      gamma.push_back(point);
    }
  rep.window_count = in_window;
  rep.delta = star_discrepancy(gamma);
  const std::uint64_t K = N - 1;
  double sum = 0;
  double em_count = static_cast<double>(er.card) * static_cast<double>(inst.M.size());
  for (std::uint64_t h = 1; h <= K; ++h)
    sum += exp_sum(h, er.E, inst.M, N) / (static_cast<double>(h) * em_count);
  rep.bound = 3.0 * (1.0 / static_cast<double>(K) + sum);
  rep.delta_le_bound = rat_approx(rep.delta) <= rep.bound;
  return rep;
}

}  // namespace ulcert
