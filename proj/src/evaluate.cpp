#include "ulcert/evaluate.hpp"

#include <stdexcept>

#include "internal.hpp"

namespace ulcert {

namespace {

void check_arity(std::size_t n) {
  if (n < 1 || n > 4) throw std::invalid_argument("evaluators take 1 to 4 coordinates");
}

// shared minimization core; dist(n) must be the exact per-n product
template <typename Dist>
Rat inner_min(const Int& N, Dist&& dist) {
  Rat best = -1;
  for (Int n = 1; n <= N; ++n) {
    Rat v = dist(n);
    if (best < 0 || v < best) best = v;
    if (best == 0) break;
  }
  return best;
}

Rat point_product(const std::vector<Rat>& xs, const Int& n) {
  Rat prod = 1;
  for (const Rat& x : xs) {
    prod *= nearest_dist(Rat(n) * x);
    if (prod == 0) break;
  }
  return prod;
}

Rat box_product(const std::vector<RatInterval>& Xs, const Int& n) {
  Rat prod = 1;
  for (const RatInterval& X : Xs) {
    prod *= nearest_dist_lower(X, n);
    if (prod == 0) break;
  }
  return prod;
}

}  // namespace

Rat dmin(const std::vector<Rat>& xs, const Int& Q) {
  check_arity(xs.size());
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  return Rat(Q) * inner_min(Q, [&](const Int& n) { return point_product(xs, n); });
}

Rat dmin_ratQ(const std::vector<Rat>& xs, const Rat& Q) {
  check_arity(xs.size());
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  Int N = rat_floor(Q);
  return Q * inner_min(N, [&](const Int& n) { return point_product(xs, n); });
}

Rat dmin_lower(const std::vector<RatInterval>& Xs, const Int& Q) {
  check_arity(Xs.size());
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  return Rat(Q) * inner_min(Q, [&](const Int& n) { return box_product(Xs, n); });
}

Rat dmin_lower_ratQ(const std::vector<RatInterval>& Xs, const Rat& Q) {
  check_arity(Xs.size());
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  Int N = rat_floor(Q);
  return Q * inner_min(N, [&](const Int& n) { return box_product(Xs, n); });
}

Rat weighted_min(const std::vector<Rat>& xs, const Int& Q, const StepFunctionSpec& psi) {
  check_arity(xs.size());
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  Rat m = inner_min(Q, [&](const Int& n) { return point_product(xs, n); });
  return Rat(Q) / psi.eval(Q) * m;
}

namespace {

template <typename Dist>
std::vector<ProfileEntry> profile_impl(const std::vector<Int>& Qs, Dist&& dist) {
  for (std::size_t i = 0; i < Qs.size(); ++i) {
    if (Qs[i] < 1) throw std::invalid_argument("profile Q values must be >= 1");
    if (i > 0 && Qs[i] <= Qs[i - 1])
      throw std::invalid_argument("profile Q values must be strictly increasing");
  }
  std::vector<ProfileEntry> out;
  out.reserve(Qs.size());
  Rat best = -1;
  Int n = 1;
  for (const Int& Q : Qs) {
    for (; n <= Q; ++n) {
      Rat v = dist(n);
      if (best < 0 || v < best) best = v;
    }
    out.push_back({Q, best, Rat(Rat(Q) * best)});
  }
  return out;
}

}  // namespace

std::vector<ProfileEntry> profile(const std::vector<Rat>& xs, const std::vector<Int>& Qs) {
  check_arity(xs.size());
  return profile_impl(Qs, [&](const Int& n) { return point_product(xs, n); });
}

std::vector<ProfileEntry> profile_lower(const std::vector<RatInterval>& Xs,
                                        const std::vector<Int>& Qs) {
  check_arity(Xs.size());
  return profile_impl(Qs, [&](const Int& n) { return box_product(Xs, n); });
}

}  // namespace ulcert
