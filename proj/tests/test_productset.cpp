#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ulcert/productset.hpp"
#include "ulcert/zaremba.hpp"

using namespace ulcert;

namespace {

Rat mk(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t n) {
  // extended Euclid, n prime and a nonzero mod n
  std::int64_t t = 0, nt = 1, r = std::int64_t(n), nr = std::int64_t(a % n);
  while (nr != 0) {
    std::int64_t q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  return std::uint64_t(t < 0 ? t + std::int64_t(n) : t);
}

// straight from the definition: e is exceptional iff e^{-1} w misses M for
// every window residue w
std::vector<std::uint64_t> exceptional_ref(const ProductSetInstance& inst) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t e = 1; e < inst.N; ++e) {
    std::uint64_t ei = inv_mod(e, inst.N);
    bool hit = false;
    for (std::uint64_t w = inst.L + 1; w <= inst.L + inst.H && !hit; ++w)
      hit = std::binary_search(inst.M.begin(), inst.M.end(), ei * w % inst.N);
    if (!hit) out.push_back(e);
  }
  return out;
}

ProductSetInstance fixture13() {
  ProductSetInstance inst;
  inst.N = 13;
  inst.M = {5, 8};
  inst.L = 3;
  inst.H = 6;
  return inst;
}

}  // namespace

TEST_SUITE("productset") {

TEST_CASE("instance validation") {
  ProductSetInstance inst = fixture13();
  CHECK_NOTHROW(inst.validate());

  ProductSetInstance bad = inst;
  bad.N = 12;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.M = {8, 5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.M = {5, 13};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.H = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = inst;
  bad.L = 7;  // window would reach N
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK(inst.d() == doctest::Approx(6.0 / 13.0));
  CHECK(inst.sigma_floor() == doctest::Approx(std::log(2.0) / std::log(13.0)));
}

TEST_CASE("thirteen-element fixture") {
  ExceptionalReport rep = exceptional_set(fixture13());
  CHECK(rep.E == std::vector<std::uint64_t>{2, 3, 5, 8, 10, 11});
  CHECK(rep.card == 6);
  REQUIRE(rep.eta_fit.has_value());
  CHECK(*rep.eta_fit ==
        doctest::Approx(1.0 - std::log(6.0) / std::log(13.0)).epsilon(1e-12));
}

TEST_CASE("exceptional set matches the definition-level oracle") {
  std::mt19937_64 g(417);
  for (std::uint64_t N : {13ULL, 101ULL, 211ULL}) {
    for (int rep = 0; rep < 4; ++rep) {
      ProductSetInstance inst;
      inst.N = N;
      std::vector<std::uint64_t> pool(N - 1);
      for (std::uint64_t i = 0; i + 1 < N; ++i) pool[i] = i + 1;
      std::shuffle(pool.begin(), pool.end(), g);
      std::size_t cardM = 2 + g() % 6;
      inst.M.assign(pool.begin(), pool.begin() + long(cardM));
      std::sort(inst.M.begin(), inst.M.end());
      inst.L = g() % (N / 2);
      inst.H = 1 + g() % ((N - 1) - inst.L);
      ExceptionalReport out = exceptional_set(inst);
      REQUIRE(out.E == exceptional_ref(inst));
      REQUIRE(out.card == out.E.size());
    }
  }
}

TEST_CASE("no product of an exceptional residue lands in the window") {
  ProductSetInstance inst = fixture13();
  ExceptionalReport rep = exceptional_set(inst);
  for (std::uint64_t e : rep.E)
    for (std::uint64_t m : inst.M) {
      std::uint64_t prod = e * m % inst.N;
      CHECK((prod <= inst.L || prod > inst.L + inst.H));
    }
}

TEST_CASE("wider windows only shrink the exceptional set") {
  ProductSetInstance narrow;
  narrow.N = 101;
  narrow.M = {3, 30, 60, 90};
  narrow.L = 33;
  narrow.H = 10;
  ProductSetInstance wide = narrow;
  wide.L = 31;
  wide.H = 16;  // window {32..47} contains {34..43}
  auto En = exceptional_set(narrow).E;
  auto Ew = exceptional_set(wide).E;
  CHECK(std::includes(En.begin(), En.end(), Ew.begin(), Ew.end()));
}

TEST_CASE("exponential sums are conjugate-symmetric and peak at zero") {
  ProductSetInstance inst = fixture13();
  ExceptionalReport rep = exceptional_set(inst);
  CHECK(exp_sum(0, rep.E, inst.M, inst.N) ==
        doctest::Approx(double(rep.card * inst.M.size())).epsilon(1e-12));
  for (std::uint64_t lam = 1; lam < inst.N; ++lam) {
    double a = exp_sum(lam, rep.E, inst.M, inst.N);
    double b = exp_sum(inst.N - lam, rep.E, inst.M, inst.N);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
    CHECK(a <= double(rep.card * inst.M.size()) + 1e-9);
  }
}

TEST_CASE("square-root cancellation holds on the fixture") {
  VinogradovReport v = verify_vinogradov(fixture13());
  CHECK(v.E_card == 6);
  CHECK(v.M_card == 2);
  CHECK(v.ok);
  CHECK(v.max_ratio == doctest::Approx(0.5041018277486633).epsilon(1e-9));
  CHECK(v.max_ratio <= 1.0 + 1e-6);
}

TEST_CASE("empty exceptional sets make the sum bound vacuous") {
  // N = 211 with the five-quotient numerators and the middle-third window
  ProductSetInstance inst;
  inst.N = 211;
  for (const Int& u : zaremba_numerators(211, 5).numerators)
    inst.M.push_back(mpz_get_ui(u.get_mpz_t()));
  inst.L = 211 / 3;
  inst.H = 211 / 3;
  ExceptionalReport rep = exceptional_set(inst);
  CHECK(rep.E.empty());
  CHECK_FALSE(rep.eta_fit.has_value());
  VinogradovReport v = verify_vinogradov(inst);
  CHECK(v.ok);
  CHECK(v.max_ratio == 0.0);
  ETReport et = erdos_turan_chain(inst);
  CHECK(et.empty);
  CHECK(et.window_count == 0);
}

TEST_CASE("star discrepancy fixtures") {
  CHECK(star_discrepancy({Rat(0)}) == 1);
  CHECK(star_discrepancy({mk(1, 2)}) == mk(1, 2));
  CHECK(star_discrepancy({Rat(0), mk(1, 5), mk(2, 5), mk(3, 5), mk(4, 5)}) == mk(1, 5));
  CHECK(star_discrepancy({mk(1, 10), mk(3, 10), mk(1, 2), mk(7, 10), mk(9, 10)}) ==
        mk(1, 10));
  CHECK(star_discrepancy({mk(1, 4), mk(3, 4)}) == mk(1, 4));
  CHECK(star_discrepancy({mk(3, 4), mk(1, 4)}) == mk(1, 4));  // order-insensitive
  CHECK_THROWS_AS(star_discrepancy({}), std::invalid_argument);
  CHECK_THROWS_AS(star_discrepancy({Rat(1)}), std::invalid_argument);
  CHECK_THROWS_AS(star_discrepancy({mk(-1, 2)}), std::invalid_argument);
}

TEST_CASE("star discrepancy sits between the packing floor and one") {
  std::mt19937_64 g(418);
  for (int i = 0; i < 200; ++i) {
    std::size_t n = 1 + g() % 12;
    std::vector<Rat> pts;
    for (std::size_t j = 0; j < n; ++j) pts.push_back(mk(long(g() % 977), 977));
    Rat d = star_discrepancy(pts);
    REQUIRE(d >= Rat(1, 2 * static_cast<unsigned long>(n)));
    REQUIRE(d <= 1);
  }
}

TEST_CASE("the truncated sum chain dominates the fixture discrepancy") {
  ETReport et = erdos_turan_chain(fixture13());
  CHECK_FALSE(et.empty);
  CHECK(et.delta > 0);
  CHECK(et.delta <= 1);
  CHECK(et.delta_le_bound);
  CHECK(et.window_count == 0);
  // delta is the exact discrepancy of the product points; recompute it
  ProductSetInstance inst = fixture13();
  ExceptionalReport rep = exceptional_set(inst);
  std::vector<Rat> pts;
  for (std::uint64_t e : rep.E)
    for (std::uint64_t m : inst.M)
      pts.push_back(mk(long(e * m % inst.N), long(inst.N)));
  CHECK(et.delta == star_discrepancy(pts));
}

}  // TEST_SUITE
