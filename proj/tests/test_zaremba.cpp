#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ulcert/zaremba.hpp"

using namespace ulcert;

namespace {

Rat mk(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::vector<std::uint64_t> trial_division_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST_SUITE("zaremba") {

TEST_CASE("membership fixtures, twin rule included") {
  CHECK(is_Fm(mk(5, 13), 2));   // [0; 2,1,1,2]
  CHECK(is_Fm(mk(8, 13), 2));   // [0; 1,1,1,1,2]
  CHECK(is_Fm(mk(1, 3), 2));    // [0; 3] but twin [0; 2,1]
  CHECK(is_Fm(mk(1, 2), 1));    // twin [0; 1,1]
  CHECK(is_Fm(mk(6, 13), 5));   // twin [0; 2,5,1]
  CHECK_FALSE(is_Fm(mk(6, 13), 4));
  CHECK_FALSE(is_Fm(mk(1, 5), 3));  // [0; 5] / [0; 4,1]
  CHECK(is_Fm(mk(1, 5), 4));
}

TEST_CASE("membership rejects arguments outside the open unit interval") {
  CHECK_THROWS_AS(is_Fm(Rat(0), 2), std::domain_error);
  CHECK_THROWS_AS(is_Fm(Rat(1), 2), std::domain_error);
  CHECK_THROWS_AS(is_Fm(mk(3, 2), 2), std::domain_error);
  CHECK_THROWS_AS(is_Fm(mk(-1, 2), 2), std::domain_error);
  CHECK_THROWS_AS(is_Fm(mk(1, 2), 0), std::domain_error);
}

TEST_CASE("numerator set fixtures") {
  ZarembaSet z = zaremba_numerators(13, 2);
  CHECK(z.q == 13);
  CHECK(z.m == 2);
  CHECK(z.numerators == std::vector<Int>{5, 8});

  CHECK(zaremba_numerators(5, 1).numerators == std::vector<Int>{3});
  CHECK_THROWS_AS(zaremba_numerators(1, 2), std::domain_error);
  CHECK_THROWS_AS(zaremba_numerators(10, 0), std::domain_error);
}

TEST_CASE("numerators are sorted, reduced, and symmetric under membership") {
  for (long q = 2; q <= 500; ++q) {
    ZarembaSet z = zaremba_numerators(q, 2);
    for (std::size_t i = 0; i < z.numerators.size(); ++i) {
      const Int& u = z.numerators[i];
      REQUIRE(u >= 1);
      REQUIRE(u < q);
      Int g;
      mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), z.q.get_mpz_t());
      REQUIRE(g == 1);
      if (i) REQUIRE(z.numerators[i - 1] < u);
      REQUIRE(is_Fm(Rat(u, z.q), 2));
    }
  }
}

TEST_CASE("numerator sets grow with the quotient ceiling") {
  for (long q = 2; q <= 500; ++q) {
    std::vector<Int> prev;
    for (long m = 1; m <= 11; ++m) {
      std::vector<Int> cur = zaremba_numerators(q, m).numerators;
      REQUIRE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = std::move(cur);
    }
  }
}

TEST_CASE("cumulative counts are positive from the start") {
  Int total = 0;
  for (long q = 2; q <= 300; ++q) {
    std::size_t card = zaremba_numerators(q, 2).numerators.size();
    Int next = total + Int(static_cast<unsigned long>(card));
    REQUIRE(next >= total);
    total = next;
    REQUIRE(total > 0);  // already positive at q = 2
  }
}

TEST_CASE("depth-first enumeration matches the direct scan") {
  for (long q = 2; q <= 2000; ++q) {
    for (long m : {2, 5}) {
      ZarembaSet dfs = zaremba_numerators(q, m);
      ZarembaSet scan = zaremba_numerators_scan(q, m);
      REQUIRE(dfs.numerators == scan.numerators);
    }
  }
}

TEST_CASE("segmented sieve agrees with trial division") {
  auto full = sieve_primes(0, 100000);
  auto ref = trial_division_primes(0, 100000);
  REQUIRE(full == ref);

  auto tail = sieve_primes(90000, 100000);
  std::vector<std::uint64_t> expect;
  for (std::uint64_t p : ref)
    if (p >= 90000) expect.push_back(p);
  CHECK(tail == expect);

  CHECK(sieve_primes(0, 1).empty());
  CHECK(sieve_primes(2, 2) == std::vector<std::uint64_t>{2});
  CHECK(sieve_primes(14, 16).empty());
  CHECK(sieve_primes(100, 50).empty());
}

TEST_CASE("Miller-Rabin is exact on a dense range and at the edges") {
  auto ref = trial_division_primes(0, 20000);
  std::size_t idx = 0;
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    bool prime = idx < ref.size() && ref[idx] == n;
    if (prime) ++idx;
    REQUIRE(is_prime_u64(n) == prime);
  }
  CHECK(is_prime_u64(2305843009213693951ULL));   // 2^61 - 1
  CHECK(is_prime_u64(18446744073709551557ULL));  // largest prime below 2^64
  CHECK_FALSE(is_prime_u64(18446744073709551615ULL));
  CHECK_FALSE(is_prime_u64(341));  // base-2 pseudoprime
  CHECK_FALSE(is_prime_u64(561));  // Carmichael
  CHECK(is_prime_u64(1000000007ULL));
}

TEST_CASE("density report covers exactly the primes in the window") {
  DensityReport rep = density_report(100, mk(1, 2), 2, mk(1, 2));
  auto primes = sieve_primes(50, 100);
  REQUIRE(rep.rows.size() == primes.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    REQUIRE(rep.rows[i].q == primes[i]);
    std::size_t card = zaremba_numerators(Int(static_cast<unsigned long>(primes[i])), 2)
                           .numerators.size();
    REQUIRE(rep.rows[i].card == card);
    // sigma = 1/2: pass iff card^2 >= q
    REQUIRE(rep.rows[i].pass == (card * card >= primes[i]));
  }
}

TEST_CASE("single-quotient expansions are too sparse for exponent 0.99") {
  DensityReport rep = density_report(100, mk(1, 2), 1, mk(99, 100));
  REQUIRE(!rep.rows.empty());
  for (const DensityRow& r : rep.rows) CHECK_FALSE(r.pass);
  CHECK(rep.density == 0);
}

TEST_CASE("quotients up to five fill every prime window at exponent one half") {
  DensityReport rep = density_report(300, mk(1, 2), 5, mk(1, 2));
  REQUIRE(!rep.rows.empty());
  CHECK(rep.density == 1);
}

TEST_CASE("density report validates its arguments") {
  CHECK_THROWS_AS(density_report(1, mk(1, 2), 2, mk(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(density_report(100, Rat(2), 2, mk(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(density_report(100, mk(1, 2), 2, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(density_report(100, mk(1, 2), 0, mk(1, 2)), std::invalid_argument);
}

}  // TEST_SUITE
