#include "ulcert/zaremba.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "internal.hpp"
#include "ulcert/parallel.hpp"

namespace ulcert {

bool is_Fm(const Rat& x, long m) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (x <= 0 || x >= 1) throw std::domain_error("membership is defined on (0, 1)");
  auto all_le = [&](const CFWord& w) {
    return std::all_of(w.quotients.begin(), w.quotients.end(),
                       [&](const Int& a) { return a <= m; });
  };
  CFWord w = cf_expand(x);
  return all_le(w) || all_le(non_canonical_twin(w));
}

namespace {

// words via the continuant recurrence; a node carries (d_{j-1}, d_j, n_{j-1}, n_j)
void dfs_words_u64(std::uint64_t q, std::uint64_t m, std::uint64_t dprev, std::uint64_t dcur,
                   std::uint64_t nprev, std::uint64_t ncur, std::vector<std::uint64_t>& out) {
  std::uint64_t rem = q - dprev;
  if (rem % dcur == 0) {
    std::uint64_t a = rem / dcur;  // the unique terminal quotient reaching q
    if (a >= 2 && a <= m + 1) out.push_back(a * ncur + nprev);
  }
  for (std::uint64_t a = 1; a <= m; ++a) {
    unsigned __int128 dnext = static_cast<unsigned __int128>(a) * dcur + dprev;
    if (dnext >= q) break;
    dfs_words_u64(q, m, dcur, static_cast<std::uint64_t>(dnext), ncur, a * ncur + nprev, out);
  }
}

void dfs_words_mpz(const Int& q, long m, const Int& dprev, const Int& dcur, const Int& nprev,
                   const Int& ncur, std::vector<Int>& out) {
  Int rem = q - dprev;
  if (mpz_divisible_p(rem.get_mpz_t(), dcur.get_mpz_t())) {
    Int a = rem / dcur;
    if (a >= 2 && a <= m + 1) out.push_back(a * ncur + nprev);
  }
  for (long a = 1; a <= m; ++a) {
    Int dnext = a * dcur + dprev;
    if (dnext >= q) break;
    dfs_words_mpz(q, m, dcur, dnext, ncur, a * ncur + nprev, out);
  }
}

}  // namespace

ZarembaSet zaremba_numerators(const Int& q, long m) {
  if (q < 2) throw std::domain_error("q must be >= 2");
  if (m < 1) throw std::domain_error("m must be >= 1");
  ZarembaSet zs;
  zs.q = q;
  zs.m = m;
  if (q.fits_ulong_p()) {
    std::vector<std::uint64_t> found;
    dfs_words_u64(mpz_get_ui(q.get_mpz_t()), static_cast<std::uint64_t>(m), 0, 1, 1, 0, found);
    std::sort(found.begin(), found.end());
    zs.numerators.reserve(found.size());
    for (std::uint64_t u : found) zs.numerators.emplace_back(static_cast<unsigned long>(u));
  } else {
    std::vector<Int> found;
    dfs_words_mpz(q, m, Int(0), Int(1), Int(1), Int(0), found);
    std::sort(found.begin(), found.end());
    zs.numerators = std::move(found);
  }
  return zs;
}

ZarembaSet zaremba_numerators_scan(const Int& q, long m) {
  if (q < 2) throw std::domain_error("q must be >= 2");
  if (m < 1) throw std::domain_error("m must be >= 1");
  ZarembaSet zs;
  zs.q = q;
  zs.m = m;
  for (Int u = 1; u < q; ++u) {
    Int g;
    mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), q.get_mpz_t());
    if (g != 1) continue;
    if (is_Fm(Rat(u, q), m)) zs.numerators.push_back(u);
  }
  return zs;
}

std::vector<std::uint64_t> sieve_primes(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi < lo) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 2;
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }
  const std::uint64_t seg = 1 << 18;
  for (std::uint64_t start = lo; start <= hi; start += seg) {
    std::uint64_t end = std::min(hi, start + seg - 1);
    std::vector<bool> mark(end - start + 1, true);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t j = first; j <= end; j += p) mark[j - start] = false;
    }
    for (std::uint64_t v = start; v <= end; ++v)
      if (mark[v - start] && v >= 2) out.push_back(v);
    if (end == hi) break;  // guards overflow of start += seg
  }
  return out;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // this base set is known to be exact for every 64-bit n
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

DensityReport density_report(long T, const Rat& gamma, long m, const Rat& sigma) {
  if (T < 2) throw std::invalid_argument("T must be >= 2");
  if (gamma <= 0 || gamma > 1) throw std::invalid_argument("gamma must be in (0, 1]");
  if (sigma <= 0 || sigma >= 1) throw std::invalid_argument("sigma must be in (0, 1)");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  DensityReport rep;
  rep.T = T;
  rep.gamma = gamma;
  rep.sigma = sigma;
  rep.m = m;
  Int lo_i = rat_ceil(gamma * T);
  std::uint64_t lo = internal::to_u64(lo_i);
  auto primes = sieve_primes(lo, static_cast<std::uint64_t>(T));
  rep.rows.resize(primes.size());
  const Int s_num = sigma.get_num(), s_den = sigma.get_den();
  run_chunks(0, primes.size(), [&](std::size_t, std::uint64_t a, std::uint64_t b) {
    for (std::uint64_t i = a; i < b; ++i) {
      std::uint64_t q = primes[i];
      std::size_t card = zaremba_numerators(Int(static_cast<unsigned long>(q)), m).numerators.size();
      // card >= q^(s/t)  <=>  card^t >= q^s, both sides exact
      Int lhs, rhs;
      mpz_ui_pow_ui(lhs.get_mpz_t(), card, mpz_get_ui(s_den.get_mpz_t()));
      mpz_ui_pow_ui(rhs.get_mpz_t(), q, mpz_get_ui(s_num.get_mpz_t()));
      rep.rows[i] = {q, card, lhs >= rhs};
    }
  });
  if (rep.rows.empty()) {
    rep.density = 1;
  } else {
    unsigned long pass = 0;
    for (const DensityRow& r : rep.rows) pass += r.pass ? 1 : 0;
    rep.density = Rat(pass, static_cast<unsigned long>(rep.rows.size()));
    rep.density.canonicalize();
  }
  return rep;
}

}  // namespace ulcert
