#include "ulcert/witness.hpp"

#include <algorithm>
#include <stdexcept>

#include "internal.hpp"
#include "ulcert/zaremba.hpp"

namespace ulcert {

using internal::to_u64;

void SearchConfig::validate() const {
  std::vector<std::string> bad;
  const Rat tenth(1, 10), nine_tenths(9, 10);
  if (!(I.lo > tenth && I.hi < nine_tenths)) bad.push_back("I must lie inside (1/10, 9/10)");
  if (!(J.lo > tenth && J.hi < nine_tenths)) bad.push_back("J must lie inside (1/10, 9/10)");
  if (!(I.lo < I.hi)) bad.push_back("I must have positive width");
  if (!(J.lo < J.hi)) bad.push_back("J must have positive width");
  if (!(tau > 1)) bad.push_back("tau must exceed 1");
  if (m < 1) bad.push_back("m must be >= 1");
  if (T_lo < 2) bad.push_back("prime range must start at 2 or later");
  if (T_hi < T_lo) bad.push_back("prime range must be nonempty");
  if (max_witnesses < 1) bad.push_back("max_witnesses must be >= 1");
  if (left_margin < 0) {
    bad.push_back("left margin must be nonnegative");
  } else {
    if (!(I.hi - left_margin > I.lo)) bad.push_back("left margin swallows I");
    if (!(J.hi - left_margin > J.lo)) bad.push_back("left margin swallows J");
  }
  if (!bad.empty()) throw std::invalid_argument(internal::join(bad, "; "));
}

bool WitnessCertificate::all_ok() const {
  if (checks.empty()) return false;
  for (const auto& [name, ok] : checks)
    if (!ok) return false;
  return true;
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

std::uint64_t invmod_prime(std::uint64_t a, std::uint64_t p) { return powmod(a % p, p - 2, p); }

Rat make_frac(std::uint64_t num, std::uint64_t den) {
  Rat r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<WitnessCertificate> find_witnesses(const SearchConfig& cfg) {
  cfg.validate();
  auto primes = sieve_primes(cfg.T_lo, cfg.T_hi);
  const RatInterval Ish(cfg.I.lo, cfg.I.hi - cfg.left_margin);
  const RatInterval Jsh(cfg.J.lo, cfg.J.hi - cfg.left_margin);
  std::map<std::uint64_t, std::vector<std::uint64_t>> cache;
  auto numerators = [&](std::uint64_t q) -> const std::vector<std::uint64_t>& {
    auto it = cache.find(q);
    if (it == cache.end()) {
      std::vector<std::uint64_t> nums;
      for (const Int& u : zaremba_numerators(Int(static_cast<unsigned long>(q)), cfg.m).numerators)
        nums.push_back(to_u64(u));
      it = cache.emplace(q, std::move(nums)).first;
    }
    return it->second;
  };
  std::vector<WitnessCertificate> out;
  for (std::uint64_t q : primes) {
    for (std::uint64_t s : primes) {
      if (s == q) continue;
      Rat ratio = make_frac(q, s);
      if (!(ratio < cfg.tau && ratio * cfg.tau > 1)) continue;
      std::uint64_t sinv = invmod_prime(s, q), qinv = invmod_prime(q, s);
      std::vector<std::uint64_t> ps, rs;
      for (std::uint64_t u : numerators(q)) {
        std::uint64_t p = mulmod(u, sinv, q);
        if (Ish.contains(make_frac(p, q))) ps.push_back(p);
      }
      if (ps.empty()) continue;
      for (std::uint64_t v : numerators(s)) {
        std::uint64_t r = mulmod(v, qinv, s);
        if (Jsh.contains(make_frac(r, s))) rs.push_back(r);
      }
      if (rs.empty()) continue;
      std::sort(ps.begin(), ps.end());
      std::sort(rs.begin(), rs.end());
      for (std::uint64_t p : ps) {
        for (std::uint64_t r : rs) {
          Quadruple quad{Int(static_cast<unsigned long>(p)), Int(static_cast<unsigned long>(q)),
                         Int(static_cast<unsigned long>(r)), Int(static_cast<unsigned long>(s))};
          WitnessCertificate cert = verify_witness(quad, cfg.I, cfg.J, cfg.tau, cfg.m);
          if (!cert.all_ok())
            throw std::logic_error("search emitted a quadruple that fails verification");
          out.push_back(std::move(cert));
          if (out.size() >= cfg.max_witnesses) return out;
        }
      }
    }
  }
  return out;
}

WitnessCertificate verify_witness(const Quadruple& quad, const RatInterval& I,
                                  const RatInterval& J, const Rat& tau, long m) {
  WitnessCertificate c;
  c.quad = quad;
  const Int &p = quad.p, &q = quad.q, &r = quad.r, &s = quad.s;
  const bool range_ok = q >= 2 && s >= 2 && p >= 1 && p < q && r >= 1 && r < s && q != s;
  bool prime_ok = false, reduced = false, c1 = false, c2 = false, c3 = false;
  if (range_ok) {
    prime_ok = mpz_probab_prime_p(q.get_mpz_t(), 40) != 0 &&
               mpz_probab_prime_p(s.get_mpz_t(), 40) != 0;
    Int gp, gr;
    mpz_gcd(gp.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_gcd(gr.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
    reduced = gp == 1 && gr == 1;
    Rat pq(p, q), rs(r, s);
    pq.canonicalize();
    rs.canonicalize();
    c1 = I.contains(pq) && J.contains(rs);
    c.ratio = Rat(q) / Rat(s);
    c2 = c.ratio < tau && c.ratio * tau > 1;
    if (reduced) {
      Int u = p * s % q, v = r * q % s;
      if (u != 0 && v != 0) {
        Rat uq(u, q), vs(v, s);
        uq.canonicalize();
        vs.canonicalize();
        c.cf_ps_over_q = cf_expand(uq);
        c.cf_qr_over_s = cf_expand(vs);
        c3 = is_Fm(uq, m) && is_Fm(vs, m);
      }
    }
  }
  c.checks = {{"C1", c1}, {"C2", c2}, {"C3", c3}, {"reducedness", reduced}, {"primality", prime_ok}};
  return c;
}

}  // namespace ulcert
