#include "ulcert/sarith.hpp"

#include <algorithm>
#include <stdexcept>

#include "internal.hpp"

namespace ulcert {

using internal::rmin;
using internal::split;
using internal::to_int;
using internal::to_u64;

SSpec SSpec::include(std::vector<Int> ps) {
  SSpec s;
  s.kind = Kind::include;
  s.primes = std::move(ps);
  return s;
}

SSpec SSpec::exclude_finite(std::vector<Int> ps) {
  SSpec s;
  s.kind = Kind::exclude_finite;
  s.primes = std::move(ps);
  return s;
}

void SSpec::validate(bool allow_empty_exclude) const {
  if (primes.empty()) {
    if (kind == Kind::include) throw std::invalid_argument("include list must be nonempty");
    if (!allow_empty_exclude) throw std::invalid_argument("exclude list must be nonempty");
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] < 2 || mpz_probab_prime_p(primes[i].get_mpz_t(), 40) == 0)
      throw std::invalid_argument("listed values must be prime");
    if (i > 0 && !(primes[i - 1] < primes[i]))
      throw std::invalid_argument("listed primes must be strictly ascending");
  }
}

bool SSpec::contains_prime(const Int& p) const {
  bool listed = std::binary_search(primes.begin(), primes.end(), p);
  return kind == Kind::include ? listed : !listed;
}

SSpec SSpec::parse(const std::string& s) {
  auto parts = split(s, ':');
  if (parts.size() != 2 || (parts[0] != "include" && parts[0] != "exclude"))
    throw std::invalid_argument("expected include:p,q or exclude:p,q, got '" + s + "'");
  std::vector<Int> ps;
  if (!parts[1].empty())
    for (const std::string& p : split(parts[1], ',')) ps.push_back(to_int(p));
  SSpec spec = parts[0] == "include" ? include(std::move(ps)) : exclude_finite(std::move(ps));
  spec.validate(true);
  return spec;
}

std::string SSpec::describe() const {
  std::vector<std::string> parts;
  parts.reserve(primes.size());
  for (const Int& p : primes) parts.push_back(p.get_str());
  return (kind == Kind::include ? "include:" : "exclude:") + internal::join(parts, ",");
}

Int p_valuation(Int q, const Int& p) {
  if (q == 0) throw std::invalid_argument("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation base must be >= 2");
  Int rest;
  mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  return Int(static_cast<unsigned long>(v));
}

Rat s_norm(const Int& q, const SSpec& S) {
  if (q == 0) throw std::invalid_argument("the norm of zero is not defined");
  S.validate(true);
  Int a = abs(q);
  if (S.kind == SSpec::Kind::include) {
    Rat r = 1;
    for (const Int& p : S.primes) {
      Int rest, pw;
      mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
      if (v == 0) continue;
      mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), v);
      r /= Rat(pw);
    }
    return r;
  }
  // product formula: 1/|q| times the listed primes' contributions, no full
  // factorization of q
  Rat r(Int(1), a);
  r.canonicalize();
  for (const Int& p : S.primes) {
    Int rest, pw;
    mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (v == 0) continue;
    mpz_pow_ui(pw.get_mpz_t(), p.get_mpz_t(), v);
    r *= Rat(pw);
  }
  return r;
}

// ---------------------------------------------------------------------------
// p-adic construction

void PadicParams::validate() const {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("p must be prime");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (beta_schedule.size() < static_cast<std::size_t>(depth))
    throw std::invalid_argument("beta schedule shorter than depth");
  for (const Rat& b : beta_schedule)
    if (!(b > 0 && b < Rat(1, 2)))
      throw std::invalid_argument("betas must lie in (0, 1/2)");
}

namespace {

Int int_pow(const Int& b, const Int& e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), to_u64(e));
  return r;
}

RatInterval padic_window(const Int& p, const Int& a, const Int& u, const Rat& beta) {
  Int pa = int_pow(p, a);
  Rat center(u, pa);
  center.canonicalize();
  Rat rho = beta / (2 * Rat(pa) * Rat(pa));
  return RatInterval(center - rho, center + rho);
}

}  // namespace

PadicConstruction build_padic(const PadicParams& params) {
  params.validate();
  PadicConstruction c;
  c.params = params;
  const Int& p = params.p;
  // smallest level-0 scale whose certificate can reach 1 - 2 beta
  const Rat& b0 = params.beta_schedule[0];
  Int a = 1, pa = p;
  while (!(b0 * pa >= 1 - b0)) {
    pa *= p;
    a += 1;
  }
  Int u = 1;
  c.levels.push_back({a, u, Int(pa - 1), b0, padic_window(p, a, u, b0)});
  for (long k = 1; k < params.depth; ++k) {
    const Rat& bk = params.beta_schedule[k];
    const PadicLevel& prev = c.levels.back();
    Rat rho_prev = prev.beta / (2 * Rat(int_pow(p, prev.a)) * Rat(int_pow(p, prev.a)));
    // minimal scale admitting the smallest appended digit block (lower = 1):
    // strict nesting on the right needs 1 < (rho_prev - rho_new) p^a'
    Int ap = prev.a + 1;
    while (true) {
      Int pap = int_pow(p, ap);
      Rat rho_new = bk / (2 * Rat(pap) * Rat(pap));
      if ((rho_prev - rho_new) * pap > 1) break;
      ap += 1;
    }
    Int up = prev.u * int_pow(p, Int(ap - prev.a)) + 1;  // appends ...0001, p never divides it
    c.levels.push_back({ap, up, Int(int_pow(p, ap) - 1), bk, padic_window(p, ap, up, bk)});
    if (!c.levels[k - 1].window.strictly_contains(c.levels[k].window))
      throw std::logic_error("level windows failed to nest");
  }
  c.enclosure = c.levels.back().window;
  return c;
}

namespace {

// exact per-s value Q * ndl(E, s) * |s|_p is value(); inner drops the Q factor
struct PadicEval {
  const RatInterval& E;
  const Int& p;
  Rat inner(const Int& s) const {
    Int rest;
    mp_bitcnt_t v = mpz_remove(rest.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
    Rat r = nearest_dist_lower(E, s);
    if (v > 0) r /= Rat(int_pow(p, Int(static_cast<unsigned long>(v))));
    return r;
  }
};

}  // namespace

PadicCertificate certify_padic(const PadicConstruction& c, long k, std::uint64_t plain_threshold) {
  if (k < 0 || k >= static_cast<long>(c.levels.size())) throw std::invalid_argument("no such level");
  const PadicLevel& lev = c.levels[k];
  // certified over the whole level window, so the bound holds for every
  // deeper point of the nest (the prune below only needs |xi - u/p^a| <=
  // beta/2 p^{-2a}, which is exactly the window radius)
  const RatInterval& E = lev.window;
  if (!lev.window.contains(c.enclosure))
    throw std::runtime_error("enclosure escapes the level window");
  const Int& p = c.params.p;
  const Int P = int_pow(p, lev.a);
  const Int& Q = lev.Qk;
  PadicEval ev{E, p};
  Rat best = -1;
  Int best_s = 0;
  if (Q <= plain_threshold) {
    for (Int s = 1; s <= Q; ++s) {
      Rat v = ev.inner(s);
      if (best < 0 || v < best) {
        best = v;
        best_s = s;
      }
    }
  } else {
    if (!P.fits_ulong_p())
      throw std::runtime_error("level modulus exceeds the 64-bit fast path");
    const std::uint64_t P64 = to_u64(P), Q64 = to_u64(Q);
    const std::uint64_t u64v = to_u64(lev.u % P);
    const std::uint64_t p64 = to_u64(p);
    // seed with the residue-1 positions, the only plausible minimizers
    Int s0;
    if (mpz_invert(s0.get_mpz_t(), lev.u.get_mpz_t(), P.get_mpz_t()) == 0)
      throw std::logic_error("center not invertible");
    auto consider = [&](const Int& s) {
      Rat v = ev.inner(s);
      if (best < 0 || v < best || (v == best && s < best_s)) {
        best = v;
        best_s = s;
      }
    };
    consider(s0);
    consider(Int(P - s0));
    // prune table: skip s whenever the certified floor (d_s - beta/2)/(P p^v)
    // already exceeds the running minimum
    int vmax = 0;
    {
      std::uint64_t pw = 1;
      while (pw <= Q64 / p64) {
        pw *= p64;
        ++vmax;
      }
    }
    std::vector<std::uint64_t> T(static_cast<std::size_t>(vmax) + 1, 0);
    auto rebuild = [&] {
      Rat base_t = best * P;
      Rat half_beta = lev.beta / 2;
      Rat pw = 1;
      for (int v = 0; v <= vmax; ++v) {
        Int t = rat_floor(base_t * pw + half_beta);
        T[v] = t < 0 ? 0 : (t > P ? to_u64(P) : to_u64(t));
        pw *= p64;
      }
    };
    rebuild();
    std::uint64_t r = 0;
    for (std::uint64_t s = 1; s <= Q64; ++s) {
      r += u64v;
      if (r >= P64) r -= P64;
      std::uint64_t d = r < P64 - r ? r : P64 - r;
      std::uint64_t v = 0;
      if (p64 == 2) {
        v = static_cast<std::uint64_t>(__builtin_ctzll(s));
      } else if (s % p64 == 0) {
        std::uint64_t t = s;
        while (t % p64 == 0) {
          t /= p64;
          ++v;
        }
      }
      if (d > T[v]) continue;
      Int s_int(static_cast<unsigned long>(s));
      Rat val = ev.inner(s_int);
      if (val < best || (val == best && s_int < best_s)) {
        best = val;
        best_s = s_int;
        rebuild();
      }
    }
  }
  PadicCertificate cert;
  cert.k = k;
  cert.Qk = Q;
  cert.value = Rat(Q) * best;
  cert.argmin_s = to_u64(best_s);
  Rat floor = 1 - 2 * lev.beta;
  if (!(cert.value >= floor && cert.value <= 1))
    throw std::runtime_error("certificate " + rat_str(cert.value) +
                             " escapes [1-2beta, 1] at level " + std::to_string(k));
  return cert;
}

// ---------------------------------------------------------------------------
// S-twisted construction

namespace {

RatInterval stwisted_window(const Int& base, const Int& a, const Int& pk, const Int& Q) {
  Int B = int_pow(base, a);
  Rat center(pk, B);
  center.canonicalize();
  Rat unit = Rat(1) / (Rat(B) * Rat(Q));
  return RatInterval(center + Rat(5, 24) * unit, center + Rat(7, 24) * unit);
}

}  // namespace

STwistedConstruction build_s_twisted(const SSpec& S, const Int& base,
                                     const StepFunctionSpec& phi, long depth) {
  S.validate(false);
  if (base < 2 || mpz_probab_prime_p(base.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("base must be prime");
  if (S.contains_prime(base)) throw std::invalid_argument("base must lie outside S");
  if (!phi.nondecreasing_unbounded())
    throw std::invalid_argument("phi must be nondecreasing and unbounded");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  STwistedConstruction c;
  c.S = S;
  c.base = base;
  c.phi = phi;
  {
    Int a = 1, pk = 1;
    Int Q = phi.inverse_at_least(Rat(base));
    c.levels.push_back({a, pk, Q, stwisted_window(base, a, pk, Q)});
  }
  for (long k = 1; k < depth; ++k) {
    const RatInterval cur = c.levels.back().window;
    const Int a_prev = c.levels.back().a;
    bool found = false;
    for (Int a = a_prev + 1; a <= 4 * a_prev + 64 && !found; ++a) {
      Int B = int_pow(base, a);
      Int Q = phi.inverse_at_least(Rat(B));
      Int first = rat_ceil(cur.lo * B), last = rat_floor(cur.hi * B);
      Int pk0 = first - 1;
      if (pk0 < 1) pk0 = 1;
      for (Int pk = pk0; pk <= last + 1; ++pk) {
        if (mpz_divisible_p(pk.get_mpz_t(), base.get_mpz_t())) continue;
        RatInterval w = stwisted_window(base, a, pk, Q);
        if (cur.strictly_contains(w)) {
          c.levels.push_back({a, pk, Q, w});
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::runtime_error("no nested level found");
  }
  c.enclosure = c.levels.back().window;
  return c;
}

namespace {

Int largest_smooth_included(const std::vector<Int>& ps, std::size_t i, const Int& cap) {
  if (cap < 1) return 0;
  if (i == ps.size()) return 1;
  Int best = 0, pw = 1;
  while (pw <= cap) {
    Int sub = largest_smooth_included(ps, i + 1, Int(cap / pw));
    if (sub > 0) {
      Int cand = pw * sub;
      if (cand > best) best = cand;
    }
    if (pw > cap / ps[i]) break;
    pw *= ps[i];
  }
  return best;
}

// largest integer <= cap whose prime support lies in S
Int largest_smooth(const SSpec& S, const Int& cap) {
  if (S.kind == SSpec::Kind::include) {
    Int r = largest_smooth_included(S.primes, 0, cap);
    if (r == 0) throw std::logic_error("no smooth number at or below cap");
    return r;
  }
  for (Int s = cap; s >= 1; --s) {
    bool clean = true;
    for (const Int& p : S.primes)
      if (mpz_divisible_p(s.get_mpz_t(), p.get_mpz_t())) {
        clean = false;
        break;
      }
    if (clean) return s;
  }
  throw std::logic_error("no smooth number at or below cap");
}

}  // namespace

STwistedCertificate certify_s_twisted(const STwistedConstruction& c, long k,
                                      std::uint64_t exhaustive_threshold) {
  if (k < 0 || k >= static_cast<long>(c.levels.size())) throw std::invalid_argument("no such level");
  const STwistedLevel& lev = c.levels[k];
  const RatInterval& E = c.enclosure;
  if (!lev.window.contains(E)) throw std::runtime_error("enclosure escapes the level window");
  const Int B = int_pow(c.base, lev.a);
  const Int& Q = lev.Qk;
  const Rat phiQ = c.phi.eval(Q);
  const Rat prefac = Rat(Q) * phiQ;
  STwistedCertificate cert;
  cert.k = k;
  cert.Qk = Q;
  // multiples of B: inside the window B^j s E never wraps, so the distance is
  // exactly y (B E.lo - p) and y |y|_S >= 1 puts the minimum at y = 1
  Rat G = Rat(B) * E.lo - Rat(lev.pk);
  if (!(G > 0 && Rat(B) * E.hi - Rat(lev.pk) < Rat(1, 2)))
    throw std::logic_error("window arithmetic out of range");
  cert.case1_min = prefac * G;
  cert.case1_all_ge_phi_sixth = cert.case1_min >= phiQ / 6;
  if (Q <= exhaustive_threshold) {
    Rat best = -1, best2 = -1, best1 = -1;
    for (Int s = 1; s <= Q; ++s) {
      Rat v = prefac * nearest_dist_lower(E, s) * s_norm(s, c.S);
      if (best < 0 || v < best) best = v;
      if (mpz_divisible_p(s.get_mpz_t(), B.get_mpz_t())) {
        if (best1 < 0 || v < best1) best1 = v;
      } else {
        if (best2 < 0 || v < best2) best2 = v;
      }
    }
    if (best1 >= 0 && best1 != cert.case1_min)
      throw std::logic_error("closed form disagrees with the exhaustive scan");
    cert.value = best;
    cert.case2_min = best2;
    cert.exhaustive = true;
  } else {
    Int M = largest_smooth(c.S, Q);
    Rat floor2 = prefac * Rat(17, 24) / (Rat(B) * Rat(M));
    cert.case2_floor = floor2;
    cert.value = rmin(cert.case1_min, floor2);
    cert.exhaustive = false;
  }
  if (!(cert.value >= Rat(1, 3)))
    throw std::runtime_error("twisted certificate fell below 1/3");
  return cert;
}

// ---------------------------------------------------------------------------
// Singleton-complement decay

std::vector<ScanEntry> singleton_scan(const CFSpec& xi, const Int& excluded,
                                      const std::vector<Int>& Q_list) {
  if (excluded < 2 || mpz_probab_prime_p(excluded.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("excluded value must be prime");
  SSpec S = SSpec::exclude_finite({excluded});
  std::vector<ScanEntry> out;
  out.reserve(Q_list.size());
  for (const Int& Q : Q_list) {
    if (Q < 1) throw std::invalid_argument("Q values must be >= 1");
    RatInterval E = xi.enclosure(Rat(1) / Rat(Q * Q * Q));
    ScanEntry ent;
    ent.Q = Q;
    if (Q <= 10000) {
      Rat lo_best = -1, up_best = -1;
      Int arg = 0;
      for (Int s = 1; s <= Q; ++s) {
        Rat ns = s_norm(s, S);
        Rat l = nearest_dist_lower(E, s) * ns;
        Rat u = nearest_dist_upper(E, s) * ns;
        if (lo_best < 0 || l < lo_best) lo_best = l;
        if (up_best < 0 || u < up_best) {
          up_best = u;
          arg = s;
        }
      }
      ent.lower = Rat(Q) * lo_best;
      ent.upper = Rat(Q) * up_best;
      ent.argmin_q = arg;
      ent.exhaustive = true;
    } else {
      // upper bound over the best-approximation denominators only
      std::vector<Int> cands;
      for (Int s = 1; s <= 64; ++s) cands.push_back(s);
      if (!xi.is_rational() || !xi.prefix.empty()) {
        Int qp = 0, qc = 1;
        std::size_t i = 1;
        while (true) {
          Int a;
          try {
            a = xi.quotient(i++);
          } catch (const std::out_of_range&) {
            break;
          }
          Int qn = a * qc + qp;
          for (Int t = 1; t <= a; ++t) {
            Int inter = qp + t * qc;
            if (inter > Q) break;
            cands.push_back(inter);
          }
          qp = qc;
          qc = qn;
          if (qp > Q) break;
        }
      }
      std::sort(cands.begin(), cands.end());
      cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
      Rat up_best = -1;
      Int arg = 0;
      for (const Int& s : cands) {
        if (s > Q) break;
        Rat u = nearest_dist_upper(E, s) * s_norm(s, S);
        if (up_best < 0 || u < up_best) {
          up_best = u;
          arg = s;
        }
      }
      ent.lower = 0;
      ent.upper = Rat(Q) * up_best;
      ent.argmin_q = arg;
      ent.exhaustive = false;
    }
    out.push_back(ent);
  }
  return out;
}

}  // namespace ulcert
