#include "ulcert/builder.hpp"

#include <algorithm>

#include "internal.hpp"
#include "ulcert/zaremba.hpp"

namespace ulcert {

using internal::to_u64;

Rat BuilderParams::default_alpha(const Rat& beta) { return beta * Rat(999999, 1000000); }

std::vector<std::string> validate_params(const BuilderParams& p) {
  std::vector<std::string> bad;
  if (p.m < 1) bad.push_back("m must be >= 1");
  if (!(p.tau >= 1)) bad.push_back("tau must be >= 1");
  if (!(p.d > 0)) bad.push_back("d must be positive");
  if (!(p.alpha > 0)) bad.push_back("alpha must be positive");
  if (!(p.alpha < p.beta)) bad.push_back("alpha must be below beta");
  if (!(p.beta * p.d < 1)) bad.push_back("beta*d must stay below 1");
  if (p.tau >= 1 && p.d > 0) {
    Rat c(1, static_cast<unsigned long>(p.m + 2));
    if (!(c - p.beta / p.tau * p.d * p.d > 0))
      bad.push_back("beta*d^2/tau must stay below 1/(m+2)");
  }
  if (p.steps < 1) bad.push_back("steps must be >= 1");
  if (p.search.T_lo < 2) bad.push_back("prime range must start at 2 or later");
  if (p.search.T_hi < p.search.T_lo) bad.push_back("prime range must be nonempty");
  return bad;
}

Rat analytic_bound(const BuilderParams& p) {
  if (!validate_params(p).empty()) throw std::invalid_argument("invalid parameters");
  Rat c(1, static_cast<unsigned long>(p.m + 2));
  Rat b1 = (1 - p.beta * p.d) * (1 - p.beta * p.d) * p.d;
  Rat b2 = p.alpha * p.d * (c - p.beta / p.tau * p.d * p.d) / (p.tau * p.tau);
  return internal::rmin(b1, b2);
}

ConstructionState initial_state(const RatInterval& I0, const RatInterval& J0) {
  return ConstructionState{0, I0, J0, {}};
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

Rat make_frac(std::uint64_t num, std::uint64_t den) {
  Rat r(static_cast<unsigned long>(num), static_cast<unsigned long>(den));
  r.canonicalize();
  return r;
}

// integer window of numerators t with lo <= t/den and t/den + beta*den^-3 <= hi
struct NumWindow {
  Int first, last;  // empty when last < first
  bool empty() const { return last < first; }
};

NumWindow numerator_window(const RatInterval& X, std::uint64_t den, const Rat& beta) {
  Rat d(static_cast<unsigned long>(den));
  NumWindow w;
  w.first = rat_ceil(X.lo * d);
  w.last = rat_floor((X.hi - beta / (d * d * d)) * d);
  return w;
}

// smallest numerator in the window whose companion residue is an m-numerator;
// -1 when none. other is the fixed multiplier taking numerators to residues.
long long smallest_admissible(const NumWindow& w, std::uint64_t den, std::uint64_t other,
                              long m) {
  Int start = w.first < 1 ? Int(1) : w.first;
  for (Int t = start; t <= w.last && t < den; ++t) {
    std::uint64_t tt = to_u64(t);
    std::uint64_t res = mulmod(tt, other, den);  // t*other mod den recovers the residue
    if (res == 0) continue;
    if (is_Fm(make_frac(res, den), m)) return static_cast<long long>(tt);
  }
  return -1;
}

}  // namespace

ConstructionState step(const ConstructionState& st, const BuilderParams& p) {
  {
    auto bad = validate_params(p);
    if (!bad.empty()) throw std::invalid_argument(internal::join(bad, "; "));
  }
  const std::uint64_t t_lo = p.search.T_lo, t_hi = p.search.T_hi;
  std::uint64_t cap = std::min<std::uint64_t>(t_hi, std::max<std::uint64_t>(2 * t_lo, 8));
  while (true) {
    // a stage covers every q <= cap with its full s window, so the first hit
    // in (q asc, s asc) order is the global lexicographic minimum
    auto primes = sieve_primes(t_lo, t_hi);
    for (std::uint64_t q : primes) {
      if (q > cap) break;
      NumWindow pw = numerator_window(st.I, q, p.beta);
      if (pw.empty()) continue;
      for (std::uint64_t s : primes) {
        if (s == q) continue;
        Rat ratio = make_frac(q, s);
        if (!(ratio < p.tau && ratio * p.tau > 1)) continue;
        NumWindow rw = numerator_window(st.J, s, p.beta);
        if (rw.empty()) continue;
        long long pp = smallest_admissible(pw, q, s % q, p.m);
        if (pp < 0) continue;
        long long rr = smallest_admissible(rw, s, q % s, p.m);
        if (rr < 0) continue;
        Quadruple quad{Int(static_cast<unsigned long>(pp)), Int(static_cast<unsigned long>(q)),
                       Int(static_cast<unsigned long>(rr)), Int(static_cast<unsigned long>(s))};
        WitnessCertificate cert = verify_witness(quad, st.I, st.J, p.tau, p.m);
        if (!cert.all_ok())
          throw std::logic_error("builder step produced a quadruple that fails verification");
        ConstructionState next = st;
        Rat q3(quad.q * quad.q * quad.q), s3(quad.s * quad.s * quad.s);
        Rat pq(quad.p, quad.q), rs(quad.r, quad.s);
        pq.canonicalize();
        rs.canonicalize();
        next.I = RatInterval(pq + p.alpha / q3, pq + p.beta / q3);
        next.J = RatInterval(rs + p.alpha / s3, rs + p.beta / s3);
        next.k = st.k + 1;
        LevelEntry entry;
        entry.quad = quad;
        entry.Qk = p.d / p.tau * quad.q * quad.s;
        entry.I = next.I;
        entry.J = next.J;
        next.history.push_back(entry);
        return next;
      }
    }
    if (cap >= t_hi)
      throw WitnessNotFound("no admissible quadruple with denominators up to " +
                                std::to_string(t_hi),
                            t_hi, st);
    cap = std::min(t_hi, cap * 2);
  }
}

StepCertificate certify(const ConstructionState& st, const BuilderParams& p, long k) {
  if (k < 0 || k >= st.k) throw std::invalid_argument("no such level");
  const LevelEntry& lev = st.history[k];
  const Int &qk = lev.quad.q, &sk = lev.quad.s;
  Rat qw = Rat(1) / Rat(qk * qk * qk), sw = Rat(1) / Rat(sk * sk * sk);
  Rat need = internal::rmin(qw, sw);
  if (!(st.I.width() < need) || !(st.J.width() < need))
    throw CertifyInconclusive("enclosure too wide for level " + std::to_string(k));
  Int N = rat_floor(lev.Qk);
  if (N < 1) throw CertifyInconclusive("level scale below 1");
  Rat best = -1;
  Int best_n = 0;
  std::string best_case;
  std::map<std::string, Rat> case_inner;
  for (Int n = 1; n <= N; ++n) {
    Rat v = nearest_dist_lower(st.I, n) * nearest_dist_lower(st.J, n);
    const char* cls = mpz_divisible_p(n.get_mpz_t(), qk.get_mpz_t())   ? "multiple_of_pq"
                      : mpz_divisible_p(n.get_mpz_t(), sk.get_mpz_t()) ? "multiple_of_rs"
                                                                       : "generic";
    auto it = case_inner.find(cls);
    if (it == case_inner.end() || v < it->second) case_inner[cls] = v;
    if (best < 0 || v < best) {
      best = v;
      best_n = n;
      best_case = cls;
    }
  }
  if (best == 0) throw CertifyInconclusive("enclosure admits a vanishing product");
  StepCertificate cert;
  cert.k = k;
  cert.Qk = lev.Qk;
  cert.analytic = analytic_bound(p);
  cert.certified_lower = lev.Qk * best;
  cert.argmin_n = best_n;
  cert.argmin_case = best_case;
  for (auto& [cls, v] : case_inner) cert.case_min[cls] = Rat(lev.Qk * v);
  return cert;
}

RunResult run(const BuilderParams& p) {
  {
    auto bad = validate_params(p);
    if (!bad.empty()) throw std::invalid_argument(internal::join(bad, "; "));
  }
  RatInterval I0(Rat(1, 5), Rat(4, 5)), J0 = I0;
  if (p.search.I.lo != p.search.I.hi) I0 = p.search.I;
  if (p.search.J.lo != p.search.J.hi) J0 = p.search.J;
  RunResult res;
  res.state = initial_state(I0, J0);
  for (long k = 0; k < p.steps; ++k) res.state = step(res.state, p);
  for (long k = 0; k + 1 < p.steps; ++k) {
    try {
      res.certs.push_back(certify(res.state, p, k));
    } catch (const CertifyInconclusive&) {
    }
  }
  res.xi = res.state.I;
  res.zeta = res.state.J;
  res.status = (p.steps >= 2 && res.certs.empty()) ? "no-certifiable-level" : "ok";
  return res;
}

}  // namespace ulcert
