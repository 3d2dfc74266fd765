#include "ulcert/twisted.hpp"

#include <stdexcept>

namespace ulcert {

Rat bad_constant(const BadTupleSpec& spec, const Int& scan_to) {
  if (spec.components.size() != 1)
    throw std::invalid_argument("only single-component constants are scanned");
  if (scan_to < 1) throw std::invalid_argument("scan bound must be >= 1");
  const CFSpec& z = spec.components[0];
  Rat c(Int(1), Int(z.max_quotient() + 2));
  c.canonicalize();
  RatInterval E = z.enclosure(Rat(1) / Rat(scan_to * scan_to * scan_to));
  for (Int s = 1; s <= scan_to; ++s) {
    Rat v = Rat(s) * nearest_dist_lower(E, s);
    if (v < c) c = v;
  }
  return c;
}

Int choose_Q(const Int& q, const StepFunctionSpec& phi, const StepFunctionSpec& psi,
             const Rat& K, const Int& cutoff) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  Rat runmin = 0;
  for (Int Q = 1; Q <= cutoff; ++Q) {
    Rat v = psi.eval(Q);
    if (Q == 1 || v < runmin) runmin = v;
    if (phi.eval(Q) > q && v <= K * runmin) return Q;
  }
  throw std::runtime_error("no admissible Q at or below the cutoff");
}

Rat choose_K(const StepFunctionSpec& psi, const Int& scan_to) {
  if (psi.nonincreasing()) return 1;
  if (scan_to < 2) throw std::invalid_argument("scan bound must be >= 2");
  std::vector<Rat> ratio;
  Rat runmin = 0;
  for (Int t = 1; t <= scan_to; ++t) {
    Rat v = psi.eval(t);
    if (t == 1 || v < runmin) runmin = v;
    ratio.push_back(Rat(v / runmin));
  }
  // a start q can use any Q > q, so it needs K at least the suffix minimum of
  // the ratio; take the worst start in the scanned range
  Rat need = 0;
  Rat sufmin = ratio.back();
  for (std::size_t i = ratio.size(); i-- > 1;) {
    if (ratio[i] < sufmin) sufmin = ratio[i];
    if (sufmin > need) need = sufmin;
  }
  Rat K = 1;
  while (K < need) K *= 2;
  return K;
}

TwistedTrace build_and_certify(const BadTupleSpec& spec, const StepFunctionSpec& phi,
                               const StepFunctionSpec& psi, long levels) {
  if (levels < 1) throw std::invalid_argument("need at least one level");
  if (spec.components.empty()) throw std::invalid_argument("tuple has no components");
  if (!(spec.C > 0)) throw std::invalid_argument("C must be positive");
  if (!phi.nondecreasing_unbounded())
    throw std::invalid_argument("Phi must be nondecreasing and unbounded");
  TwistedTrace tr;
  tr.C = spec.C;
  tr.K = choose_K(psi, 4096);
  tr.threshold = Rat(tr.C / (6 * tr.K));
  RatInterval cur(0, 1);
  for (long k = 0; k < levels; ++k) {
    bool placed = false;
    for (Int q = 2; q <= 1000000 && !placed; ++q) {
      // cheap necessary window for p before committing to choose_Q
      Int first = rat_ceil(Rat(cur.lo * q) - Rat(1, 6));
      Int last = rat_floor(Rat(cur.hi * q));
      if (first < 1) first = 1;
      if (first > last) continue;
      Int Q = choose_Q(q, phi, psi, tr.K);
      Rat unit = Rat(1) / (Rat(q) * Rat(Q));
      for (Int p = first; p <= last && !placed; ++p) {
        if (gcd(p, q) != 1) continue;
        Rat base(p, q);
        RatInterval w(Rat(base + unit / 6), Rat(base + unit / 3));
        if (cur.strictly_contains(w)) {
          TwistedLevel lev;
          lev.p = p;
          lev.q = q;
          lev.Qk = Q;
          lev.I = w;
          tr.levels.push_back(lev);
          cur = w;
          placed = true;
        }
      }
    }
    if (!placed) throw std::runtime_error("no fitting window below the q cap");
  }
  tr.xi = cur;
  Int Qmax = tr.levels.front().Qk;
  for (const TwistedLevel& lev : tr.levels)
    if (lev.Qk > Qmax) Qmax = lev.Qk;
  Rat width = Rat(1) / (2 * Rat(Qmax) * Rat(Qmax) * Rat(Qmax));
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<RatInterval> Z;
    Z.reserve(spec.components.size());
    for (const CFSpec& z : spec.components) Z.push_back(z.enclosure(width));
    bool all_ok = true;
    for (TwistedLevel& lev : tr.levels) {
      Rat pref = Rat(Rat(lev.Qk) * phi.eval(lev.Qk) / psi.eval(lev.Qk));
      Rat best = -1;
      Int best_n = 0;
      std::string best_case;
      std::map<std::string, Rat> inner_min;
      for (Int n = 1; n <= lev.Qk; ++n) {
        Rat v = nearest_dist_lower(lev.I, n);
        for (const RatInterval& Zi : Z) v *= nearest_dist_lower(Zi, n);
        const char* cls =
            mpz_divisible_p(n.get_mpz_t(), lev.q.get_mpz_t()) ? "multiple_of_pq" : "generic";
        auto it = inner_min.find(cls);
        if (it == inner_min.end())
          inner_min.emplace(cls, v);
        else if (v < it->second)
          it->second = v;
        if (best < 0 || v < best) {
          best = v;
          best_n = n;
          best_case = cls;
        }
      }
      lev.certified = Rat(pref * best);
      lev.argmin_n = best_n;
      lev.argmin_case = best_case;
      lev.case_min.clear();
      for (const auto& kv : inner_min) lev.case_min[kv.first] = Rat(pref * kv.second);
      if (lev.certified < tr.threshold) all_ok = false;
    }
    if (all_ok) return tr;
    width /= 1024;
  }
  throw std::runtime_error("a level stayed below threshold after refinement");
}

}  // namespace ulcert
