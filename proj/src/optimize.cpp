#include "ulcert/optimize.hpp"

#include <stdexcept>

namespace ulcert {

namespace {

constexpr unsigned long kPrec = 256;

mpf_class c_of(long m) {
  mpf_class c(1, kPrec);
  c /= (m + 2);
  return c;
}

}  // namespace

mpf_class objective(long m, const mpf_class& d, const mpf_class& beta) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  mpf_class zero(0, kPrec);
  if (d <= 0 || beta < 0) return zero;
  mpf_class c = c_of(m);
  mpf_class bd = beta * d;
  if (bd >= 1) return zero;
  mpf_class bd2 = bd * d;
  if (bd2 >= c) return zero;
  mpf_class b1 = (1 - bd) * (1 - bd) * d;
  mpf_class b2 = bd * (c - bd2);
  return b1 < b2 ? b1 : b2;
}

std::optional<mpf_class> beta_equilibrium(long m, const mpf_class& d) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (d <= 0) return std::nullopt;
  mpf_class c = c_of(m);
  mpf_class lin = 2 * d + c;
  mpf_class disc = lin * lin - 8 * d * d;
  if (disc < 0) return std::nullopt;
  mpf_class root(0, kPrec);
  root = sqrt(disc);
  return mpf_class((lin - root) / (4 * d * d));
}

OptResult solve(long m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  mpf_class c = c_of(m);
  mpf_class sqrt2(0, kPrec);
  sqrt2 = sqrt(mpf_class(2, kPrec));
  // the discriminant dies at d = c (1 + sqrt 2) / 2, so the search domain ends
  // there; the optimum sits well inside
  mpf_class hi = c * (1 + sqrt2) / 2;
  mpf_class lo = hi / 1024;
  auto g = [&](const mpf_class& d) {
    auto b = beta_equilibrium(m, d);
    if (!b) return mpf_class(0, kPrec);
    return objective(m, d, *b);
  };
  mpf_class invphi = (sqrt(mpf_class(5, kPrec)) - 1) / 2;
  mpf_class a = lo, b = hi;
  mpf_class x1 = b - invphi * (b - a);
  mpf_class x2 = a + invphi * (b - a);
  mpf_class f1 = g(x1), f2 = g(x2);
  mpf_class tol = hi;
  tol *= 1e-12;
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = g(x1);
    }
  }
  mpf_class d_star = (a + b) / 2;
  auto beq = beta_equilibrium(m, d_star);
  if (!beq) throw std::runtime_error("equilibrium lost at the located optimum");
  mpf_class beta_star = *beq;
  mpf_class best = objective(m, d_star, beta_star);
  // local pattern polish over (d, beta); confirms the equilibrium pairing is a
  // genuine 2-D optimum rather than an artifact of the curve parametrization
  mpf_class step = d_star * 1e-6;
  mpf_class bstep = beta_star * 1e-6;
  for (int it = 0; it < 60; ++it) {
    bool moved = false;
    for (int sd = -1; sd <= 1; ++sd) {
      for (int sb = -1; sb <= 1; ++sb) {
        if (sd == 0 && sb == 0) continue;
        mpf_class dd = d_star + sd * step;
        mpf_class bb = beta_star + sb * bstep;
        mpf_class v = objective(m, dd, bb);
        if (v > best) {
          best = v;
          d_star = dd;
          beta_star = bb;
          moved = true;
        }
      }
    }
    if (!moved) {
      step /= 2;
      bstep /= 2;
    }
  }
  OptResult r;
  r.m = m;
  r.d_star.set_prec(kPrec);
  r.beta_star.set_prec(kPrec);
  r.bound.set_prec(kPrec);
  r.branch_gap.set_prec(kPrec);
  r.d_star = d_star;
  r.beta_star = beta_star;
  r.bound = objective(m, d_star, beta_star);
  mpf_class b1 = (1 - beta_star * d_star) * (1 - beta_star * d_star) * d_star;
  mpf_class b2 = beta_star * d_star * (c - beta_star * d_star * d_star);
  r.branch_gap = abs(mpf_class(b1 - b2));
  if (!(r.bound > 0)) throw std::runtime_error("optimum degenerated to the sentinel");
  if (!(d_star > lo && d_star < hi))
    throw std::runtime_error("optimum pinned to the domain edge");
  if (!(r.branch_gap <= 1e-9 * r.bound))
    throw std::runtime_error("branches fail to meet at the optimum");
  if (!(r.bound > c / 4)) throw std::runtime_error("bound fell below the linearity floor");
  return r;
}

}  // namespace ulcert
