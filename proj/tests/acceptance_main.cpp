// Acceptance gate: twelve end-to-end checks, one line each, exit code = number
// of failures. Each check re-derives its expectations independently of the
// library internals (naive loops, midpoint evaluations, byte comparisons).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulcert/builder.hpp"
#include "ulcert/evaluate.hpp"
#include "ulcert/optimize.hpp"
#include "ulcert/productset.hpp"
#include "ulcert/ratcore.hpp"
#include "ulcert/sarith.hpp"
#include "ulcert/stepfun.hpp"
#include "ulcert/twisted.hpp"
#include "ulcert/witness.hpp"
#include "ulcert/zaremba.hpp"

using namespace ulcert;

namespace {

Rat mk(long n, long d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

void expect(bool ok, const std::string& msg) {
  if (!ok) throw std::runtime_error(msg);
}

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// exact ||x|| without ratcore helpers
Rat nd_ref(const Rat& x) {
  Int fl = rat_floor(x);
  Rat fr = Rat(x - fl);
  Rat other = Rat(1 - fr);
  return fr < other ? fr : other;
}

// same 10^-8 snap the CLI applies to optimizer outputs
Rat snap8(const mpf_class& x) {
  mpf_class scaled(x * 100000000 + 0.5, 256);
  Int n;
  mpz_set_f(n.get_mpz_t(), scaled.get_mpf_t());
  Rat r(n, Int(100000000));
  r.canonicalize();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const char* bin = std::getenv("ULCERT_CLI");
  expect(bin != nullptr, "ULCERT_CLI is not set");
  static int counter = 0;
  std::string stem =
      "/tmp/ulcert_accept_" + std::to_string(::getpid()) + "_" + std::to_string(counter++);
  std::string cmd =
      std::string("\"") + bin + "\" " + args + " >" + stem + ".out 2>" + stem + ".err";
  int rc = std::system(cmd.c_str());
  CliRun r;
  if (rc >= 0 && WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(stem + ".out");
  std::remove((stem + ".out").c_str());
  std::remove((stem + ".err").c_str());
  return r;
}

// ---------------------------------------------------------------------------

void criterion_1() {
  OptResult r = solve(50);
  expect(r.bound > mpf_class(0.005326), "bound at m = 50 must exceed 0.005326");
  expect(r.bound > mpf_class(1.0) / 188, "bound at m = 50 must exceed 1/188");
  expect(abs(r.d_star - mpf_class(0.01465)) < mpf_class(1e-4),
         "d* at m = 50 strays from 0.01465 by more than 1e-4");
  expect(abs(r.beta_star - mpf_class(27.1023)) < mpf_class(1e-2),
         "beta* at m = 50 strays from 27.1023 by more than 1e-2");
}

void criterion_2() {
  OptResult r2 = solve(2);
  expect(r2.bound > mpf_class(1.0) / 15 && r2.bound < mpf_class(0.07),
         "bound at m = 2 must land in (1/15, 0.07)");
  for (long m = 2; m <= 60; ++m)
    expect(solve(m).bound > mpf_class(1.0) / (4 * (m + 2)),
           "bound at m = " + std::to_string(m) + " must exceed 1/(4(m+2))");
  OptResult r5 = solve(5);
  if (!(r5.bound > mpf_class(0.0414))) {
    std::ostringstream msg;
    msg << "bound at m = 5 is " << std::setprecision(10) << r5.bound.get_d()
        << ", short of the 0.0414 target (the two-branch objective tops out near 0.03956)";
    throw std::runtime_error(msg.str());
  }
}

void criterion_3() {
  SearchConfig cfg;
  cfg.I = RatInterval(mk(1, 5), mk(4, 5));
  cfg.J = cfg.I;
  cfg.tau = mk(3, 2);
  cfg.m = 5;
  cfg.T_lo = 50;
  cfg.T_hi = 10000;
  cfg.max_witnesses = 4;
  cfg.validate();
  std::vector<WitnessCertificate> ws = find_witnesses(cfg);
  expect(!ws.empty(), "no witness found in the prime range [50, 10^4]");
  for (const WitnessCertificate& w : ws) {
    WitnessCertificate v = verify_witness(w.quad, cfg.I, cfg.J, cfg.tau, cfg.m);
    expect(v.all_ok(), "a found witness failed independent re-verification");
  }
}

void criterion_4() {
  OptResult opt = solve(5);
  BuilderParams p;
  p.m = 5;
  p.tau = mk(3, 2);
  p.d = snap8(opt.d_star);
  p.beta = snap8(opt.beta_star);
  p.alpha = Rat(p.beta / 2);
  p.steps = 4;
  p.search.I = RatInterval(mk(1, 5), mk(4, 5));
  p.search.J = p.search.I;
  p.search.tau = p.tau;
  p.search.m = p.m;
  p.search.T_lo = 2;
  p.search.T_hi = 131072;
  expect(validate_params(p).empty(), "builder parameters failed validation");
  RunResult res = run(p);
  expect(res.status == "ok", "builder run ended with status " + res.status);
  expect(res.certs.size() == 3, "expected certificates for levels 0..2");
  Rat mid_xi = Rat(Rat(res.xi.lo + res.xi.hi) / 2);
  Rat mid_zeta = Rat(Rat(res.zeta.lo + res.zeta.hi) / 2);
  for (const StepCertificate& c : res.certs) {
    expect(c.certified_lower > 0,
           "level " + std::to_string(c.k) + " certificate is not positive");
    Rat point = dmin_ratQ({mid_xi, mid_zeta}, c.Qk);
    expect(c.certified_lower <= point,
           "level " + std::to_string(c.k) + " certificate exceeds the midpoint value");
  }
}

void criterion_5() {
  ProductSetInstance fix;
  fix.N = 13;
  fix.M = {5, 8};
  fix.L = 3;
  fix.H = 6;
  fix.validate();
  ExceptionalReport rep = exceptional_set(fix);
  std::vector<std::uint64_t> want = {2, 3, 5, 8, 10, 11};
  expect(rep.E == want, "exceptional multipliers of the N = 13 fixture are off");

  for (std::uint64_t N = 50; N <= 300; ++N) {
    if (!is_prime_u64(N)) continue;
    ZarembaSet zs = zaremba_numerators(Int((unsigned long)N), 5);
    ProductSetInstance inst;
    inst.N = N;
    for (const Int& u : zs.numerators) inst.M.push_back(u.get_ui());
    inst.L = N / 3;
    inst.H = N / 3;
    inst.validate();
    VinogradovReport vin = verify_vinogradov(inst);
    expect(vin.ok, "exponential-sum ratio above 1 + 1e-6 at N = " + std::to_string(N));
    ETReport et = erdos_turan_chain(inst);
    expect(et.window_count == 0,
           "an exceptional multiplier landed inside the window at N = " + std::to_string(N));
  }
}

// 10^3 random exact instances of the convergent repulsion bound
void repulsion_random_suite() {
  std::mt19937_64 rng(0x6a01ULL);
  long done = 0, guard = 0, violations = 0;
  while (done < 1000) {
    expect(++guard < 200000, "instance sampling stalled");
    long b = 10 + (long)(rng() % 999991);
    long a = 1 + (long)(rng() % (b - 1));
    Rat x = mk(a, b);
    CFWord w = cf_expand(x);
    std::vector<std::pair<Int, Int>> cv = convergents(w);
    long pick = -1;
    for (long k = 0; k + 1 < (long)cv.size(); ++k)
      if (cv[k].second >= 2 && cv[k].second <= 1000) pick = k;
    if (pick < 0) continue;
    const Int& pp = cv[pick].first;
    const Int& qq = cv[pick].second;
    // product-form error |q x - p| < c q^{-2}
    Rat err = rat_abs(Rat(Rat(x * qq) - pp));
    if (err == 0) continue;
    Rat q2(qq * qq);
    Rat c = Rat(err * q2 + mk(1, 1000));
    Rat cap = Rat(q2 / c);
    Int vmax_i = rat_floor(cap) - 1;
    if (vmax_i > 800) vmax_i = 800;
    if (vmax_i < 2) continue;
    long vmax = vmax_i.get_si();
    // with d = vmax / q^2 the claim gives |v x - u| >= (1 - c d) / q
    Rat bound = Rat(Rat(1 - Rat(c * vmax) / q2) / Rat(qq));
    for (long v = 1; v <= vmax; ++v) {
      Rat vx = Rat(x * v);
      Int u0 = rat_floor(vx);
      for (int off = 0; off <= 1; ++off) {
        Int u = u0 + off;
        if (Int(u * qq) == Int(pp * v)) continue;
        Rat gap = rat_abs(Rat(vx - u));
        if (gap < bound) ++violations;
      }
    }
    ++done;
  }
  expect(violations == 0, "convergent repulsion bound violated");
}

// both-sided error bounds along every convergent of 10^3 random rationals
void successor_suite() {
  std::mt19937_64 rng(0x6a02ULL);
  long violations = 0;
  for (int it = 0; it < 1000; ++it) {
    long b = 2 + (long)(rng() % 99999);
    long a = 1 + (long)(rng() % (b - 1));
    Rat x = mk(a, b);
    std::vector<std::pair<Int, Int>> cv = convergents(cf_expand(x));
    for (std::size_t k = 0; k + 1 < cv.size(); ++k) {
      const Int& qk = cv[k].second;
      const Int& qk1 = cv[k + 1].second;
      Rat err = rat_abs(Rat(x - Rat(cv[k].first, qk)));
      Rat lo(Int(1), Int(qk * (qk1 + qk)));
      lo.canonicalize();
      Rat hi(Int(1), Int(qk * qk1));
      hi.canonicalize();
      if (err < lo || err > hi) ++violations;
    }
    Rat last = Rat(cv.back().first, cv.back().second);
    last.canonicalize();
    if (last != x) ++violations;
  }
  expect(violations == 0, "convergent error bounds violated");
}

// exhaustive window repulsion for every reduced p/q with q <= 50
void window_suite() {
  long violations = 0;
  for (long q = 2; q <= 50; ++q) {
    for (long p = 1; p < q; ++p) {
      if (Int(gcd(Int(p), Int(q))) != 1) continue;
      long Q = 3 * q;
      Rat base = mk(p, q);
      Rat lo = Rat(base + Rat(Int(1), Int(6L * q * Q)));
      Rat hi = Rat(base + Rat(Int(1), Int(3L * q * Q)));
      Rat pts[3] = {lo, Rat(Rat(lo + hi) / 2), hi};
      Rat bound = mk(1, 3 * q);
      for (const Rat& xi : pts) {
        for (long s = 1; s <= Q; ++s) {
          Rat sx = Rat(xi * s);
          Int u0 = rat_floor(sx);
          for (int off = 0; off <= 1; ++off) {
            Int u = u0 + off;
            if (Int(u * q) == Int(Int(s) * Int(p))) continue;
            if (rat_abs(Rat(sx - u)) < bound) ++violations;
          }
        }
      }
    }
  }
  expect(violations == 0, "window repulsion bound violated");
}

void criterion_6() {
  repulsion_random_suite();
  successor_suite();
  window_suite();
}

void criterion_7() {
  for (long p : {2L, 3L}) {
    PadicParams prm;
    prm.p = p;
    prm.depth = 3;
    prm.beta_schedule.assign(3, mk(1, 10));
    PadicConstruction c = build_padic(prm);
    for (long k = 0; k < 3; ++k) {
      PadicCertificate cert = certify_padic(c, k);
      expect(cert.value >= mk(4, 5) && cert.value <= 1,
             "p = " + std::to_string(p) + " level " + std::to_string(k) +
                 " value left [4/5, 1]");
    }
    PadicParams sched;
    sched.p = p;
    sched.depth = 3;
    sched.beta_schedule = {mk(1, 10), mk(1, 20), mk(1, 40)};
    PadicConstruction cs = build_padic(sched);
    Rat prev = -1;
    for (long k = 0; k < 3; ++k) {
      Rat v = certify_padic(cs, k).value;
      expect(v > prev, "p = " + std::to_string(p) + " schedule values must increase strictly");
      prev = v;
    }
  }
}

void criterion_8() {
  STwistedConstruction c =
      build_s_twisted(SSpec::parse("include:3,5"), 2, StepFunctionSpec::parse("pow:1/2"), 3);
  for (long k = 0; k < 3; ++k) {
    STwistedCertificate cert = certify_s_twisted(c, k);
    expect(cert.value >= mk(1, 3), "level " + std::to_string(k) + " value fell below 1/3");
    Int phiq;
    mpz_sqrt(phiq.get_mpz_t(), cert.Qk.get_mpz_t());
    expect(cert.case1_all_ge_phi_sixth && cert.case1_min >= Rat(Rat(phiq) / 6),
           "level " + std::to_string(k) + " case-1 entries fell below Phi(Q)/6");
  }
}

void criterion_9() {
  std::vector<Int> Qs = {100, 10000};
  std::vector<ScanEntry> es = singleton_scan(CFSpec::sqrt2(), 3, Qs);
  expect(es.size() == 2 && es[0].exhaustive && es[1].exhaustive,
         "scan entries must be exhaustive up to 10^4");
  expect(es[1].upper < es[0].lower, "f(10^4) must fall below f(10^2)");
  expect(es[1].upper < mk(1, 100), "f(10^4) must fall below 1/100");
}

void criterion_10() {
  BadTupleSpec spec;
  spec.components.push_back(CFSpec::golden());
  spec.C = mk(1, 3);
  TwistedTrace tr = build_and_certify(spec, StepFunctionSpec::parse("pow:1"),
                                      StepFunctionSpec::parse("const:1"), 3);
  expect(tr.threshold == mk(1, 18), "threshold must be C/6 = 1/18");
  for (const TwistedLevel& lev : tr.levels)
    expect(lev.certified >= mk(1, 18), "a certified level fell below 1/18");
}

void criterion_11() {
  expect(dmin({mk(2, 7), mk(3, 5)}, 4) == mk(4, 35), "dmin fixture 4/35 mismatch");
  std::mt19937_64 rng(0x6a0bULL);
  long violations = 0;
  for (int it = 0; it < 1000; ++it) {
    long b1 = 2 + (long)(rng() % 999);
    long b2 = 2 + (long)(rng() % 999);
    Rat x1 = mk(1 + (long)(rng() % (b1 - 1)), b1);
    Rat x2 = mk(1 + (long)(rng() % (b2 - 1)), b2);
    Int Q = Int((long)(rng() % 300) + 1);
    Rat best = -1;
    for (Int n = 1; n <= Q; ++n) {
      Rat v = Rat(nd_ref(Rat(x1 * n)) * nd_ref(Rat(x2 * n)));
      if (best < 0 || v < best) best = v;
    }
    if (dmin({x1, x2}, Q) != Rat(Rat(Q) * best)) ++violations;
  }
  expect(violations == 0, "dmin disagreed with the naive loop");
}

void criterion_12() {
  const std::vector<std::string> commands = {
      "zaremba --q 211 --m 5",
      "witness --m 5 --tau 3/2 --range 50:200 --I 1/5:4/5 --J 1/5:4/5 --max-witnesses 4",
      "build --steps 3 --m 5 --tau 3/2 --d 5433499/50000000 --beta 72993159/20000000 "
      "--alpha 72993159/40000000 --prime-range 2:131072",
      "twisted --components golden --C 1/3 --phi pow:1 --psi const:1 --levels 3",
      "sarith --op padic --p 2 --beta 1/10 --depth 2",
      "sarith --op padic --p 3 --beta 1/10 --depth 2",
      "sarith --op padic --p 2 --beta-schedule 1/10,1/20 --depth 2",
      "sarith --op padic --p 3 --beta-schedule 1/10,1/20 --depth 2",
      "sarith --op stwisted --base 2 --phi pow:1/2 --S include:3,5 --depth 3",
      "sarith --op singleton --xi sqrt2 --excluded 3 --Q 100,10000",
      "eval --x 2/7,3/5 --Q 4,16,64",
      "optimize --m 50",
      "productset --N 13 --M 5,8 --L 3 --H 6",
  };
  for (const std::string& cmd : commands) {
    CliRun one = run_cli(cmd + " --threads 1");
    CliRun eight = run_cli(cmd + " --threads 8");
    expect(one.code == 0 && eight.code == 0, "command failed: " + cmd);
    expect(one.out == eight.out, "thread counts changed the artifact of: " + cmd);
  }
}

struct Criterion {
  int id;
  const char* label;
  double limit_s;
  std::function<void()> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "optimizer constants at m = 50", 1.0, criterion_1},
      {2, "optimizer floors for m = 2..60 and the m = 5 target", 10.0, criterion_2},
      {3, "witness search with independent re-verification", 60.0, criterion_3},
      {4, "four-step construction certificates", 300.0, criterion_4},
      {5, "exceptional multipliers: fixture and prime sweep", 120.0, criterion_5},
      {6, "repulsion and successor property suites", 60.0, criterion_6},
      {7, "p-adic certificates and schedule monotonicity", 60.0, criterion_7},
      {8, "S-twisted certificates", 120.0, criterion_8},
      {9, "singleton complement decay", 120.0, criterion_9},
      {10, "going-up levels over the golden ratio", 120.0, criterion_10},
      {11, "evaluator against a naive oracle", 30.0, criterion_11},
      {12, "byte-identical artifacts across thread counts", 600.0, criterion_12},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (error.empty() && secs > c.limit_s) {
      std::ostringstream ss;
      ss << "exceeded the time limit (" << std::fixed << std::setprecision(1) << secs << " s > "
         << c.limit_s << " s)";
      error = ss.str();
    }
    std::ostringstream line;
    line << (error.empty() ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.label
         << " (" << std::fixed << std::setprecision(2) << secs << " s)";
    if (!error.empty()) {
      line << " -- " << error;
      ++failures;
    }
    std::cout << line.str() << std::endl;
  }
  if (failures)
    std::cout << failures << " criterion(s) failed" << std::endl;
  else
    std::cout << "all criteria passed" << std::endl;
  return failures;
}
