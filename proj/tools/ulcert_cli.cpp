#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ulcert/builder.hpp"
#include "ulcert/evaluate.hpp"
#include "ulcert/json_io.hpp"
#include "ulcert/optimize.hpp"
#include "ulcert/parallel.hpp"
#include "ulcert/productset.hpp"
#include "ulcert/ratcore.hpp"
#include "ulcert/sarith.hpp"
#include "ulcert/stepfun.hpp"
#include "ulcert/twisted.hpp"
#include "ulcert/witness.hpp"
#include "ulcert/zaremba.hpp"

namespace {

using ulcert::Int;
using ulcert::ordered_json;
using ulcert::Rat;

constexpr const char* kVersion = "0.1.0";

// Reports carry rationals as exact "a/b" strings; integers ride as JSON
// numbers while they fit 64 bits and fall back to decimal strings. Every
// floating-point field is listed in the sibling "approximate" array.
ordered_json int_json(const Int& v) {
  if (v.fits_slong_p()) return ordered_json(v.get_si());
  return ordered_json(v.get_str());
}

std::string interval_str(const ulcert::RatInterval& iv) {
  return "[" + ulcert::rat_str(iv.lo) + "," + ulcert::rat_str(iv.hi) + "]";
}

std::string mpf_str(const mpf_class& x) {
  char buf[160];
  gmp_snprintf(buf, sizeof buf, "%.50Fg", x.get_mpf_t());
  return buf;
}

Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_range_u64(const std::string& s) {
  auto pos = s.find(':');
  std::size_t used_lo = 0, used_hi = 0;
  std::uint64_t lo = 0, hi = 0;
  if (pos != std::string::npos) {
    try {
      lo = std::stoull(s.substr(0, pos), &used_lo);
      hi = std::stoull(s.substr(pos + 1), &used_hi);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
  }
  if (pos == std::string::npos || used_lo != pos || used_hi != s.size() - pos - 1)
    throw std::invalid_argument("range wants lo:hi with integer endpoints, got '" + s + "'");
  return {lo, hi};
}

ulcert::RatInterval parse_interval(const std::string& s) {
  auto pos = s.find(':');
  if (pos == std::string::npos)
    throw std::invalid_argument("interval wants lo:hi, got '" + s + "'");
  return ulcert::RatInterval(ulcert::parse_rat(s.substr(0, pos)),
                             ulcert::parse_rat(s.substr(pos + 1)));
}

// Exact rational snap of an optimizer output, denominator 10^8. Used only
// when --d/--beta are left to the optimizer; certificates then run on the
// snapped exact values.
Rat snap_1e8(const mpf_class& x) {
  mpf_class scaled(x * 100000000 + 0.5, 256);
  Int n;
  mpz_set_f(n.get_mpz_t(), scaled.get_mpf_t());
  Rat r(n, Int(100000000));
  r.canonicalize();
  return r;
}

struct Output {
  ordered_json doc;
  ordered_json params;
  std::optional<std::string> csv;  // only the tabular subcommands fill this
};

struct Ctx {
  std::string out;
  std::string format = "json";
  unsigned threads = 0;
  std::string subcommand;
  std::chrono::steady_clock::time_point start;
  Output result;
  bool produced = false;
};

void begin(Ctx& ctx, const char* name) {
  ctx.subcommand = name;
  ctx.start = std::chrono::steady_clock::now();
  ulcert::set_thread_cap(ctx.threads);
}

// Main artifact to --out (or stdout), then the manifest sidecar. The sidecar
// is the only place wall time lives, so the artifact itself is byte-stable
// across runs and thread counts.
void emit(Ctx& ctx) {
  if (!ctx.produced) return;
  std::string payload;
  if (ctx.format == "csv") {
    if (!ctx.result.csv)
      throw std::invalid_argument("--format csv is not available for '" + ctx.subcommand + "'");
    payload = *ctx.result.csv;
  } else {
    payload = ctx.result.doc.dump(2) + "\n";
  }
  if (ctx.out.empty()) {
    std::cout << payload;
    return;
  }
  {
    std::ofstream f(ctx.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write output file '" + ctx.out + "'");
    f << payload;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - ctx.start)
                .count();
  ordered_json man;
  man["subcommand"] = ctx.subcommand;
  man["params"] = ctx.result.params;
  man["artifact_version"] = kVersion;
  man["wall_ms"] = ms;
  man["sha256"] = ulcert::sha256_hex(payload);
  std::ofstream mf(ctx.out + ".manifest.json", std::ios::binary);
  if (!mf) throw std::invalid_argument("cannot write manifest next to '" + ctx.out + "'");
  mf << man.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic certificates for uniform Littlewood constructions"};
  app.require_subcommand(1);
  Ctx ctx;
  app.add_option("--out", ctx.out, "write the report here plus a .manifest.json sidecar");
  app.add_option("--format", ctx.format, "json or csv (csv only for tabular reports)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", ctx.threads, "parallelism cap, 0 = hardware");

  // ---- cf ----------------------------------------------------------------
  struct {
    std::string x;
  } cf_o;
  auto* cf = app.add_subcommand("cf", "continued fraction expansion of a rational");
  cf->fallthrough();
  cf->add_option("--x", cf_o.x, "rational a/b")->required();
  cf->callback([&] {
    begin(ctx, "cf");
    Rat x = ulcert::parse_rat(cf_o.x);
    auto w = ulcert::cf_expand(x);
    ordered_json conv = ordered_json::array();
    for (auto& [p, q] : ulcert::convergents(w))
      conv.push_back(ordered_json{{"p", int_json(p)}, {"q", int_json(q)}});
    ordered_json doc;
    doc["x"] = ulcert::rat_str(x);
    doc["word"] = ulcert::cfword_json(w);
    doc["twin"] = ulcert::cfword_json(ulcert::non_canonical_twin(w));
    doc["convergents"] = conv;
    ctx.result.doc = std::move(doc);
    ctx.result.params = ordered_json{{"x", ulcert::rat_str(x)}};
    ctx.produced = true;
  });

  // ---- zaremba -----------------------------------------------------------
  struct {
    std::uint64_t q = 0;
    long m = 0;
  } za_o;
  auto* za = app.add_subcommand("zaremba", "m-numerators for a denominator");
  za->fallthrough();
  za->add_option("--q", za_o.q, "denominator, >= 2")->required();
  za->add_option("--m", za_o.m, "quotient cap")->required();
  za->callback([&] {
    begin(ctx, "zaremba");
    auto zs = ulcert::zaremba_numerators(Int(static_cast<unsigned long>(za_o.q)), za_o.m);
    ordered_json nums = ordered_json::array();
    for (auto& u : zs.numerators) nums.push_back(int_json(u));
    ordered_json doc;
    doc["q"] = za_o.q;
    doc["m"] = za_o.m;
    doc["numerators"] = nums;
    doc["count"] = zs.numerators.size();
    ctx.result.doc = std::move(doc);
    ctx.result.params = ordered_json{{"q", za_o.q}, {"m", za_o.m}};
    ctx.produced = true;
  });

  // ---- density -----------------------------------------------------------
  struct {
    long T = 0, m = 0;
    std::string gamma, sigma;
  } de_o;
  auto* de = app.add_subcommand("density", "numerator-set density over a prime range");
  de->fallthrough();
  de->add_option("--T", de_o.T, "range top")->required();
  de->add_option("--gamma", de_o.gamma, "range bottom fraction, rational")->required();
  de->add_option("--m", de_o.m, "quotient cap")->required();
  de->add_option("--sigma", de_o.sigma, "density exponent, rational")->required();
  de->callback([&] {
    begin(ctx, "density");
    auto rep = ulcert::density_report(de_o.T, ulcert::parse_rat(de_o.gamma), de_o.m,
                                      ulcert::parse_rat(de_o.sigma));
    ordered_json primes = ordered_json::array();
    std::string csv = "q,card,pass\n";
    for (auto& row : rep.rows) {
      primes.push_back(
          ordered_json{{"q", row.q}, {"card", row.card}, {"pass", row.pass}});
      csv += std::to_string(row.q) + "," + std::to_string(row.card) + "," +
             (row.pass ? "1" : "0") + "\n";
    }
    ordered_json doc;
    doc["T"] = rep.T;
    doc["gamma"] = ulcert::rat_str(rep.gamma);
    doc["m"] = rep.m;
    doc["sigma"] = ulcert::rat_str(rep.sigma);
    doc["primes"] = primes;
    doc["density"] = ulcert::rat_str(rep.density);
    ctx.result.doc = std::move(doc);
    ctx.result.params = ordered_json{{"T", de_o.T},
                                     {"gamma", ulcert::rat_str(rep.gamma)},
                                     {"m", de_o.m},
                                     {"sigma", ulcert::rat_str(rep.sigma)}};
    ctx.result.csv = std::move(csv);
    ctx.produced = true;
  });

  // ---- productset --------------------------------------------------------
  struct {
    std::uint64_t N = 0, L = 0, H = 0;
    std::vector<std::uint64_t> M;
    long zm = -1;
    bool third = false;
  } ps_o;
  auto* ps = app.add_subcommand("productset", "exceptional multipliers and discrepancy checks");
  ps->fallthrough();
  ps->add_option("--N", ps_o.N, "prime modulus")->required();
  ps->add_option("--M", ps_o.M, "residue set, comma separated")->delimiter(',');
  ps->add_option("--zaremba-m", ps_o.zm, "derive the residue set as the m-numerators of N");
  ps->add_option("--L", ps_o.L, "window start (window is L+1..L+H)");
  ps->add_option("--H", ps_o.H, "window length");
  ps->add_flag("--middle-third", ps_o.third, "use L = H = floor(N/3)");
  ps->callback([&] {
    begin(ctx, "productset");
    ulcert::ProductSetInstance inst;
    inst.N = ps_o.N;
    if (!ps_o.M.empty() && ps_o.zm >= 0)
      throw std::invalid_argument("--M and --zaremba-m are mutually exclusive");
    if (ps_o.M.empty() && ps_o.zm < 0)
      throw std::invalid_argument("one of --M or --zaremba-m is required");
    if (ps_o.M.empty()) {
      auto zs = ulcert::zaremba_numerators(Int(static_cast<unsigned long>(ps_o.N)), ps_o.zm);
      for (auto& u : zs.numerators) inst.M.push_back(u.get_ui());
    } else {
      inst.M = ps_o.M;
    }
    if (ps_o.third) {
      inst.L = ps_o.N / 3;
      inst.H = ps_o.N / 3;
    } else {
      inst.L = ps_o.L;
      inst.H = ps_o.H;
    }
    inst.validate();
    auto exc = ulcert::exceptional_set(inst);
    auto vin = ulcert::verify_vinogradov(inst);
    auto et = ulcert::erdos_turan_chain(inst);
    ordered_json doc;
    doc["N"] = inst.N;
    doc["M_card"] = inst.M.size();
    doc["L"] = inst.L;
    doc["H"] = inst.H;
    doc["E"] = exc.E;
    doc["E_card"] = exc.card;
    doc["eta_fit"] = exc.eta_fit ? ordered_json(*exc.eta_fit) : ordered_json("empty");
    doc["max_vinogradov_ratio"] = vin.max_ratio;
    doc["et_ok"] = et.empty ? true : et.delta_le_bound;
    doc["window_count"] = et.window_count;
    doc["approximate"] = {"eta_fit", "max_vinogradov_ratio"};
    ctx.result.doc = std::move(doc);
    ctx.result.params = ordered_json{{"N", inst.N},
                                     {"M", inst.M},
                                     {"L", inst.L},
                                     {"H", inst.H}};
    ctx.produced = true;
    if (!vin.ok)
      throw std::runtime_error("vinogradov ratio above 1 + 1e-6 at lambda = " +
                               std::to_string(vin.argmax_lambda));
  });

  // ---- witness -----------------------------------------------------------
  struct {
    long m = 5;
    std::string tau, range, I, J, margin = "0";
    std::uint64_t maxw = 16;
  } wi_o;
  auto* wi = app.add_subcommand("witness", "search and verify witness quadruples");
  wi->fallthrough();
  wi->add_option("--m", wi_o.m, "quotient cap")->required();
  wi->add_option("--tau", wi_o.tau, "ratio window, rational > 1")->required();
  wi->add_option("--range", wi_o.range, "prime range lo:hi")->required();
  wi->add_option("--I", wi_o.I, "target interval lo:hi for p/q")->required();
  wi->add_option("--J", wi_o.J, "target interval lo:hi for r/s")->required();
  wi->add_option("--max-witnesses", wi_o.maxw, "stop after this many");
  wi->add_option("--left-margin", wi_o.margin, "shrink both targets from the right");
  wi->callback([&] {
    begin(ctx, "witness");
    ulcert::SearchConfig cfg;
    cfg.I = parse_interval(wi_o.I);
    cfg.J = parse_interval(wi_o.J);
    cfg.tau = ulcert::parse_rat(wi_o.tau);
    cfg.m = wi_o.m;
    auto [lo, hi] = parse_range_u64(wi_o.range);
    cfg.T_lo = lo;
    cfg.T_hi = hi;
    cfg.max_witnesses = wi_o.maxw;
    cfg.left_margin = ulcert::parse_rat(wi_o.margin);
    cfg.validate();
    auto found = ulcert::find_witnesses(cfg);
    ordered_json wits = ordered_json::array();
    for (auto& w : found) {
      // independent path: recompute every condition before reporting
      auto v = ulcert::verify_witness(w.quad, cfg.I, cfg.J, cfg.tau, cfg.m);
      if (!v.all_ok()) {
        std::string failed;
        for (auto& [name, ok] : v.checks)
          if (!ok) failed += (failed.empty() ? "" : ", ") + name;
        throw std::runtime_error(
            "witness (" + w.quad.p.get_str() + "," + w.quad.q.get_str() + "," +
            w.quad.r.get_str() + "," + w.quad.s.get_str() +
            ") failed re-verification: " + failed);
      }
      ordered_json cf1 = ordered_json::array(), cf2 = ordered_json::array();
      for (auto& a : w.cf_ps_over_q.quotients) cf1.push_back(int_json(a));
      for (auto& a : w.cf_qr_over_s.quotients) cf2.push_back(int_json(a));
      wits.push_back(ordered_json{{"p", int_json(w.quad.p)},
                                  {"q", int_json(w.quad.q)},
                                  {"r", int_json(w.quad.r)},
                                  {"s", int_json(w.quad.s)},
                                  {"ratio", ulcert::rat_str(w.ratio)},
                                  {"cf1", cf1},
                                  {"cf2", cf2}});
    }
    ordered_json config{{"m", cfg.m},
                        {"tau", ulcert::rat_str(cfg.tau)},
                        {"I", interval_str(cfg.I)},
                        {"J", interval_str(cfg.J)},
                        {"prime_range", ordered_json::array({lo, hi})},
                        {"max_witnesses", cfg.max_witnesses},
                        {"left_margin", ulcert::rat_str(cfg.left_margin)}};
    ordered_json doc;
    doc["config"] = config;
    doc["witnesses"] = wits;
    doc["count"] = wits.size();
    ctx.result.doc = std::move(doc);
    ctx.result.params = config;
    ctx.produced = true;
  });

  // ---- build -------------------------------------------------------------
  struct {
    long steps = 1, m = 5;
    std::string tau, d, beta, alpha;
    std::string prange = "2:100000", I = "1/5:4/5", J = "1/5:4/5";
  } bu_o;
  auto* bu = app.add_subcommand("build", "nested construction with per-level certificates");
  bu->fallthrough();
  bu->add_option("--steps", bu_o.steps, "nesting steps")->required();
  bu->add_option("--m", bu_o.m, "quotient cap")->required();
  bu->add_option("--tau", bu_o.tau, "ratio window, rational")->required();
  bu->add_option("--d", bu_o.d, "density parameter, rational (optimizer-derived if omitted)");
  bu->add_option("--beta", bu_o.beta, "window scale, rational (optimizer-derived if omitted)");
  bu->add_option("--alpha", bu_o.alpha, "inner window scale, default beta*(1 - 10^-6)");
  bu->add_option("--prime-range", bu_o.prange, "witness prime range lo:hi");
  bu->add_option("--I", bu_o.I, "starting interval for xi");
  bu->add_option("--J", bu_o.J, "starting interval for zeta");
  bu->callback([&] {
    begin(ctx, "build");
    ulcert::BuilderParams p;
    p.m = bu_o.m;
    p.steps = bu_o.steps;
    p.tau = ulcert::parse_rat(bu_o.tau);
    if (bu_o.d.empty() || bu_o.beta.empty()) {
      auto opt = ulcert::solve(p.m);
      p.d = bu_o.d.empty() ? snap_1e8(opt.d_star) : ulcert::parse_rat(bu_o.d);
      p.beta = bu_o.beta.empty() ? snap_1e8(opt.beta_star) : ulcert::parse_rat(bu_o.beta);
    } else {
      p.d = ulcert::parse_rat(bu_o.d);
      p.beta = ulcert::parse_rat(bu_o.beta);
    }
    p.alpha = bu_o.alpha.empty() ? ulcert::BuilderParams::default_alpha(p.beta)
                                 : ulcert::parse_rat(bu_o.alpha);
    auto [lo, hi] = parse_range_u64(bu_o.prange);
    p.search.T_lo = lo;
    p.search.T_hi = hi;
    p.search.I = parse_interval(bu_o.I);
    p.search.J = parse_interval(bu_o.J);
    p.search.tau = p.tau;
    p.search.m = p.m;
    auto res = ulcert::run(p);
    ordered_json params{{"m", p.m},
                        {"tau", ulcert::rat_str(p.tau)},
                        {"d", ulcert::rat_str(p.d)},
                        {"beta", ulcert::rat_str(p.beta)},
                        {"alpha", ulcert::rat_str(p.alpha)},
                        {"steps", p.steps},
                        {"prime_range", ordered_json::array({lo, hi})},
                        {"I0", interval_str(p.search.I)},
                        {"J0", interval_str(p.search.J)}};
    ordered_json steps = ordered_json::array();
    for (auto& lev : res.state.history)
      steps.push_back(ordered_json{{"p", int_json(lev.quad.p)},
                                   {"q", int_json(lev.quad.q)},
                                   {"r", int_json(lev.quad.r)},
                                   {"s", int_json(lev.quad.s)},
                                   {"Qk", ulcert::rat_str(lev.Qk)},
                                   {"I", interval_str(lev.I)},
                                   {"J", interval_str(lev.J)}});
    ordered_json certs = ordered_json::array();
    for (auto& c : res.certs)
      certs.push_back(ordered_json{{"k", c.k},
                                   {"Qk", ulcert::rat_str(c.Qk)},
                                   {"certified_lower", ulcert::rat_str(c.certified_lower)},
                                   {"analytic_bound", ulcert::rat_str(c.analytic)},
                                   {"argmin_n", int_json(c.argmin_n)},
                                   {"case", c.argmin_case}});
    ordered_json doc;
    doc["params"] = params;
    doc["steps"] = steps;
    doc["certificates"] = certs;
    doc["xi"] = interval_str(res.xi);
    doc["zeta"] = interval_str(res.zeta);
    doc["status"] = res.status;
    ctx.result.doc = std::move(doc);
    ctx.result.params = params;
    ctx.produced = true;
    if (res.status != "ok")
      throw std::runtime_error("certification inconclusive at every level (status " +
                               res.status + ")");
  });

  // ---- twisted -----------------------------------------------------------
  struct {
    std::vector<std::string> comps;
    std::string C, phi, psi;
    long levels = 1;
    std::uint64_t scan_to = 1000;
  } tw_o;
  auto* tw = app.add_subcommand("twisted", "going-up levels against a badly approximable tuple");
  tw->fallthrough();
  tw->add_option("--components", tw_o.comps, "CF specs, e.g. golden sqrt2 cf:0:1:2,3")
      ->required();
  tw->add_option("--phi", tw_o.phi, "growth function spec")->required();
  tw->add_option("--psi", tw_o.psi, "weight function spec")->required();
  tw->add_option("--levels", tw_o.levels, "levels to build")->required();
  tw->add_option("--C", tw_o.C, "override the certified bad constant, rational");
  tw->add_option("--scan-to", tw_o.scan_to, "scan depth for the bad constant");
  tw->callback([&] {
    begin(ctx, "twisted");
    ulcert::BadTupleSpec spec;
    for (auto& s : tw_o.comps) spec.components.push_back(ulcert::CFSpec::parse(s));
    auto phi = ulcert::StepFunctionSpec::parse(tw_o.phi);
    auto psi = ulcert::StepFunctionSpec::parse(tw_o.psi);
    if (!tw_o.C.empty()) {
      spec.C = ulcert::parse_rat(tw_o.C);
    } else {
      // certified constant for the tuple: product of per-component constants
      Rat prod = 1;
      for (auto& comp : spec.components) {
        ulcert::BadTupleSpec one;
        one.components = {comp};
        prod *= ulcert::bad_constant(one, Int(static_cast<unsigned long>(tw_o.scan_to)));
      }
      spec.C = prod;
    }
    auto trace = ulcert::build_and_certify(spec, phi, psi, tw_o.levels);
    ordered_json comps = ordered_json::array();
    for (auto& comp : spec.components) comps.push_back(comp.describe());
    ordered_json params{{"components", comps},
                        {"levels", tw_o.levels},
                        {"scan_to", tw_o.scan_to}};
    ordered_json steps = ordered_json::array();
    ordered_json certs = ordered_json::array();
    long k = 0;
    for (auto& lev : trace.levels) {
      steps.push_back(ordered_json{{"p", int_json(lev.p)},
                                   {"q", int_json(lev.q)},
                                   {"Qk", int_json(lev.Qk)},
                                   {"I", interval_str(lev.I)}});
      certs.push_back(ordered_json{{"k", k},
                                   {"Qk", int_json(lev.Qk)},
                                   {"certified_lower", ulcert::rat_str(lev.certified)},
                                   {"argmin_n", int_json(lev.argmin_n)},
                                   {"case", lev.argmin_case}});
      ++k;
    }
    ordered_json doc;
    doc["params"] = params;
    doc["C"] = ulcert::rat_str(trace.C);
    doc["K"] = ulcert::rat_str(trace.K);
    doc["phi"] = phi.describe();
    doc["psi"] = psi.describe();
    doc["threshold"] = ulcert::rat_str(trace.threshold);
    doc["steps"] = steps;
    doc["certificates"] = certs;
    doc["xi"] = interval_str(trace.xi);
    ctx.result.doc = std::move(doc);
    params["phi"] = phi.describe();
    params["psi"] = psi.describe();
    params["C"] = ulcert::rat_str(spec.C);
    ctx.result.params = params;
    ctx.produced = true;
  });

  // ---- sarith ------------------------------------------------------------
  struct {
    std::string op, p, beta = "1/10", base, phi, S, q, xi, excluded;
    std::vector<std::string> beta_sched, Qs;
    long depth = 1;
    std::uint64_t plain = 100000, exth = 1u << 21;
  } sa_o;
  auto* sa = app.add_subcommand("sarith", "p-adic / S-twisted constructions and scans");
  sa->fallthrough();
  sa->add_option("--op", sa_o.op, "padic | stwisted | snorm | singleton")
      ->required()
      ->check(CLI::IsMember({"padic", "stwisted", "snorm", "singleton"}));
  sa->add_option("--p", sa_o.p, "prime (padic)");
  sa->add_option("--beta", sa_o.beta, "level width, rational (padic)");
  sa->add_option("--beta-schedule", sa_o.beta_sched, "per-level widths (padic)")
      ->delimiter(',');
  sa->add_option("--depth", sa_o.depth, "levels to build");
  sa->add_option("--plain-threshold", sa_o.plain, "largest Q run with plain rationals");
  sa->add_option("--base", sa_o.base, "prime base (stwisted)");
  sa->add_option("--phi", sa_o.phi, "growth function spec (stwisted)");
  sa->add_option("--S", sa_o.S, "prime set, include:3,5 or exclude:3");
  sa->add_option("--exhaustive-threshold", sa_o.exth, "largest Q scanned exhaustively");
  sa->add_option("--q", sa_o.q, "integer to measure (snorm)");
  sa->add_option("--xi", sa_o.xi, "CF spec (singleton)");
  sa->add_option("--excluded", sa_o.excluded, "excluded prime (singleton)");
  sa->add_option("--Q", sa_o.Qs, "scan points (singleton)")->delimiter(',');
  sa->callback([&] {
    begin(ctx, "sarith");
    ordered_json doc;
    ordered_json params{{"op", sa_o.op}};
    doc["op"] = sa_o.op;
    if (sa_o.op == "padic") {
      if (sa_o.p.empty()) throw std::invalid_argument("--p is required for --op padic");
      ulcert::PadicParams pp;
      pp.p = parse_int(sa_o.p);
      pp.depth = sa_o.depth;
      if (sa_o.beta_sched.empty()) {
        pp.beta_schedule.assign(static_cast<std::size_t>(sa_o.depth),
                                ulcert::parse_rat(sa_o.beta));
      } else {
        for (auto& b : sa_o.beta_sched) pp.beta_schedule.push_back(ulcert::parse_rat(b));
      }
      pp.validate();
      auto c = ulcert::build_padic(pp);
      ordered_json cons = ordered_json::array();
      ordered_json certs = ordered_json::array();
      for (std::size_t k = 0; k < c.levels.size(); ++k) {
        auto& lev = c.levels[k];
        cons.push_back(ordered_json{{"k", k},
                                    {"a", int_json(lev.a)},
                                    {"u", int_json(lev.u)},
                                    {"Qk", int_json(lev.Qk)},
                                    {"beta", ulcert::rat_str(lev.beta)},
                                    {"window", interval_str(lev.window)}});
        auto ct = ulcert::certify_padic(c, static_cast<long>(k), sa_o.plain);
        certs.push_back(ordered_json{{"k", ct.k},
                                     {"Qk", int_json(ct.Qk)},
                                     {"value", ulcert::rat_str(ct.value)},
                                     {"argmin_s", ct.argmin_s}});
      }
      ordered_json sched = ordered_json::array();
      for (auto& b : pp.beta_schedule) sched.push_back(ulcert::rat_str(b));
      params["p"] = int_json(pp.p);
      params["beta_schedule"] = sched;
      params["depth"] = pp.depth;
      params["plain_threshold"] = sa_o.plain;
      doc["params"] = params;
      doc["construction"] = cons;
      doc["certificates"] = certs;
      doc["scan"] = ordered_json::array();
    } else if (sa_o.op == "stwisted") {
      if (sa_o.base.empty() || sa_o.phi.empty() || sa_o.S.empty())
        throw std::invalid_argument("--base, --phi and --S are required for --op stwisted");
      auto S = ulcert::SSpec::parse(sa_o.S);
      auto phi = ulcert::StepFunctionSpec::parse(sa_o.phi);
      auto c = ulcert::build_s_twisted(S, parse_int(sa_o.base), phi, sa_o.depth);
      ordered_json cons = ordered_json::array();
      ordered_json certs = ordered_json::array();
      for (std::size_t k = 0; k < c.levels.size(); ++k) {
        auto& lev = c.levels[k];
        cons.push_back(ordered_json{{"k", k},
                                    {"a", int_json(lev.a)},
                                    {"pk", int_json(lev.pk)},
                                    {"Qk", int_json(lev.Qk)},
                                    {"window", interval_str(lev.window)}});
        auto ct = ulcert::certify_s_twisted(c, static_cast<long>(k), sa_o.exth);
        certs.push_back(ordered_json{
            {"k", ct.k},
            {"Qk", int_json(ct.Qk)},
            {"value", ulcert::rat_str(ct.value)},
            {"case1_min", ulcert::rat_str(ct.case1_min)},
            {"case1_all_ge_phi_sixth", ct.case1_all_ge_phi_sixth},
            {"case2_min", ct.case2_min ? ordered_json(ulcert::rat_str(*ct.case2_min))
                                       : ordered_json(nullptr)},
            {"case2_floor", ct.case2_floor ? ordered_json(ulcert::rat_str(*ct.case2_floor))
                                           : ordered_json(nullptr)},
            {"exhaustive", ct.exhaustive}});
      }
      params["S"] = S.describe();
      params["base"] = int_json(c.base);
      params["phi"] = phi.describe();
      params["depth"] = sa_o.depth;
      params["exhaustive_threshold"] = sa_o.exth;
      doc["params"] = params;
      doc["construction"] = cons;
      doc["certificates"] = certs;
      doc["scan"] = ordered_json::array();
    } else if (sa_o.op == "snorm") {
      if (sa_o.q.empty() || sa_o.S.empty())
        throw std::invalid_argument("--q and --S are required for --op snorm");
      auto S = ulcert::SSpec::parse(sa_o.S);
      Int q = parse_int(sa_o.q);
      params["q"] = int_json(q);
      params["S"] = S.describe();
      doc["params"] = params;
      doc["q"] = int_json(q);
      doc["S"] = S.describe();
      doc["norm"] = ulcert::rat_str(ulcert::s_norm(q, S));
    } else {  // singleton
      if (sa_o.xi.empty() || sa_o.excluded.empty() || sa_o.Qs.empty())
        throw std::invalid_argument("--xi, --excluded and --Q are required for --op singleton");
      auto xi = ulcert::CFSpec::parse(sa_o.xi);
      Int excluded = parse_int(sa_o.excluded);
      std::vector<Int> Ql;
      for (auto& s : sa_o.Qs) Ql.push_back(parse_int(s));
      auto entries = ulcert::singleton_scan(xi, excluded, Ql);
      ordered_json scan = ordered_json::array();
      for (auto& e : entries)
        scan.push_back(ordered_json{{"Q", int_json(e.Q)},
                                    {"value", ulcert::rat_str(e.upper)},
                                    {"lower", ulcert::rat_str(e.lower)},
                                    {"upper", ulcert::rat_str(e.upper)},
                                    {"argmin_q", int_json(e.argmin_q)},
                                    {"exhaustive", e.exhaustive}});
      params["xi"] = xi.describe();
      params["excluded"] = int_json(excluded);
      doc["params"] = params;
      doc["construction"] = ordered_json::array();
      doc["certificates"] = ordered_json::array();
      doc["scan"] = scan;
    }
    ctx.result.doc = std::move(doc);
    ctx.result.params = params;
    ctx.produced = true;
  });

  // ---- eval --------------------------------------------------------------
  struct {
    std::vector<std::string> xs, Qs;
    std::string psi;
    bool lower = false;
  } ev_o;
  auto* ev = app.add_subcommand("eval", "finite-Q approximation profiles");
  ev->fallthrough();
  ev->add_option("--x", ev_o.xs, "coordinates a/b, or lo:hi intervals with --lower")
      ->required()
      ->delimiter(',');
  ev->add_option("--Q", ev_o.Qs, "profile points")->required()->delimiter(',');
  ev->add_option("--psi", ev_o.psi, "optional weight function spec");
  ev->add_flag("--lower", ev_o.lower, "certified lower bounds over interval coordinates");
  ev->callback([&] {
    begin(ctx, "eval");
    std::vector<Int> Ql;
    for (auto& s : ev_o.Qs) Ql.push_back(parse_int(s));
    std::vector<ulcert::ProfileEntry> entries;
    ordered_json coords = ordered_json::array();
    if (ev_o.lower) {
      std::vector<ulcert::RatInterval> Xs;
      for (auto& s : ev_o.xs) Xs.push_back(parse_interval(s));
      for (auto& X : Xs) coords.push_back(interval_str(X));
      entries = ulcert::profile_lower(Xs, Ql);
    } else {
      std::vector<Rat> xs;
      for (auto& s : ev_o.xs) xs.push_back(ulcert::parse_rat(s));
      for (auto& x : xs) coords.push_back(ulcert::rat_str(x));
      entries = ulcert::profile(xs, Ql);
    }
    std::optional<ulcert::StepFunctionSpec> psi;
    if (!ev_o.psi.empty()) psi = ulcert::StepFunctionSpec::parse(ev_o.psi);
    ordered_json rows = ordered_json::array();
    std::string csv = psi ? "Q,inner_min,value,value_approx,weighted_value\n"
                          : "Q,inner_min,value,value_approx\n";
    for (auto& e : entries) {
      ordered_json row{{"Q", int_json(e.Q)},
                       {"inner_min", ulcert::rat_str(e.inner_min)},
                       {"value", ulcert::rat_str(e.value)},
                       {"value_approx", ulcert::rat_approx(e.value)}};
      csv += e.Q.get_str() + "," + ulcert::rat_str(e.inner_min) + "," +
             ulcert::rat_str(e.value) + "," +
             ordered_json(ulcert::rat_approx(e.value)).dump();
      if (psi) {
        Rat wv = e.value / psi->eval(e.Q);
        row["weighted_value"] = ulcert::rat_str(wv);
        csv += "," + ulcert::rat_str(wv);
      }
      csv += "\n";
      rows.push_back(std::move(row));
    }
    ordered_json doc;
    doc[ev_o.lower ? "intervals" : "points"] = coords;
    doc["lower"] = ev_o.lower;
    doc["psi"] = psi ? ordered_json(psi->describe()) : ordered_json(nullptr);
    doc["entries"] = rows;
    doc["approximate"] = {"entries[].value_approx"};
    ctx.result.doc = std::move(doc);
    ctx.result.params = ordered_json{{"x", ev_o.xs},
                                     {"Q", ev_o.Qs},
                                     {"psi", psi ? psi->describe() : std::string()},
                                     {"lower", ev_o.lower}};
    ctx.result.csv = std::move(csv);
    ctx.produced = true;
  });

  // ---- optimize ----------------------------------------------------------
  struct {
    long m = 0;
  } op_o;
  auto* op = app.add_subcommand("optimize", "two-branch lower-bound constant for a quotient cap");
  op->fallthrough();
  op->add_option("--m", op_o.m, "quotient cap")->required();
  op->callback([&] {
    begin(ctx, "optimize");
    auto r = ulcert::solve(op_o.m);
    ordered_json doc;
    doc["m"] = r.m;
    doc["d_star"] = mpf_str(r.d_star);
    doc["beta_star"] = mpf_str(r.beta_star);
    doc["bound"] = mpf_str(r.bound);
    doc["branch_gap"] = mpf_str(r.branch_gap);
    doc["approximate"] = {"d_star", "beta_star", "bound", "branch_gap"};
    ctx.result.doc = std::move(doc);
    ctx.result.params = ordered_json{{"m", op_o.m}};
    ctx.produced = true;
  });

  try {
    app.parse(argc, argv);
    emit(ctx);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
