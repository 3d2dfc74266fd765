#include "ulcert/ratcore.hpp"

#include <stdexcept>

#include "internal.hpp"

namespace ulcert {

using internal::is_digits;
using internal::rmax;
using internal::rmin;
using internal::split;
using internal::to_int;

Rat parse_rat(const std::string& s) {
  auto fail = [&]() -> Rat {
    throw std::invalid_argument("not a rational literal: '" + s + "'");
  };
  if (s.empty()) return fail();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
    if (!internal::is_int_literal(ns) || !internal::is_int_literal(ds)) return fail();
    Int n = to_int(ns), d = to_int(ds);
    if (d == 0) return fail();
    Rat r(n, d);
    r.canonicalize();
    return r;
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string body = s;
    bool neg = false;
    if (body[0] == '+' || body[0] == '-') {
      neg = body[0] == '-';
      body = body.substr(1);
      dot -= 1;
    }
    std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (ip.empty() && fp.empty()) return fail();
    if ((!ip.empty() && !is_digits(ip)) || (!fp.empty() && !is_digits(fp))) return fail();
    Int scale = 1;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Int num = (ip.empty() ? Int(0) : Int(ip)) * scale + (fp.empty() ? Int(0) : Int(fp));
    Rat r(num, scale);
    r.canonicalize();
    return neg ? Rat(-r) : r;
  }
  if (!internal::is_int_literal(s)) return fail();
  return Rat(to_int(s));
}

std::string rat_str(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

double rat_approx(const Rat& x) { return x.get_d(); }

Int rat_floor(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
  return q;
}

Int rat_ceil(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), mpq_numref(x.get_mpq_t()), mpq_denref(x.get_mpq_t()));
  return q;
}

Rat frac_part(const Rat& x) { return x - Rat(rat_floor(x)); }

Rat nearest_dist(const Rat& x) {
  Rat f = frac_part(x);
  Rat g = 1 - f;
  return rmin(f, g);
}

RatInterval::RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (hi < lo) throw std::invalid_argument("interval endpoints out of order");
}

Rat RatInterval::mid() const { return (lo + hi) / 2; }

Rat nearest_dist_lower(const RatInterval& X, const Int& n) {
  Int m = abs(n);
  if (m == 0) return Rat(0);
  Rat A = Rat(m) * X.lo, B = Rat(m) * X.hi;
  if (rat_ceil(A) <= rat_floor(B)) return Rat(0);  // an integer falls inside
  Rat da = frac_part(A);
  Rat db = 1 - frac_part(B);
  return rmin(da, db);
}

Rat nearest_dist_upper(const RatInterval& X, const Int& n) {
  Int m = abs(n);
  if (m == 0) return Rat(0);
  Rat A = Rat(m) * X.lo, B = Rat(m) * X.hi;
  Rat half(1, 2);
  if (rat_ceil(A - half) <= rat_floor(B - half)) return half;  // a half-integer inside
  Rat da = nearest_dist(A), db = nearest_dist(B);
  return rmax(da, db);
}

namespace {
void check_quotients(const std::vector<Int>& qs) {
  for (const Int& a : qs)
    if (a < 1) throw std::invalid_argument("continued fraction quotients must be >= 1");
}
}  // namespace

CFWord cf_expand(const Rat& x) {
  CFWord w;
  w.integer_part = rat_floor(x);
  Rat y = x - Rat(w.integer_part);
  while (y != 0) {
    Rat z = Rat(1) / y;
    Int a = rat_floor(z);
    w.quotients.push_back(a);
    y = z - Rat(a);
  }
  // the Euclidean expansion always ends with a quotient >= 2
  w.canonical = true;
  return w;
}

Rat cf_value(const CFWord& w) {
  check_quotients(w.quotients);
  if (w.quotients.empty()) return Rat(w.integer_part);
  Rat t(w.quotients.back());
  for (std::size_t i = w.quotients.size() - 1; i-- > 0;) t = Rat(w.quotients[i]) + Rat(1) / t;
  return Rat(w.integer_part) + Rat(1) / t;
}

std::vector<std::pair<Int, Int>> convergents(const CFWord& w) {
  check_quotients(w.quotients);
  std::vector<std::pair<Int, Int>> out;
  Int pp = 1, qp = 0, pc = w.integer_part, qc = 1;
  out.emplace_back(pc, qc);
  for (const Int& a : w.quotients) {
    Int pn = a * pc + pp, qn = a * qc + qp;
    pp = pc;
    qp = qc;
    pc = pn;
    qc = qn;
    out.emplace_back(pc, qc);
  }
  return out;
}

CFWord non_canonical_twin(const CFWord& w) {
  check_quotients(w.quotients);
  CFWord t = w;
  if (t.quotients.empty()) {
    t.integer_part -= 1;
    t.quotients.push_back(1);
  } else if (t.quotients.back() == 1) {
    t.quotients.pop_back();
    if (t.quotients.empty())
      t.integer_part += 1;
    else
      t.quotients.back() += 1;
  } else {
    t.quotients.back() -= 1;
    t.quotients.push_back(1);
  }
  t.canonical = t.quotients.empty() || t.quotients.back() >= 2;
  return t;
}

Int CFSpec::quotient(std::size_t i) const {
  if (i == 0) throw std::out_of_range("quotients are one-based");
  if (i <= prefix.size()) return prefix[i - 1];
  if (period.empty()) throw std::out_of_range("expansion ends before the requested quotient");
  return period[(i - prefix.size() - 1) % period.size()];
}

Int CFSpec::max_quotient() const {
  Int m = 1;
  for (const Int& a : prefix)
    if (a > m) m = a;
  for (const Int& a : period)
    if (a > m) m = a;
  return m;
}

RatInterval CFSpec::enclosure(const Rat& width_below) const {
  if (width_below <= 0) throw std::invalid_argument("enclosure width must be positive");
  check_quotients(prefix);
  check_quotients(period);
  if (is_rational()) {
    Rat v = value_rational();
    return RatInterval(v, v);
  }
  Int pp = 1, qp = 0, pc = integer_part, qc = 1;
  std::size_t i = 1;
  while (true) {
    Int a = quotient(i++);
    Int pn = a * pc + pp, qn = a * qc + qp;
    pp = pc;
    qp = qc;
    pc = pn;
    qc = qn;
    // consecutive convergents straddle the value; the gap is 1/(qc*qp)
    if (qp > 0 && Rat(qc * qp) * width_below > 1) {
      Rat u(pp, qp), v(pc, qc);
      u.canonicalize();
      v.canonicalize();
      return RatInterval(rmin(u, v), rmax(u, v));
    }
  }
}

Rat CFSpec::value_rational() const {
  if (!is_rational()) throw std::domain_error("spec has a period, value is irrational");
  CFWord w;
  w.integer_part = integer_part;
  w.quotients = prefix;
  return cf_value(w);
}

CFSpec CFSpec::golden() { return CFSpec{0, {}, {Int(1)}}; }

CFSpec CFSpec::sqrt2() { return CFSpec{1, {}, {Int(2)}}; }

namespace {
std::vector<Int> parse_quotient_list(const std::string& s) {
  std::vector<Int> out;
  if (s.empty()) return out;
  for (const std::string& part : split(s, ',')) {
    if (!is_digits(part)) throw std::invalid_argument("bad quotient '" + part + "'");
    Int a(part);
    if (a < 1) throw std::invalid_argument("quotients must be >= 1");
    out.push_back(a);
  }
  return out;
}
}  // namespace

CFSpec CFSpec::parse(const std::string& s) {
  if (s == "golden") return golden();
  if (s == "sqrt2") return sqrt2();
  auto parts = split(s, ':');
  if (parts.size() != 4 || parts[0] != "cf")
    throw std::invalid_argument("expected golden, sqrt2, or cf:INT:pre:per, got '" + s + "'");
  CFSpec spec;
  spec.integer_part = to_int(parts[1]);
  spec.prefix = parse_quotient_list(parts[2]);
  spec.period = parse_quotient_list(parts[3]);
  return spec;
}

std::string CFSpec::describe() const {
  auto list = [](const std::vector<Int>& v) {
    std::vector<std::string> parts;
    parts.reserve(v.size());
    for (const Int& a : v) parts.push_back(a.get_str());
    return internal::join(parts, ",");
  };
  return "cf:" + integer_part.get_str() + ":" + list(prefix) + ":" + list(period);
}

}  // namespace ulcert
