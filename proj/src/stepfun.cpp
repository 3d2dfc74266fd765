#include "ulcert/stepfun.hpp"

#include <algorithm>
#include <stdexcept>

#include "internal.hpp"

namespace ulcert {

using internal::split;
using internal::to_int;

StepFunctionSpec StepFunctionSpec::constant(const Rat& v) {
  if (v <= 0) throw std::invalid_argument("constant step function must be positive");
  StepFunctionSpec s;
  s.kind = Kind::constant;
  s.c = v;
  return s;
}

StepFunctionSpec StepFunctionSpec::reciprocal_log() {
  StepFunctionSpec s;
  s.kind = Kind::reciprocal_log;
  return s;
}

StepFunctionSpec StepFunctionSpec::power(long a, long b) {
  if (b < 1) throw std::invalid_argument("power denominator must be >= 1");
  if (b > 1 && a < 1)
    throw std::invalid_argument("fractional powers need a positive exponent");
  StepFunctionSpec s;
  s.kind = Kind::power;
  s.num = a;
  s.den = b;
  return s;
}

StepFunctionSpec StepFunctionSpec::table(std::vector<Rat> v) {
  if (v.empty()) throw std::invalid_argument("table step function needs at least one value");
  for (const Rat& x : v)
    if (x <= 0) throw std::invalid_argument("table step function values must be positive");
  StepFunctionSpec s;
  s.kind = Kind::table;
  s.values = std::move(v);
  return s;
}

Rat StepFunctionSpec::eval(const Int& t) const {
  if (t < 1) throw std::domain_error("step functions are defined at t >= 1");
  switch (kind) {
    case Kind::constant:
      return c;
    case Kind::reciprocal_log: {
      Int u = t + 1;
      std::size_t bits = mpz_sizeinbase(u.get_mpz_t(), 2);  // floor(log2(u)) + 1
      return Rat(1, static_cast<unsigned long>(bits - 1));
    }
    case Kind::power: {
      if (den == 1) {
        Int p;
        mpz_pow_ui(p.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(num < 0 ? -num : num));
        if (num >= 0) return Rat(p);
        Rat r(1, p);
        r.canonicalize();
        return r;
      }
      Int p;
      mpz_pow_ui(p.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(num));
      Int root;
      mpz_root(root.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(den));
      return Rat(root);
    }
    case Kind::table: {
      Int idx = (t - 1) % Int(static_cast<unsigned long>(values.size()));
      return values[mpz_get_ui(idx.get_mpz_t())];
    }
  }
  throw std::logic_error("unreachable");
}

bool StepFunctionSpec::nonincreasing() const {
  switch (kind) {
    case Kind::constant:
    case Kind::reciprocal_log:
      return true;
    case Kind::power:
      return den == 1 && num <= 0;
    case Kind::table:
      return std::all_of(values.begin(), values.end(),
                         [&](const Rat& v) { return v == values.front(); });
  }
  return false;
}

bool StepFunctionSpec::nondecreasing_unbounded() const {
  return kind == Kind::power && num >= 1;
}

Int StepFunctionSpec::inverse_at_least(const Rat& x) const {
  if (!nondecreasing_unbounded())
    throw std::domain_error("inverse requires a nondecreasing unbounded function");
  if (eval(1) >= x) return 1;
  Int lo = 1, hi = 2;
  while (eval(hi) < x) {
    lo = hi;
    hi *= 2;
  }
  // eval(lo) < x <= eval(hi)
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (eval(mid) < x)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

StepFunctionSpec StepFunctionSpec::parse(const std::string& s) {
  if (s == "recip_log") return reciprocal_log();
  auto parts = split(s, ':');
  if (parts.size() == 2 && parts[0] == "const") return constant(parse_rat(parts[1]));
  if (parts.size() == 2 && parts[0] == "pow") {
    auto frac = split(parts[1], '/');
    if (frac.size() == 1) return power(std::stol(frac[0]));
    if (frac.size() == 2) return power(std::stol(frac[0]), std::stol(frac[1]));
  }
  if (parts.size() == 2 && parts[0] == "table") {
    std::vector<Rat> vals;
    for (const std::string& v : split(parts[1], ',')) vals.push_back(parse_rat(v));
    return table(std::move(vals));
  }
  throw std::invalid_argument("bad step function '" + s + "'");
}

std::string StepFunctionSpec::describe() const {
  switch (kind) {
    case Kind::constant:
      return "const:" + rat_str(c);
    case Kind::reciprocal_log:
      return "recip_log";
    case Kind::power:
      return den == 1 ? "pow:" + std::to_string(num)
                      : "pow:" + std::to_string(num) + "/" + std::to_string(den);
    case Kind::table: {
      std::vector<std::string> parts;
      parts.reserve(values.size());
      for (const Rat& v : values) parts.push_back(rat_str(v));
      return "table:" + internal::join(parts, ",");
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace ulcert
