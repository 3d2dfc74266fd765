#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"

namespace ulcert::internal {

inline std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == delim) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline bool is_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

inline bool is_int_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  return is_digits(s.substr(i));
}

// strict integer parse; GMP's own string constructor tolerates whitespace
inline Int to_int(const std::string& s) {
  if (!is_int_literal(s)) throw std::invalid_argument("not an integer literal: '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s);
}

inline std::uint64_t to_u64(const Int& x) {
  if (x < 0 || !x.fits_ulong_p()) throw std::overflow_error("value does not fit in 64 bits");
  return mpz_get_ui(x.get_mpz_t());
}

inline const Rat& rmin(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rmax(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace ulcert::internal
