#include "ulcert/json_io.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace ulcert {

ordered_json rat_json(const Rat& r) { return rat_str(r); }

ordered_json interval_json(const RatInterval& iv) {
  return ordered_json{{"lo", rat_str(iv.lo)}, {"hi", rat_str(iv.hi)}};
}

ordered_json cfword_json(const CFWord& w) {
  ordered_json q = ordered_json::array();
  for (const Int& a : w.quotients) q.push_back(a.get_str());
  return ordered_json{{"integer_part", w.integer_part.get_str()},
                      {"quotients", q},
                      {"canonical", w.canonical}};
}

Rat rat_from_json(const ordered_json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a rational string");
  return parse_rat(j.get<std::string>());
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("digest failure");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * std::size_t(len));
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace ulcert
