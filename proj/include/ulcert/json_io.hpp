#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ulcert/ratcore.hpp"

namespace ulcert {

using ordered_json = nlohmann::ordered_json;

// Rationals serialize as "num/den" with the denominator always printed, so
// round-trips are insensitive to integer-vs-rational typing.
ordered_json rat_json(const Rat& r);
ordered_json interval_json(const RatInterval& iv);
ordered_json cfword_json(const CFWord& w);

Rat rat_from_json(const ordered_json& j);

// Hex SHA-256 of a byte string; used for output digests in run manifests.
std::string sha256_hex(const std::string& data);

}  // namespace ulcert
