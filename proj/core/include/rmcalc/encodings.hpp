#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "rmcalc/bipoly.hpp"

namespace rmcalc {

// Which transform the polynomial encodes. Labels are fixed per kind:
// mz (m,z), gz (g,z), rg (r,g), sy (s,y), muz (mu,z), etaz (eta,z).
enum class Kind { mz, gz, rg, sy, muz, etaz };

inline constexpr Kind kAllKinds[] = {Kind::mz, Kind::gz, Kind::rg, Kind::sy, Kind::muz, Kind::etaz};

std::string kind_name(Kind k);
Kind parse_kind(std::string_view name);
std::pair<std::string, std::string> kind_labels(Kind k);

struct EncodedDistribution {
  Kind kind = Kind::mz;
  BiPoly poly;
};

// Builds an encoding from a polynomial whose labels already match the kind.
EncodedDistribution make_encoded(Kind kind, const BiPoly& poly);

BiPoly from_mz(const BiPoly& lmz, Kind target);
BiPoly to_mz(const BiPoly& l, Kind source);
BiPoly convert(const BiPoly& l, Kind source, Kind target);
EncodedDistribution convert(const EncodedDistribution& d, Kind target);

}  // namespace rmcalc
