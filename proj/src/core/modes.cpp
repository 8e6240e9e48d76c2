#include "pbg/core/modes.hpp"

#include "pbg/core/error.hpp"

namespace pbg {

namespace {
constexpr std::array<std::string_view, 6> kNames = {"sF", "iF", "pF", "sB", "iB", "pB"};
}

std::string_view to_string(ModeId m) { return kNames[index(m)]; }

ModeId parse_mode(std::string_view text) {
  for (ModeId m : kAllModes)
    if (kNames[index(m)] == text) return m;
  throw InvalidInput("unknown mode '" + std::string(text) + "' (expected one of sF iF pF sB iB pB)");
}

std::string to_string(const ModeSet& s) {
  std::string out(to_string(s.first));
  if (s.second) {
    out += ',';
    out += to_string(*s.second);
  }
  return out;
}

ModeSet parse_mode_set(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) return ModeSet::single(parse_mode(text));
  const ModeId a = parse_mode(text.substr(0, comma));
  const ModeId b = parse_mode(text.substr(comma + 1));
  if (a == b) throw InvalidInput("compound mode needs two distinct modes: " + std::string(text));
  return ModeSet::pair(a, b);
}

}  // namespace pbg
