#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace pbg {

/// The six guided modes: signal/idler/pump, each forward and backward.
/// The underlying value is the mode's position in every 6-vector of the library.
enum class ModeId : int { sF = 0, iF = 1, pF = 2, sB = 3, iB = 4, pB = 5 };

enum class Direction { Forward, Backward };

inline constexpr std::array<ModeId, 6> kAllModes = {ModeId::sF, ModeId::iF, ModeId::pF,
                                                    ModeId::sB, ModeId::iB, ModeId::pB};

constexpr int index(ModeId m) noexcept { return static_cast<int>(m); }

constexpr Direction direction(ModeId m) noexcept {
  return index(m) < 3 ? Direction::Forward : Direction::Backward;
}

/// Same field (signal, idler or pump) travelling the other way.
constexpr ModeId counterpart(ModeId m) noexcept {
  return static_cast<ModeId>((index(m) + 3) % 6);
}

std::string_view to_string(ModeId m);

/// Accepts "sF", "iB", ...; throws InvalidInput otherwise.
ModeId parse_mode(std::string_view text);

/// A single mode or a compound (two-mode) field.
struct ModeSet {
  ModeId first = ModeId::sF;
  std::optional<ModeId> second;

  static ModeSet single(ModeId m) { return {m, std::nullopt}; }
  static ModeSet pair(ModeId a, ModeId b) { return {a, b}; }

  bool is_pair() const noexcept { return second.has_value(); }
  auto operator<=>(const ModeSet&) const = default;
};

/// "sF" or "sF,iF".
std::string to_string(const ModeSet& s);
ModeSet parse_mode_set(std::string_view text);

}  // namespace pbg
