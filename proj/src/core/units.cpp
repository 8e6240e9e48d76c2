#include "pbg/core/units.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "pbg/core/error.hpp"

namespace pbg {

namespace {

enum class Dimension { Length, Field, Any };

Dimension dimension_of(Unit u) {
  switch (u) {
    case Unit::Millimetre:
    case Unit::Metre:
      return Dimension::Length;
    case Unit::MeanField:
    case Unit::CorrectionField:
    case Unit::VoltPerMetre:
      return Dimension::Field;
    case Unit::SI:
      return Dimension::Any;
  }
  return Dimension::Any;
}

// Size of one unit in SI, as a power of ten.
int si_exponent(Unit u) {
  switch (u) {
    case Unit::Millimetre: return -3;
    case Unit::MeanField: return 6;
    case Unit::CorrectionField: return 1;
    case Unit::Metre:
    case Unit::VoltPerMetre:
    case Unit::SI:
      return 0;
  }
  return 0;
}

}  // namespace

Unit parse_unit(std::string_view tag) {
  if (tag == "mm") return Unit::Millimetre;
  if (tag == "m") return Unit::Metre;
  if (tag == "1e6V/m" || tag == "MV/m") return Unit::MeanField;
  if (tag == "10V/m") return Unit::CorrectionField;
  if (tag == "V/m") return Unit::VoltPerMetre;
  if (tag == "SI") return Unit::SI;
  throw InvalidInput("unknown unit tag '" + std::string(tag) + "'");
}

double rescale_units(double value, Unit from, Unit to) {
  const Dimension a = dimension_of(from);
  const Dimension b = dimension_of(to);
  if (a != Dimension::Any && b != Dimension::Any && a != b)
    throw InvalidInput("cannot rescale between a length and a field unit");
  if (from == to) return value;
  // Powers of ten up to 1e22 are exact doubles, so this is a single rounding.
  const int shift = si_exponent(from) - si_exponent(to);
  const double factor = std::pow(10.0, std::abs(shift));
  return shift >= 0 ? value * factor : value / factor;
}

double rescale_units(double value, std::string_view from, std::string_view to) {
  return rescale_units(value, parse_unit(from), parse_unit(to));
}

}  // namespace pbg
