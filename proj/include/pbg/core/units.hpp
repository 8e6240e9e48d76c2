#pragma once

#include <string_view>

namespace pbg {

/// Units accepted at I/O boundaries. Internally everything is kept in the
/// scaled units (mm, 10^6 V/m for mean fields, 10 V/m for corrections).
enum class Unit {
  Millimetre,
  Metre,
  MeanField,        // 10^6 V/m
  CorrectionField,  // 10 V/m
  VoltPerMetre,
  SI,               // metre or V/m, whichever matches the other operand
};

/// Tags: "mm", "m", "1e6V/m", "10V/m", "V/m", "SI". Throws InvalidInput on anything else.
Unit parse_unit(std::string_view tag);

/// Exact linear rescaling. Mixing a length with a field unit throws InvalidInput.
double rescale_units(double value, Unit from, Unit to);
double rescale_units(double value, std::string_view from, std::string_view to);

}  // namespace pbg
