#include "pbg/core/state.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pbg/core/error.hpp"

namespace pbg {

namespace {

bool finite(cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

void WaveguideConfig::validate() const {
  if (!(length > 0) || !std::isfinite(length))
    throw InvalidInput("waveguide length must be positive and finite, got " + std::to_string(length));
  if (!finite(linear_signal) || !finite(linear_idler) || !finite(nonlinear_forward) ||
      !finite(nonlinear_backward))
    throw InvalidInput("coupling constants must be finite");
  if (!std::isfinite(mismatch_signal) || !std::isfinite(mismatch_idler) ||
      !std::isfinite(mismatch_forward) || !std::isfinite(mismatch_backward))
    throw InvalidInput("phase mismatches must be finite");
}

WaveguideConfig WaveguideConfig::exchanged_signal_idler() const {
  WaveguideConfig out = *this;
  std::swap(out.linear_signal, out.linear_idler);
  std::swap(out.mismatch_signal, out.mismatch_idler);
  return out;
}

void InputModeState::validate() const {
  if (!finite(xi) || !std::isfinite(r) || !std::isfinite(theta) || !std::isfinite(n_ch))
    throw InvalidInput("input mode state must be finite");
  if (r < 0) throw InvalidInput("squeeze parameter must be >= 0");
  if (n_ch < 0) throw InvalidInput("chaotic photon number must be >= 0");
}

MomentPair antinormal_from_state(const InputModeState& state) {
  const double c = std::cosh(state.r);
  return {c * c + state.n_ch, 0.5 * std::polar(std::sinh(2.0 * state.r), state.theta)};
}

MomentPair normal_from_antinormal(const MomentPair& antinormal) {
  if (!(antinormal.B >= 1.0))
    throw InvalidInput("antinormal variance B_A = " + std::to_string(antinormal.B) + " < 1 is unphysical");
  return {antinormal.B - 1.0, antinormal.C};
}

}  // namespace pbg
