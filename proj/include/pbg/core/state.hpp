#pragma once

#include "pbg/core/types.hpp"

namespace pbg {

/// Waveguide geometry and coupling constants, in scaled units: lengths in mm,
/// rates in mm^-1, nonlinear couplings in mm^-1 per 10^6 V/m of mean field.
struct WaveguideConfig {
  double length = 1.0;
  cplx linear_signal{};        // grating coupling K_s
  cplx linear_idler{};         // grating coupling K_i
  cplx nonlinear_forward{};    // K_F, forward-propagating triplet
  cplx nonlinear_backward{};   // K_B, backward-propagating triplet
  double mismatch_signal = 0;  // delta_s
  double mismatch_idler = 0;   // delta_i
  double mismatch_forward = 0; // delta_F
  double mismatch_backward = 0;// delta_B

  /// Throws InvalidInput unless length > 0 and everything is finite.
  void validate() const;

  /// Swaps every signal-labelled parameter with its idler counterpart.
  WaveguideConfig exchanged_signal_idler() const;
};

/// Gaussian state of one incident fluctuation mode (coherent + squeezed + chaotic).
struct InputModeState {
  cplx xi{};         // coherent amplitude of the correction, 10 V/m units
  double r = 0;      // squeeze parameter
  double theta = 0;  // squeeze phase, rad
  double n_ch = 0;   // mean chaotic photon number

  void validate() const;
};

/// Second moments of one mode: B = <dA^+ dA> (or antinormal <dA dA^+>), C = <dA^2>.
struct MomentPair {
  double B = 0;
  cplx C{};
};

/// B_A = cosh^2 r + n_ch, C_A = exp(i theta) sinh(2r) / 2.
MomentPair antinormal_from_state(const InputModeState& state);

/// Shifts B by the commutator. Throws InvalidInput when B_A < 1.
MomentPair normal_from_antinormal(const MomentPair& antinormal);

}  // namespace pbg
