#pragma once

#include <functional>
#include <iosfwd>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/core/modes.hpp"
#include "pbg/core/types.hpp"

namespace pbg {

// Stacked correction vector, one (operator, conjugate) pair per mode:
//   (sF, sF+, iF, iF+, pF, pF+, sB, sB+, iB, iB+, pB, pB+)
// Components 0..5 are the forward block, 6..11 the backward block.
constexpr int component(ModeId m, bool dagger = false) noexcept {
  return 2 * index(m) + (dagger ? 1 : 0);
}

/// Generator G(z) of d/dz x = G(z) x for the linearised corrections, with the
/// mean amplitudes `a` at the same z.
Matrix12c coefficient_matrix(const WaveguideConfig& config, const FieldVector& a, double z);
Matrix12c coefficient_matrix(const WaveguideConfig& config, const ClassicalFieldProfile& profile,
                             double z);

/// Propagation map x(z_end) = matrix * x(z_begin). `extended` is the same map
/// as integrated; `matrix` is its double rounding.
struct TransferMatrix {
  Matrix12c matrix = Matrix12c::Identity();
  Matrix12e extended = Matrix12e::Identity();
  double z_begin = 0;
  double z_end = 0;
  int steps = 0;
};

using Generator = std::function<Matrix12c(double)>;

/// Fixed-step RK4 on dM/dz = G(z) M, M(z_begin) = I, carried in extended
/// precision. G must have the conjugate-row structure of coefficient_matrix();
/// only the operator rows are computed and the conjugate rows mirrored.
/// Throws IntegrationError when an entry stops being finite.
TransferMatrix integrate_transfer(const Generator& generator, double z_begin, double z_end,
                                  int steps);

/// Whole waveguide, coefficients taken from the profile. steps >= 100.
TransferMatrix integrate_transfer(const WaveguideConfig& config,
                                  const ClassicalFieldProfile& profile, int steps);

/// max(min_steps, ceil(steps_per_mm * L)).
int default_steps(double length, double steps_per_mm = 1000.0, int min_steps = 100);

/// Annihilation-operator form of a transfer matrix:
///   (A(L); B+(L)) = u (A(0); B+(0)) + v (A+(0); B(0))
/// where A = (sF, iF, pF) and B+ = (sB, iB, pB). Index 1 = forward, 2 = backward.
struct BogoliubovBlocks {
  Matrix3e u11, u12, u21, u22;
  Matrix3e v11, v12, v21, v22;

  Matrix6e u() const;
  Matrix6e v() const;
};

BogoliubovBlocks bogoliubov_blocks(const Matrix12e& transfer);
BogoliubovBlocks bogoliubov_blocks(const Matrix12c& transfer);

/// Physical input-output relation. Inputs are (F(0), B(L)), outputs (F(L), B(0)),
/// both in the interleaved component order above. Output mode j therefore means
/// the forward fields at z = L and the backward fields at z = 0.
struct InputOutputMap {
  Matrix12c matrix;
  BogoliubovBlocks transfer_blocks;  // u, v of the underlying transfer matrix
  double backward_condition = 1;     // 2-norm condition number of U_BB

  /// out_j = sum_k U_jk in_k + V_jk in_k^+
  Matrix6c U() const;
  Matrix6c V() const;

  static InputOutputMap identity();
};

/// Block elimination of the backward fields, done in extended precision:
///   [[U_FF - U_FB U_BB^-1 U_BF, U_FB U_BB^-1], [-U_BB^-1 U_BF, U_BB^-1]].
/// Throws IllConditioned when cond(U_BB) exceeds `max_condition`.
InputOutputMap rearrange_input_output(const TransferMatrix& transfer,
                                      double max_condition = 1e12);

/// Largest deviation of the six commutator identities obeyed by (u, v):
///   u eta u+ - v eta v+ = eta,   u eta v^T - v eta u^T = 0,
/// eta = diag(1, 1, 1, -1, -1, -1), over all index pairs. Evaluated in extended
/// precision; the entries of u, v grow like exp(|K| L) inside the band gap.
double commutation_residual(const BogoliubovBlocks& blocks);
double commutation_residual(const InputOutputMap& map);

/// Bosonic commutators of the physical outputs: U U+ - V V+ = 1, U V^T - V U^T = 0.
double output_commutation_residual(const InputOutputMap& map);

/// 24 x 24 real form [[Re M, -Im M], [Im M, Re M]], rows/columns 0..11 real part
/// of the interleaved components, 12..23 imaginary part.
void write_matrix_csv(std::ostream& out, const Matrix12c& matrix);

}  // namespace pbg
