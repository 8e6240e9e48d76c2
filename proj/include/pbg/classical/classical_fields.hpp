#pragma once

#include <array>
#include <functional>
#include <memory>
#include <iosfwd>
#include <vector>

#include "pbg/core/modes.hpp"
#include "pbg/core/state.hpp"
#include "pbg/core/types.hpp"

namespace pbg {

/// Incident forward amplitudes at z = 0 (10^6 V/m units). The backward fields
/// leave through z = 0 and have nothing incident at z = L.
struct ClassicalBoundary {
  cplx signal_forward{};
  cplx idler_forward{};
  cplx pump_forward{};
};

/// Six mean amplitudes indexed by ModeId.
using FieldVector = std::array<cplx, 6>;

/// Closed-form grating solution of one signal or idler pair:
///   A_F(z) = exp(-i delta z/2) [a0 cos(D z) + C sin(D z)]
///          = exp(-i delta z/2) [E_F exp(iDz) + F_F exp(-iDz)]
///   A_B(z) = exp(+i delta z/2) [E_B exp(iDz) + F_B exp(-iDz)]
struct LinearModeConstants {
  cplx half_gap{};              // D, principal root of delta^2/4 - |K|^2
  cplx integration_constant{};  // C, fixed by A_B(L) = 0
  cplx forward_e{}, forward_f{};
  cplx backward_e{}, backward_f{};
  bool decoupled = false;       // |K| L below 1e-12: A_F constant, A_B zero
};

struct ClassicalSolutionConstants {
  LinearModeConstants signal;
  LinearModeConstants idler;
  double combined_forward = 0;   // delta_F + (delta_s + delta_i)/2
  double combined_backward = 0;  // -delta_B - (delta_s + delta_i)/2
  cplx pump_backward_at_zero{};  // fixed by A_pB(L) = 0
  bool pump_solved = false;
};

/// Grating-only solution for signal and idler (nonlinear terms neglected).
/// Throws SingularBoundary at a band edge (D L ~ 0), where C is undefined.
ClassicalSolutionConstants solve_signal_idler_linear(const WaveguideConfig& config,
                                                     const ClassicalBoundary& boundary);

/// First-order pump depletion/generation on top of the grating solution.
ClassicalSolutionConstants solve_pump_perturbative(const WaveguideConfig& config,
                                                   const ClassicalBoundary& boundary,
                                                   ClassicalSolutionConstants constants);

/// Right-hand side of the full nonlinear coupled-mode system.
FieldVector classical_rhs(const WaveguideConfig& config, double z, const FieldVector& a);

/// Amplitudes of the closed-form solution at z.
FieldVector evaluate_analytic(const WaveguideConfig& config, const ClassicalBoundary& boundary,
                              const ClassicalSolutionConstants& constants, double z);

/// Mean-field profile over [0, L]. Immutable and cheap to copy.
class ClassicalFieldProfile {
 public:
  enum class Source { Analytic, Shooting };
  using Evaluator = std::function<FieldVector(double)>;

  ClassicalFieldProfile(Source source, double length, Evaluator evaluator,
                        std::vector<double> grid);

  FieldVector operator()(double z) const { return evaluator_(z); }
  cplx at(ModeId m, double z) const { return evaluator_(z)[index(m)]; }

  Source source() const noexcept { return source_; }
  double length() const noexcept { return length_; }
  const std::vector<double>& grid() const noexcept { return *grid_; }

  /// max |A_aB(L)| over the three backward fields.
  double boundary_residual() const;

 private:
  Source source_;
  double length_;
  Evaluator evaluator_;
  std::shared_ptr<const std::vector<double>> grid_;
};

/// Closed-form profile; the diagnostic grid has `grid_steps` intervals.
ClassicalFieldProfile analytic_profile(const WaveguideConfig& config,
                                       const ClassicalBoundary& boundary, int grid_steps);

struct ShootingOptions {
  int max_iterations = 50;
  double tolerance = 1e-9;  // on the terminal residual, times max(1, |A_pF(0)|)
  bool analytic_initial_guess = true;
};

/// Full nonlinear two-point problem by Newton shooting on the three backward
/// amplitudes at z = 0, integrated with fixed-step RK4 on `grid_steps` intervals.
/// Between grid nodes the profile is a cubic Hermite interpolant.
ClassicalFieldProfile solve_classical_bvp_shooting(const WaveguideConfig& config,
                                                   const ClassicalBoundary& boundary,
                                                   int grid_steps,
                                                   const ShootingOptions& options = {});

/// Photon flux |sF|^2 + |iF|^2 + 2|pF|^2 - |sB|^2 - |iB|^2 - 2|pB|^2.
double photon_flux(const FieldVector& a);

/// max over the profile grid of |N(z) - N(0)| / max(1, |N(0)|).
double conservation_residual(const ClassicalFieldProfile& profile);

/// Columns: z, then Re/Im of sF iF pF sB iB pB, one row per grid node.
void write_profile_csv(std::ostream& out, const ClassicalFieldProfile& profile);

}  // namespace pbg
