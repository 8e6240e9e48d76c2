#pragma once

#include <functional>
#include <map>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/core/modes.hpp"
#include "pbg/core/types.hpp"

namespace pbg {

/// Interaction integrals of the second-order perturbative solution.
struct WeakIntegrals {
  cplx pump_forward{};          // I_pF    = int K_F(z) A_pF(z)
  cplx pump_backward{};         // I_pB    = int K_B(z) A_pB(z)
  cplx idler_pump_forward{};    // I_i,pF  = int dz int^z dz' K_i*(z) K_F(z') A_pF(z')
  cplx pump_backward_signal{};  // I_pB,s  = int dz int^z dz' K_B(z) A_pB(z) K_s(z')
  cplx signal_pump_forward{};   // I_sF,pF = int dz int^z dz' K_F*(z) A_sF(z) K_F(z') A_pF(z')
  cplx pump_signal_backward{};  // I_pB,sB = int dz int^z dz' K_B(z) A_pB(z) K_B*(z') A_sB(z')
  cplx signal{};                // I_s     = int K_s(z)
  cplx idler{};                 // I_i     = int K_i*(z)
};

struct QuadratureOptions {
  int nodes_per_mm = 64;
  double relative_tolerance = 1e-10;         // single integrals
  double nested_relative_tolerance = 1e-9;   // double integrals
  int max_doublings = 12;
};

/// Composite Gauss-Legendre on [a, b] with `panels` equal panels of 16 nodes.
cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b, int panels);

/// int_a^b f, panels doubled until the relative change is below tolerance.
/// Throws QuadratureError naming the worst panel when it does not settle.
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadratureOptions& options = {});

/// int_0^L dz outer(z) int_0^z dz' inner(z'), with the inner antiderivative cached
/// on the outer nodes. Same refinement rule as integrate().
cplx integrate_nested(const std::function<cplx(double)>& outer,
                      const std::function<cplx(double)>& inner, double length,
                      const QuadratureOptions& options = {});

WeakIntegrals weak_integrals(const WaveguideConfig& config, const ClassicalFieldProfile& profile,
                             const QuadratureOptions& options = {});

/// Principal squeeze variances of every single mode and pair given in closed form.
std::map<ModeSet, double> weak_squeeze(const WeakIntegrals& integrals);

/// Normally ordered intensity variances for coherent inputs xi (indexed by ModeId).
std::map<ModeSet, double> weak_intensity_variance(const WeakIntegrals& integrals,
                                                  const Vector6c& xi);

}  // namespace pbg
