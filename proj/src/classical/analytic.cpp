#include <cmath>
#include <sstream>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/core/error.hpp"

namespace pbg {

namespace {

// (e^x - 1) / x, accurate through x -> 0.
cplx phi1(cplx x) {
  if (std::abs(x) < 1e-3)
    return 1.0 + x * (1.0 / 2 + x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x / 720.0))));
  return (std::exp(x) - 1.0) / x;
}

// Integral of exp(-i D z') over [0, z], i.e. (exp(-iDz) - 1)/(-iD); the
// resonant limit D -> 0 gives z.
cplx resonant_integral(cplx d, double z) { return z * phi1(-kI * d * z); }

LinearModeConstants solve_pair(cplx coupling, double mismatch, double length, cplx a0,
                               const char* label) {
  LinearModeConstants c;
  c.half_gap = std::sqrt(cplx(mismatch * mismatch / 4.0 - std::norm(coupling), 0.0));
  if (std::abs(coupling) * length < 1e-12) {
    // No grating: A_F stays a0, nothing is reflected.
    c.decoupled = true;
    const double sgn = mismatch > 0 ? 1.0 : (mismatch < 0 ? -1.0 : 0.0);
    c.integration_constant = kI * sgn * a0;
    c.forward_e = 0.5 * (a0 - kI * c.integration_constant);
    c.forward_f = 0.5 * (a0 + kI * c.integration_constant);
    return c;
  }
  const cplx d = c.half_gap;
  const cplx cs = std::cos(d * length);
  const cplx sn = std::sin(d * length);
  const cplx denominator = kI * d * cs + 0.5 * mismatch * sn;
  if (std::abs(d) * length < 1e-7 || std::abs(denominator) == 0.0) {
    std::ostringstream msg;
    msg << "band edge for " << label << ": |K| = " << std::abs(coupling)
        << ", delta = " << mismatch << ", L = " << length
        << " makes the sin/cos boundary system degenerate";
    throw SingularBoundary(msg.str());
  }
  c.integration_constant = a0 * (kI * d * sn - 0.5 * mismatch * cs) / denominator;
  const cplx cc = c.integration_constant;
  c.forward_e = 0.5 * (a0 - kI * cc);
  c.forward_f = 0.5 * (a0 + kI * cc);
  c.backward_e = (2.0 * d - mismatch) / (4.0 * coupling) * (a0 - kI * cc);
  c.backward_f = (2.0 * d + mismatch) / (4.0 * coupling) * (-a0 - kI * cc);
  return c;
}

void evaluate_pair(const LinearModeConstants& c, cplx coupling, double mismatch, cplx a0,
                   double z, cplx& forward, cplx& backward) {
  if (c.decoupled) {
    forward = a0;
    backward = 0.0;
    return;
  }
  const cplx d = c.half_gap;
  const cplx cs = std::cos(d * z);
  const cplx sn = std::sin(d * z);
  const cplx cc = c.integration_constant;
  forward = std::polar(1.0, -0.5 * mismatch * z) * (a0 * cs + cc * sn);
  const cplx ratio = mismatch / (2.0 * coupling);
  const cplx gap = kI * d / coupling;
  backward = std::polar(1.0, 0.5 * mismatch * z) *
             (a0 * (-ratio * cs + gap * sn) + cc * (-ratio * sn - gap * cs));
}

// Sum of the four resonant terms of the pump equation at z, without the 2K* prefactor.
cplx pump_terms(double combined, const LinearModeConstants& s, const LinearModeConstants& i,
                bool backward, double z) {
  const cplx es = backward ? s.backward_e : s.forward_e;
  const cplx fs = backward ? s.backward_f : s.forward_f;
  const cplx ei = backward ? i.backward_e : i.forward_e;
  const cplx fi = backward ? i.backward_f : i.forward_f;
  const cplx ds = s.half_gap;
  const cplx di = i.half_gap;
  // Each term is (product) * (exp(-i D z) - 1) / (i D) = -(product) * resonant_integral.
  return -(es * ei * resonant_integral(combined - ds - di, z) +
           es * fi * resonant_integral(combined - ds + di, z) +
           fs * ei * resonant_integral(combined + ds - di, z) +
           fs * fi * resonant_integral(combined + ds + di, z));
}

}  // namespace

ClassicalSolutionConstants solve_signal_idler_linear(const WaveguideConfig& config,
                                                     const ClassicalBoundary& boundary) {
  config.validate();
  ClassicalSolutionConstants out;
  out.signal = solve_pair(config.linear_signal, config.mismatch_signal, config.length,
                          boundary.signal_forward, "signal");
  out.idler = solve_pair(config.linear_idler, config.mismatch_idler, config.length,
                         boundary.idler_forward, "idler");
  return out;
}

ClassicalSolutionConstants solve_pump_perturbative(const WaveguideConfig& config,
                                                   const ClassicalBoundary& /*boundary*/,
                                                   ClassicalSolutionConstants constants) {
  const double half_linear = 0.5 * (config.mismatch_signal + config.mismatch_idler);
  constants.combined_forward = config.mismatch_forward + half_linear;
  constants.combined_backward = -config.mismatch_backward - half_linear;
  // A_pB(z) = A_pB(0) - 2 K_B^* sum(...)(z); A_pB(L) = 0.
  constants.pump_backward_at_zero =
      2.0 * std::conj(config.nonlinear_backward) *
      pump_terms(constants.combined_backward, constants.signal, constants.idler, true,
                 config.length);
  constants.pump_solved = true;
  return constants;
}

FieldVector evaluate_analytic(const WaveguideConfig& config, const ClassicalBoundary& boundary,
                              const ClassicalSolutionConstants& constants, double z) {
  FieldVector a{};
  evaluate_pair(constants.signal, config.linear_signal, config.mismatch_signal,
                boundary.signal_forward, z, a[index(ModeId::sF)], a[index(ModeId::sB)]);
  evaluate_pair(constants.idler, config.linear_idler, config.mismatch_idler,
                boundary.idler_forward, z, a[index(ModeId::iF)], a[index(ModeId::iB)]);
  a[index(ModeId::pF)] = boundary.pump_forward;
  a[index(ModeId::pB)] = 0.0;
  if (constants.pump_solved) {
    a[index(ModeId::pF)] += 2.0 * std::conj(config.nonlinear_forward) *
                            pump_terms(constants.combined_forward, constants.signal,
                                       constants.idler, false, z);
    a[index(ModeId::pB)] = constants.pump_backward_at_zero -
                           2.0 * std::conj(config.nonlinear_backward) *
                               pump_terms(constants.combined_backward, constants.signal,
                                          constants.idler, true, z);
  }
  return a;
}

FieldVector classical_rhs(const WaveguideConfig& c, double z, const FieldVector& a) {
  const cplx sF = a[0], iF = a[1], pF = a[2], sB = a[3], iB = a[4], pB = a[5];
  const cplx lin_s = kI * c.linear_signal * std::polar(1.0, -c.mismatch_signal * z);
  const cplx lin_i = kI * c.linear_idler * std::polar(1.0, -c.mismatch_idler * z);
  const cplx nl_f = 2.0 * c.nonlinear_forward * std::polar(1.0, c.mismatch_forward * z);
  const cplx nl_b = 2.0 * c.nonlinear_backward * std::polar(1.0, -c.mismatch_backward * z);
  FieldVector d;
  d[0] = lin_s * sB + nl_f * pF * std::conj(iF);
  d[1] = lin_i * iB + nl_f * pF * std::conj(sF);
  d[3] = std::conj(lin_s) * sF - nl_b * pB * std::conj(iB);
  d[4] = std::conj(lin_i) * iF - nl_b * pB * std::conj(sB);
  d[2] = -std::conj(nl_f) * sF * iF;
  d[5] = std::conj(nl_b) * sB * iB;
  return d;
}

ClassicalFieldProfile analytic_profile(const WaveguideConfig& config,
                                       const ClassicalBoundary& boundary, int grid_steps) {
  if (grid_steps < 1) throw InvalidInput("analytic profile needs at least one grid interval");
  auto constants = solve_pump_perturbative(config, boundary,
                                           solve_signal_idler_linear(config, boundary));
  std::vector<double> grid(static_cast<std::size_t>(grid_steps) + 1);
  for (int k = 0; k <= grid_steps; ++k) grid[k] = config.length * k / grid_steps;
  grid.back() = config.length;
  return ClassicalFieldProfile(
      ClassicalFieldProfile::Source::Analytic, config.length,
      [config, boundary, constants](double z) {
        return evaluate_analytic(config, boundary, constants, z);
      },
      std::move(grid));
}

}  // namespace pbg
