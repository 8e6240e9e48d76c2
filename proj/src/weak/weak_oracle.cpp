#include "pbg/weak/weak_oracle.hpp"

namespace pbg {

WeakIntegrals weak_integrals(const WaveguideConfig& c, const ClassicalFieldProfile& profile,
                             const QuadratureOptions& options) {
  auto lin_s = [&c](double z) {
    return kI * c.linear_signal * std::polar(1.0, -c.mismatch_signal * z);
  };
  auto lin_i = [&c](double z) {
    return kI * c.linear_idler * std::polar(1.0, -c.mismatch_idler * z);
  };
  auto nl_f = [&c](double z) {
    return 2.0 * c.nonlinear_forward * std::polar(1.0, c.mismatch_forward * z);
  };
  auto nl_b = [&c](double z) {
    return 2.0 * c.nonlinear_backward * std::polar(1.0, -c.mismatch_backward * z);
  };
  auto pump_f = [&](double z) { return nl_f(z) * profile.at(ModeId::pF, z); };
  auto pump_b = [&](double z) { return nl_b(z) * profile.at(ModeId::pB, z); };

  const double L = c.length;
  WeakIntegrals w;
  w.pump_forward = integrate(pump_f, 0.0, L, options);
  w.pump_backward = integrate(pump_b, 0.0, L, options);
  w.idler_pump_forward =
      integrate_nested([&](double z) { return std::conj(lin_i(z)); }, pump_f, L, options);
  w.pump_backward_signal = integrate_nested(pump_b, lin_s, L, options);
  w.signal_pump_forward = integrate_nested(
      [&](double z) { return std::conj(nl_f(z)) * profile.at(ModeId::sF, z); }, pump_f, L,
      options);
  w.pump_signal_backward = integrate_nested(
      pump_b, [&](double z) { return std::conj(nl_b(z)) * profile.at(ModeId::sB, z); }, L,
      options);
  w.signal = integrate(lin_s, 0.0, L, options);
  w.idler = integrate([&](double z) { return std::conj(lin_i(z)); }, 0.0, L, options);
  return w;
}

std::map<ModeSet, double> weak_squeeze(const WeakIntegrals& w) {
  using M = ModeId;
  const double f2 = std::norm(w.pump_forward), b2 = std::norm(w.pump_backward);
  const double f = std::abs(w.pump_forward), b = std::abs(w.pump_backward);
  auto one = ModeSet::single;
  auto two = ModeSet::pair;
  return {
      {one(M::sF), 1 + 2 * f2},
      {one(M::sB), 1 + 2 * b2},
      {one(M::pF), 1.0},
      {one(M::pB), 1.0},
      {two(M::sF, M::sB), 2 * (1 + f2 + b2)},
      {two(M::sF, M::iF), 2 * (1 - 2 * f + 2 * f2)},
      {two(M::sF, M::iB),
       2 * (1 + f2 + b2 - 2 * std::abs(w.idler_pump_forward - w.pump_backward_signal))},
      {two(M::sB, M::iB), 2 * (1 - 2 * b + 2 * b2)},
      {two(M::sF, M::pF), 2 * (1 + f2 - 2 * std::abs(w.signal_pump_forward))},
      {two(M::sF, M::pB), 2 * (1 + f2)},
      {two(M::sB, M::pB), 2 * (1 + b2 - 2 * std::abs(w.pump_signal_backward))},
      {two(M::sB, M::pF), 2 * (1 + b2)},
      {two(M::pF, M::pB), 2.0},
  };
}

std::map<ModeSet, double> weak_intensity_variance(const WeakIntegrals& w, const Vector6c& xi) {
  using M = ModeId;
  const cplx sF = std::conj(xi(0)), iF = std::conj(xi(1)), sB = std::conj(xi(3)),
             iB = std::conj(xi(4));  // conjugated amplitudes
  const cplx If = w.pump_forward, Ib = w.pump_backward;
  const double f2 = std::norm(If), b2 = std::norm(Ib);
  const double nsF = std::norm(xi(0)), niF = std::norm(xi(1)), nsB = std::norm(xi(3)),
               niB = std::norm(xi(4));
  auto two = ModeSet::pair;
  return {
      {ModeSet::single(M::sF), 2 * f2 * nsF},
      {ModeSet::single(M::sB), 2 * b2 * nsB},
      {two(M::sF, M::iF),
       4 * (If * sF * iF).real() + 2 * f2 * (1 + 3 * nsF + 3 * niF) +
           4 * (If * std::conj(w.signal) * sB * iF + If * w.idler * iB * sF).real()},
      {two(M::sF, M::sB), 2 * (f2 * nsF + b2 * nsB)},
      {two(M::sF, M::iB),
       2 * (f2 * nsF + b2 * niB) +
           4 * (-w.idler_pump_forward * sF * iB + w.pump_backward_signal * sF * iB).real()},
      {two(M::sB, M::iB),
       4 * (Ib * sB * iB).real() + 2 * b2 * (1 + 3 * nsB + 3 * niB) +
           4 * (-Ib * w.signal * sF * iB - Ib * std::conj(w.idler) * iF * sB).real()},
  };
}

}  // namespace pbg
