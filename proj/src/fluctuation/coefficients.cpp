#include "pbg/fluctuation/propagator.hpp"

namespace pbg {

Matrix12c coefficient_matrix(const WaveguideConfig& c, const FieldVector& a, double z) {
  const cplx sF = a[0], iF = a[1], pF = a[2], sB = a[3], iB = a[4], pB = a[5];
  const cplx lin_s = kI * c.linear_signal * std::polar(1.0, -c.mismatch_signal * z);
  const cplx lin_i = kI * c.linear_idler * std::polar(1.0, -c.mismatch_idler * z);
  const cplx nl_f = 2.0 * c.nonlinear_forward * std::polar(1.0, c.mismatch_forward * z);
  const cplx nl_b = 2.0 * c.nonlinear_backward * std::polar(1.0, -c.mismatch_backward * z);

  constexpr bool dag = true;
  Matrix12c g = Matrix12c::Zero();
  auto set = [&g](ModeId row, ModeId col, bool col_dagger, cplx value) {
    g(component(row), component(col, col_dagger)) = value;
  };

  set(ModeId::sF, ModeId::sB, false, lin_s);
  set(ModeId::sF, ModeId::iF, dag, nl_f * pF);
  set(ModeId::sF, ModeId::pF, false, nl_f * std::conj(iF));

  set(ModeId::iF, ModeId::iB, false, lin_i);
  set(ModeId::iF, ModeId::sF, dag, nl_f * pF);
  set(ModeId::iF, ModeId::pF, false, nl_f * std::conj(sF));

  set(ModeId::sB, ModeId::sF, false, std::conj(lin_s));
  set(ModeId::sB, ModeId::iB, dag, -nl_b * pB);
  set(ModeId::sB, ModeId::pB, false, -nl_b * std::conj(iB));

  set(ModeId::iB, ModeId::iF, false, std::conj(lin_i));
  set(ModeId::iB, ModeId::sB, dag, -nl_b * pB);
  set(ModeId::iB, ModeId::pB, false, -nl_b * std::conj(sB));

  set(ModeId::pF, ModeId::iF, false, -std::conj(nl_f) * sF);
  set(ModeId::pF, ModeId::sF, false, -std::conj(nl_f) * iF);

  set(ModeId::pB, ModeId::iB, false, std::conj(nl_b) * sB);
  set(ModeId::pB, ModeId::sB, false, std::conj(nl_b) * iB);

  // Conjugate rows mirror the operator rows.
  for (int m = 0; m < 6; ++m)
    for (int n = 0; n < 6; ++n) {
      g(2 * m + 1, 2 * n + 1) = std::conj(g(2 * m, 2 * n));
      g(2 * m + 1, 2 * n) = std::conj(g(2 * m, 2 * n + 1));
    }
  return g;
}

Matrix12c coefficient_matrix(const WaveguideConfig& config, const ClassicalFieldProfile& profile,
                             double z) {
  return coefficient_matrix(config, profile(z), z);
}

}  // namespace pbg
