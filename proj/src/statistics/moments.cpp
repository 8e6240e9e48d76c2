#include "pbg/statistics/moments.hpp"

namespace pbg {

Vector6c propagate_means(const Matrix6c& U, const Matrix6c& V, const Vector6c& in) {
  return U * in + V * in.conjugate();
}

Vector6c propagate_means(const InputOutputMap& map, const Vector6c& in) {
  return propagate_means(map.U(), map.V(), in);
}

GaussianMoments propagate_second_moments(const Matrix6c& U, const Matrix6c& V,
                                         const InputStates& inputs) {
  // Normal moments of each independent input mode.
  Vector6c xi;
  Vector6d b;
  Vector6c c;
  for (int k = 0; k < 6; ++k) {
    inputs[k].validate();
    const MomentPair n = normal_from_antinormal(antinormal_from_state(inputs[k]));
    xi(k) = inputs[k].xi;
    b(k) = n.B;
    c(k) = n.C;
  }

  GaussianMoments out;
  out.means = propagate_means(U, V, xi);
  for (int j = 0; j < 6; ++j) {
    double bj = 0;
    cplx cj = 0;
    for (int k = 0; k < 6; ++k) {
      const cplx u = U(j, k), v = V(j, k);
      bj += std::norm(u) * b(k) + std::norm(v) * (b(k) + 1) +
            2 * (u * std::conj(v) * c(k)).real();
      cj += u * u * c(k) + v * v * std::conj(c(k)) + u * v * (2 * b(k) + 1);
    }
    out.B(j) = bj;
    out.C(j) = cj;
  }
  for (int j = 0; j < 6; ++j)
    for (int l = 0; l < 6; ++l) {
      if (j == l) continue;
      cplx d = 0, dbar = 0;
      for (int k = 0; k < 6; ++k) {
        const cplx uj = U(j, k), vj = V(j, k), ul = U(l, k), vl = V(l, k);
        d += uj * ul * c(k) + vj * vl * std::conj(c(k)) + uj * vl * (b(k) + 1) + vj * ul * b(k);
        dbar -= std::conj(uj) * ul * b(k) + std::conj(vj) * vl * (b(k) + 1) +
                std::conj(uj) * vl * std::conj(c(k)) + std::conj(vj) * ul * c(k);
      }
      out.D(j, l) = d;
      out.Dbar(j, l) = dbar;
    }
  return out;
}

GaussianMoments propagate_second_moments(const InputOutputMap& map, const InputStates& inputs) {
  return propagate_second_moments(map.U(), map.V(), inputs);
}

}  // namespace pbg
