#include "pbg/core/error.hpp"
#include "pbg/statistics/moments.hpp"

namespace pbg {

SqueezingReport squeeze_single(const GaussianMoments& m, ModeId j) {
  const int a = index(j);
  const double b = m.B(a);
  const cplx c = m.C(a);
  return {ModeSet::single(j), 1 + 2 * (b + c.real()), 1 + 2 * (b - c.real()),
          1 + 2 * (b - std::abs(c))};
}

SqueezingReport squeeze_compound(const GaussianMoments& m, ModeId j, ModeId k) {
  if (j == k) throw InvalidInput("compound mode needs two different modes");
  const int a = index(j), b = index(k);
  const double base = 1 + m.B(a) + m.B(b) - 2 * m.Dbar(a, b).real();
  const cplx sum = m.C(a) + m.C(b) + 2.0 * m.D(a, b);
  return {ModeSet::pair(j, k), 2 * (base + sum.real()), 2 * (base - sum.real()),
          2 * (base - std::abs(sum))};
}

SqueezingReport squeeze(const GaussianMoments& m, const ModeSet& modes) {
  return modes.is_pair() ? squeeze_compound(m, modes.first, *modes.second)
                         : squeeze_single(m, modes.first);
}

PhotonStatsReport intensity_moments(const GaussianMoments& m, const ModeSet& modes) {
  auto single = [&m](int j, double& mean, double& var) {
    const double b = m.B(j);
    const cplx c = m.C(j), xi = m.means(j);
    mean += b + std::norm(xi);
    var += b * b + std::norm(c) + 2 * b * std::norm(xi) +
           2 * (c * std::conj(xi) * std::conj(xi)).real();
  };

  PhotonStatsReport r;
  r.modes = modes;
  const int j = index(modes.first);
  single(j, r.mean_W, r.var_W_N);
  if (modes.is_pair()) {
    const int k = index(*modes.second);
    if (j == k) throw InvalidInput("compound mode needs two different modes");
    single(k, r.mean_W, r.var_W_N);
    // <:dW_j dW_k:> for a Gaussian state with means xi and D, Dbar as defined.
    const cplx d = m.D(j, k), dbar = m.Dbar(j, k);
    const cplx xj = m.means(j), xk = m.means(k);
    const double cov = std::norm(d) + std::norm(dbar) +
                       2 * (d * std::conj(xj) * std::conj(xk)).real() -
                       2 * (dbar * xj * std::conj(xk)).real();
    r.var_W_N += 2 * cov;
  }
  if (r.mean_W != 0.0) {
    r.fano = 1 + r.var_W_N / r.mean_W;
    r.reduced_moment = (r.var_W_N + r.mean_W * r.mean_W) / (r.mean_W * r.mean_W);
  }
  return r;
}

}  // namespace pbg
