#include <cmath>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "pbg/core/error.hpp"
#include "pbg/weak/weak_oracle.hpp"

namespace pbg {

namespace {

constexpr int kOrder = 16;
using Rule = boost::math::quadrature::gauss<double, kOrder>;

// Nodes and weights on [-1, 1], expanded from Boost's half-range tables.
struct ReferenceRule {
  std::array<double, kOrder> x{}, w{};
  ReferenceRule() {
    const auto& a = Rule::abscissa();
    const auto& wt = Rule::weights();
    int n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      x[n] = -a[i];
      w[n++] = wt[i];
      x[n] = a[i];
      w[n++] = wt[i];
    }
  }
};

const ReferenceRule& rule() {
  static const ReferenceRule r;
  return r;
}

int initial_panels(double a, double b, const QuadratureOptions& options) {
  const double nodes = options.nodes_per_mm * std::abs(b - a);
  return std::max(1, static_cast<int>(std::ceil(nodes / kOrder - 1e-9)));
}

// Per-panel values of one refinement level; the sum is the integral.
template <typename PanelFn>
std::vector<cplx> panel_values(int panels, PanelFn&& panel) {
  std::vector<cplx> v(panels);
  for (int p = 0; p < panels; ++p) v[p] = panel(p);
  return v;
}

cplx sum(const std::vector<cplx>& v) {
  cplx s = 0;
  for (const cplx& x : v) s += x;
  return s;
}

// Doubles the panel count until two successive levels agree.
template <typename LevelFn>
cplx refine(double a, double b, int panels, double tolerance, int max_doublings, LevelFn&& level) {
  std::vector<cplx> coarse = level(panels);
  double magnitude_scale = 0;
  for (int k = 0; k <= max_doublings; ++k) {
    const std::vector<cplx> fine = level(2 * panels);
    const cplx c = sum(coarse), f = sum(fine);
    magnitude_scale = 0;
    for (const cplx& x : fine) magnitude_scale += std::abs(x);
    if (std::abs(f - c) <= tolerance * std::max(std::abs(f), 1e-3 * magnitude_scale)) return f;
    if (k == max_doublings) {
      int worst = 0;
      double worst_gap = -1;
      for (int p = 0; p < panels; ++p) {
        const double gap = std::abs(coarse[p] - fine[2 * p] - fine[2 * p + 1]);
        if (gap > worst_gap) worst_gap = gap, worst = p;
      }
      const double h = (b - a) / panels;
      std::ostringstream msg;
      msg << "quadrature did not reach relative " << tolerance << " with " << 2 * panels
          << " panels; worst panel [" << a + worst * h << ", " << a + (worst + 1) * h << "]";
      throw QuadratureError(msg.str(), a + worst * h, a + (worst + 1) * h);
    }
    coarse = fine;
    panels *= 2;
  }
  return sum(coarse);
}

}  // namespace

cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b, int panels) {
  return sum(panel_values(panels, [&](int p) {
    const double h = (b - a) / panels;
    const double lo = a + p * h;
    cplx s = 0;
    for (int q = 0; q < kOrder; ++q) s += rule().w[q] * f(lo + 0.5 * h * (rule().x[q] + 1));
    return s * (0.5 * h);
  }));
}

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               const QuadratureOptions& options) {
  auto level = [&](int panels) {
    const double h = (b - a) / panels;
    return panel_values(panels, [&](int p) {
      const double lo = a + p * h;
      cplx s = 0;
      for (int q = 0; q < kOrder; ++q) s += rule().w[q] * f(lo + 0.5 * h * (rule().x[q] + 1));
      return s * (0.5 * h);
    });
  };
  return refine(a, b, initial_panels(a, b, options), options.relative_tolerance,
                options.max_doublings, level);
}

cplx integrate_nested(const std::function<cplx(double)>& outer,
                      const std::function<cplx(double)>& inner, double length,
                      const QuadratureOptions& options) {
  auto level = [&](int panels) {
    const double h = length / panels;
    std::vector<cplx> v(panels);
    cplx cumulative = 0;  // int_0^{panel start} inner
    for (int p = 0; p < panels; ++p) {
      const double lo = p * h;
      cplx s = 0, whole = 0;
      for (int q = 0; q < kOrder; ++q) {
        const double z = lo + 0.5 * h * (rule().x[q] + 1);
        // Antiderivative at z: cached panel start plus a partial-panel rule.
        cplx partial = 0;
        for (int r = 0; r < kOrder; ++r)
          partial += rule().w[r] * inner(lo + 0.5 * (z - lo) * (rule().x[r] + 1));
        partial *= 0.5 * (z - lo);
        s += rule().w[q] * outer(z) * (cumulative + partial);
        whole += rule().w[q] * inner(z);
      }
      v[p] = s * (0.5 * h);
      cumulative += whole * (0.5 * h);
    }
    return v;
  };
  return refine(0.0, length, initial_panels(0.0, length, options),
                options.nested_relative_tolerance, options.max_doublings, level);
}

}  // namespace pbg
