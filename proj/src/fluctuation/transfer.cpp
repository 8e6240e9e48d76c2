#include <cmath>
#include <sstream>

#include "pbg/core/error.hpp"
#include "pbg/fluctuation/propagator.hpp"

namespace pbg {

namespace {

// Nonzero entries of the operator rows of G.
struct SparseGenerator {
  struct Entry {
    int col;
    cplx_ext value;
  };
  std::array<std::vector<Entry>, 6> rows;

  explicit SparseGenerator(const Matrix12c& g) {
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 12; ++c)
        if (g(2 * r, c) != cplx(0.0)) rows[r].push_back({c, cplx_ext(g(2 * r, c))});
  }

  // out = G * x for matrices with the conjugate-row structure.
  void apply(const Matrix12e& x, Matrix12e& out) const {
    for (int r = 0; r < 6; ++r) {
      auto row = out.row(2 * r);
      row.setZero();
      for (const Entry& e : rows[r]) row += e.value * x.row(e.col);
    }
    mirror(out);
  }

  static void mirror(Matrix12e& m) {
    for (int k = 0; k < 6; ++k)
      for (int l = 0; l < 6; ++l) {
        m(2 * k + 1, 2 * l + 1) = std::conj(m(2 * k, 2 * l));
        m(2 * k + 1, 2 * l) = std::conj(m(2 * k, 2 * l + 1));
      }
  }
};

}  // namespace

TransferMatrix integrate_transfer(const Generator& generator, double z_begin, double z_end,
                                  int steps) {
  if (steps < 1) throw InvalidInput("transfer integration needs at least one step");
  const long double span = static_cast<long double>(z_end) - z_begin;
  const long double h = span / steps;
  auto z_at = [&](int n) { return static_cast<double>(z_begin + span * n / steps); };

  Matrix12e m = Matrix12e::Identity();
  Matrix12e k1, k2, k3, k4, tmp;
  SparseGenerator g0(generator(z_begin));
  for (int n = 0; n < steps; ++n) {
    const SparseGenerator g_half(generator(static_cast<double>(z_begin + span * (n + 0.5L) / steps)));
    const SparseGenerator g1(generator(z_at(n + 1)));
    g0.apply(m, k1);
    tmp = m + (h / 2) * k1;
    g_half.apply(tmp, k2);
    tmp = m + (h / 2) * k2;
    g_half.apply(tmp, k3);
    tmp = m + h * k3;
    g1.apply(tmp, k4);
    m += (h / 6) * (k1 + 2.0L * k2 + 2.0L * k3 + k4);
    if (!m.allFinite()) {
      std::ostringstream msg;
      msg << "transfer matrix blew up at z = " << z_at(n + 1);
      throw IntegrationError(msg.str(), z_at(n + 1));
    }
    g0 = g1;
  }
  TransferMatrix t;
  t.extended = m;
  t.matrix = m.cast<cplx>();
  t.z_begin = z_begin;
  t.z_end = z_end;
  t.steps = steps;
  return t;
}

TransferMatrix integrate_transfer(const WaveguideConfig& config,
                                  const ClassicalFieldProfile& profile, int steps) {
  if (steps < 100) throw InvalidInput("transfer integration needs steps >= 100");
  return integrate_transfer(
      [&config, &profile](double z) { return coefficient_matrix(config, profile, z); }, 0.0,
      config.length, steps);
}

int default_steps(double length, double steps_per_mm, int min_steps) {
  const double n = std::ceil(steps_per_mm * length - 1e-9);
  return n < min_steps ? min_steps : static_cast<int>(n);
}

}  // namespace pbg
