#include <algorithm>
#include <cmath>
#include <sstream>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/core/error.hpp"

namespace pbg {

namespace {

FieldVector axpy(const FieldVector& x, double h, const FieldVector& k) {
  FieldVector y;
  for (int n = 0; n < 6; ++n) y[n] = x[n] + h * k[n];
  return y;
}

struct Trajectory {
  std::vector<double> z;
  std::vector<FieldVector> value;
  std::vector<FieldVector> slope;
};

// Fixed-step classical RK4 from z = 0; optionally records every node.
FieldVector integrate(const WaveguideConfig& config, const FieldVector& start, int steps,
                      Trajectory* record) {
  const double h = config.length / steps;
  FieldVector x = start;
  if (record) {
    record->z.resize(steps + 1);
    record->value.resize(steps + 1);
    record->slope.resize(steps + 1);
  }
  for (int n = 0; n < steps; ++n) {
    const double z = config.length * n / steps;
    const FieldVector k1 = classical_rhs(config, z, x);
    if (record) {
      record->z[n] = z;
      record->value[n] = x;
      record->slope[n] = k1;
    }
    const FieldVector k2 = classical_rhs(config, z + 0.5 * h, axpy(x, 0.5 * h, k1));
    const FieldVector k3 = classical_rhs(config, z + 0.5 * h, axpy(x, 0.5 * h, k2));
    const FieldVector k4 = classical_rhs(config, z + h, axpy(x, h, k3));
    for (int m = 0; m < 6; ++m) x[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
  }
  if (record) {
    record->z[steps] = config.length;
    record->value[steps] = x;
    record->slope[steps] = classical_rhs(config, config.length, x);
  }
  return x;
}

constexpr int kBackward[3] = {3, 4, 5};

Eigen::Matrix<double, 6, 1> terminal_residual(const FieldVector& end) {
  Eigen::Matrix<double, 6, 1> r;
  for (int k = 0; k < 3; ++k) {
    r(2 * k) = end[kBackward[k]].real();
    r(2 * k + 1) = end[kBackward[k]].imag();
  }
  return r;
}

FieldVector start_vector(const ClassicalBoundary& b, const Eigen::Matrix<double, 6, 1>& y) {
  FieldVector x{};
  x[0] = b.signal_forward;
  x[1] = b.idler_forward;
  x[2] = b.pump_forward;
  for (int k = 0; k < 3; ++k) x[kBackward[k]] = cplx(y(2 * k), y(2 * k + 1));
  return x;
}

// Cubic Hermite interpolation on recorded RK4 nodes; O(h^4) like the integrator.
FieldVector hermite(const Trajectory& t, double z) {
  const std::size_t last = t.z.size() - 1;
  const double length = t.z[last];
  std::size_t n;
  if (z <= 0) {
    n = 0;
  } else if (z >= length) {
    n = last - 1;
  } else {
    n = std::min<std::size_t>(last - 1, static_cast<std::size_t>(z / length * last));
    while (n > 0 && t.z[n] > z) --n;
    while (n + 1 < last && t.z[n + 1] < z) ++n;
  }
  const double h = t.z[n + 1] - t.z[n];
  const double s = (z - t.z[n]) / h;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  FieldVector out;
  for (int m = 0; m < 6; ++m)
    out[m] = h00 * t.value[n][m] + h10 * h * t.slope[n][m] + h01 * t.value[n + 1][m] +
             h11 * h * t.slope[n + 1][m];
  return out;
}

using Unknowns = Eigen::Matrix<double, 6, 1>;

// Damped Newton on the six real backward amplitudes at z = 0. Returns the
// final residual norm; `y` holds the last iterate.
double newton(const WaveguideConfig& config, const ClassicalBoundary& boundary, int grid_steps,
              int max_iterations, double target, Unknowns& y) {
  auto residual = [&](const Unknowns& u) {
    return terminal_residual(integrate(config, start_vector(boundary, u), grid_steps, nullptr));
  };
  Unknowns r = residual(y);
  double norm = r.norm();
  for (int iteration = 0; !(norm < target); ++iteration) {
    if (iteration >= max_iterations || !std::isfinite(norm)) return norm;
    // Forward-difference Jacobian of the terminal residual in the six real unknowns.
    Eigen::Matrix<double, 6, 6> jac;
    for (int k = 0; k < 6; ++k) {
      Unknowns yk = y;
      const double step = 1e-7 * std::max(1.0, std::abs(y(k)));
      yk(k) += step;
      jac.col(k) = (residual(yk) - r) / step;
    }
    const Unknowns delta = jac.fullPivLu().solve(-r);
    // Damped update: halve the step until the residual decreases.
    double lambda = 1.0;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries, lambda *= 0.5) {
      const Unknowns candidate = y + lambda * delta;
      const Unknowns rc = residual(candidate);
      if (rc.allFinite() && rc.norm() < norm) {
        y = candidate;
        r = rc;
        improved = true;
      }
    }
    if (!improved) return norm;
    norm = r.norm();
  }
  return norm;
}

}  // namespace

ClassicalFieldProfile solve_classical_bvp_shooting(const WaveguideConfig& config,
                                                   const ClassicalBoundary& boundary,
                                                   int grid_steps,
                                                   const ShootingOptions& options) {
  config.validate();
  if (grid_steps < 100) throw InvalidInput("shooting needs grid_steps >= 100");

  Unknowns y = Unknowns::Zero();
  if (options.analytic_initial_guess) {
    try {
      const auto constants = solve_pump_perturbative(
          config, boundary, solve_signal_idler_linear(config, boundary));
      const FieldVector guess = evaluate_analytic(config, boundary, constants, 0.0);
      for (int k = 0; k < 3; ++k) {
        y(2 * k) = guess[kBackward[k]].real();
        y(2 * k + 1) = guess[kBackward[k]].imag();
      }
      if (!y.allFinite()) y.setZero();
    } catch (const SingularBoundary&) {
      y.setZero();
    }
  }

  const double target = options.tolerance * std::max(1.0, std::abs(boundary.pump_forward));
  const Unknowns guess = y;
  double norm = newton(config, boundary, grid_steps, options.max_iterations, target, y);

  // Long structures amplify errors in the start values by about exp(|K| L), which
  // shrinks the basin of attraction. Fall back to continuation in the nonlinear
  // couplings, starting from the linear problem.
  if (!(norm < target)) {
    y = guess;
    double scale = 0, step = 0.25;
    WaveguideConfig partial = config;
    while (scale < 1.0) {
      const double next = std::min(1.0, scale + step);
      partial.nonlinear_forward = next * config.nonlinear_forward;
      partial.nonlinear_backward = next * config.nonlinear_backward;
      Unknowns trial = y;
      norm = newton(partial, boundary, grid_steps, options.max_iterations, target, trial);
      if (norm < target) {
        y = trial;
        scale = next;
        step = std::min(2 * step, 1.0);
      } else if ((step *= 0.5) < 1e-4) {
        break;
      }
    }
    if (scale < 1.0) {
      std::ostringstream msg;
      msg << "shooting did not converge (terminal residual " << norm << ", continuation reached "
          << scale << " of the nonlinear coupling, L = " << config.length
          << ", |A_pF(0)| = " << std::abs(boundary.pump_forward) << ")";
      throw ConvergenceError(msg.str(), norm);
    }
  }

  auto trajectory = std::make_shared<Trajectory>();
  integrate(config, start_vector(boundary, y), grid_steps, trajectory.get());
  std::vector<double> grid = trajectory->z;
  return ClassicalFieldProfile(
      ClassicalFieldProfile::Source::Shooting, config.length,
      [trajectory](double z) { return hermite(*trajectory, z); }, std::move(grid));
}

}  // namespace pbg
