#include "pbg/sweep/checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "pbg/core/error.hpp"
#include "pbg/sweep/pipeline.hpp"
#include "pbg/weak/weak_oracle.hpp"

namespace pbg {

namespace {

struct Sizes {
  int random_configs;
  int mc_states;
  std::uint64_t mc_samples;
};

ModelPoint working_point() {
  ModelPoint p;
  p.waveguide.length = 2.0;
  p.waveguide.linear_signal = 5.0;
  p.waveguide.linear_idler = 5.0;
  p.waveguide.nonlinear_forward = 0.05;
  p.waveguide.nonlinear_backward = 0.05;
  p.boundary = {0.1, 0.1, 10.0};
  return p;
}

double b4_with_steps(const ModelPoint& p, int steps) {
  const ClassicalFieldProfile profile = analytic_profile(p.waveguide, p.boundary, 400);
  const Generator g = [&](double z) { return coefficient_matrix(p.waveguide, profile, z); };
  return commutation_residual(
      bogoliubov_blocks(integrate_transfer(g, 0.0, p.waveguide.length, steps).extended));
}

CheckResult check_identity() {
  ModelPoint p;
  p.waveguide.length = 1.0;
  const PointResult r = evaluate_point(p);
  const double dev = std::max((r.map.U() - Matrix6c::Identity()).cwiseAbs().maxCoeff(),
                              r.map.V().cwiseAbs().maxCoeff());
  return {"identity_map", dev <= 1e-12, dev, 1e-12, "zero couplings"};
}

CheckResult check_identity_observables() {
  ModelPoint p;
  for (auto& s : p.inputs) s.xi = cplx(0.7, -0.4);
  const PointResult r = evaluate_point(p);
  double dev = 0;
  for (ModeId j : kAllModes) {
    dev = std::max(dev, std::abs(squeeze_single(r.moments, j).lambda - 1.0));
    dev = std::max(dev, std::abs(*intensity_moments(r.moments, ModeSet::single(j)).fano - 1.0));
    for (ModeId k : kAllModes) {
      if (index(k) <= index(j)) continue;
      dev = std::max(dev, std::abs(squeeze_compound(r.moments, j, k).lambda - 2.0));
      dev = std::max(dev, std::abs(*intensity_moments(r.moments, ModeSet::pair(j, k)).fano - 1.0));
    }
  }
  return {"identity_observables", dev <= 1e-10, dev, 1e-10, "lambda 1/2, coherent fano 1"};
}

CheckResult check_working_b4() {
  const ModelPoint p = working_point();
  const PointResult r = evaluate_point(p);
  return {"working_point_b4", r.b4_residual < 1e-8, r.b4_residual, 1e-8, "default steps"};
}

// The integrator must converge at least at fourth order.
CheckResult check_b4_order() {
  const ModelPoint p = working_point();
  const double coarse = b4_with_steps(p, 40), fine = b4_with_steps(p, 80);
  const double order = std::log2(coarse / fine);
  char detail[96];
  std::snprintf(detail, sizeof detail, "residual %.3g -> %.3g", coarse, fine);
  return {"b4_refinement_order", order >= 3.5, order, 3.5, detail};
}

WaveguideConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  WaveguideConfig c;
  c.length = 0.2 + 1.8 * u(rng);
  c.linear_signal = std::polar(4.0 * u(rng), 2 * kPi * u(rng));
  c.linear_idler = std::polar(4.0 * u(rng), 2 * kPi * u(rng));
  c.nonlinear_forward = std::polar(0.05 * u(rng), 2 * kPi * u(rng));
  c.nonlinear_backward = std::polar(0.05 * u(rng), 2 * kPi * u(rng));
  c.mismatch_signal = 2 * u(rng) - 1;
  c.mismatch_idler = 2 * u(rng) - 1;
  c.mismatch_forward = 2 * u(rng) - 1;
  c.mismatch_backward = 2 * u(rng) - 1;
  return c;
}

ClassicalBoundary random_boundary(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {std::polar(0.5 * u(rng), 2 * kPi * u(rng)), std::polar(0.5 * u(rng), 2 * kPi * u(rng)),
          std::polar(2.0 + 8.0 * u(rng), 2 * kPi * u(rng))};
}

CheckResult check_conservation(int samples) {
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int n = 0; n < samples; ++n) {
    const WaveguideConfig c = random_config(rng);
    const ClassicalBoundary b = random_boundary(rng);
    worst = std::max(worst, conservation_residual(solve_classical_bvp_shooting(c, b, 400)));
  }
  return {"shooting_conservation", worst <= 1e-9, worst, 1e-9,
          std::to_string(samples) + " random configs"};
}

CheckResult check_analytic_vs_shooting() {
  ModelPoint p = working_point();
  p.waveguide.nonlinear_forward = p.waveguide.nonlinear_backward = 5e-4;
  const ClassicalFieldProfile a = analytic_profile(p.waveguide, p.boundary, 400);
  const ClassicalFieldProfile s = solve_classical_bvp_shooting(p.waveguide, p.boundary, 400);
  double dev = 0;
  for (double z : a.grid()) {
    const FieldVector fa = a(z), fs = s(z);
    for (int k = 0; k < 6; ++k) dev = std::max(dev, std::abs(fa[k] - fs[k]));
  }
  return {"analytic_vs_shooting", dev <= 1e-3, dev, 1e-3, "K_F = K_B = 5e-4"};
}

// Central differences of the mean-field equations are exact for quadratic terms.
CheckResult check_generator() {
  std::mt19937_64 rng(3);
  const WaveguideConfig c = random_config(rng);
  const FieldVector a = {cplx(0.3, 0.1), cplx(-0.2, 0.4), cplx(9.0, 1.0),
                         cplx(0.05, -0.1), cplx(0.2, 0.2), cplx(-0.3, 0.6)};
  const double z = 0.37 * c.length, h = 1e-3;
  const Matrix12c g = coefficient_matrix(c, a, z);
  double dev = 0;
  for (int n = 0; n < 6; ++n)
    for (int part = 0; part < 2; ++part) {
      const cplx step = part == 0 ? cplx(h) : cplx(0.0, h);
      FieldVector up = a, down = a;
      up[n] += step;
      down[n] -= step;
      const FieldVector fu = classical_rhs(c, z, up), fd = classical_rhs(c, z, down);
      for (int m = 0; m < 6; ++m) {
        const cplx d = (fu[m] - fd[m]) / (2 * h);
        // directional derivative along step/h = G_a * dir + G_a* * conj(dir)
        const cplx dir = step / h;
        const cplx predicted = g(2 * m, 2 * n) * dir + g(2 * m, 2 * n + 1) * std::conj(dir);
        dev = std::max(dev, std::abs(d - predicted));
      }
    }
  return {"generator_vs_jacobian", dev <= 1e-9, dev, 1e-9, "random config"};
}

// Sign flip of one nonlinear entry must break the identities.
CheckResult check_mutation() {
  const ModelPoint p = working_point();
  const ClassicalFieldProfile profile = analytic_profile(p.waveguide, p.boundary, 400);
  const int row = component(ModeId::sF), col = component(ModeId::iF, true);
  const Generator flipped = [&](double z) {
    Matrix12c g = coefficient_matrix(p.waveguide, profile, z);
    g(row, col) = -g(row, col);
    g(row + 1, col - 1) = -g(row + 1, col - 1);
    return g;
  };
  const TransferMatrix t = integrate_transfer(flipped, 0.0, p.waveguide.length,
                                              default_steps(p.waveguide.length));
  const double residual = commutation_residual(bogoliubov_blocks(t.extended));
  return {"mutation_detected", residual > 1e-3, residual, 1e-3, "flipped sF <- iF+ coupling"};
}

// Working-point magnitudes scaled by eps, strong pump, weak seeds.
ModelPoint weak_point(std::mt19937_64& rng, double eps) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelPoint p;
  WaveguideConfig& c = p.waveguide;
  c.length = 0.2 + 1.8 * u(rng);
  c.linear_signal = std::polar(eps * 5 * u(rng), 2 * kPi * u(rng));
  c.linear_idler = std::polar(eps * 5 * u(rng), 2 * kPi * u(rng));
  c.nonlinear_forward = std::polar(eps * 0.05 * u(rng), 2 * kPi * u(rng));
  c.nonlinear_backward = std::polar(eps * 0.05 * u(rng), 2 * kPi * u(rng));
  c.mismatch_signal = 2 * u(rng) - 1;
  c.mismatch_idler = 2 * u(rng) - 1;
  c.mismatch_forward = 2 * u(rng) - 1;
  c.mismatch_backward = 2 * u(rng) - 1;
  p.boundary = {std::polar(0.5 * u(rng), 2 * kPi * u(rng)),
                std::polar(0.5 * u(rng), 2 * kPi * u(rng)),
                std::polar(2 + 8 * u(rng), 2 * kPi * u(rng))};
  for (auto& s : p.inputs) s.xi = cplx(2 * u(rng) - 1, 2 * u(rng) - 1);
  return p;
}

// Single-mode squeezing first appears at third order in the couplings.
CheckResult check_single_mode_lambda(int samples) {
  std::mt19937_64 rng(11);
  double worst = 1e300;
  for (int n = 0; n < samples; ++n) {
    const PointResult r = evaluate_point(weak_point(rng, 1e-3));
    for (ModeId j : kAllModes) worst = std::min(worst, squeeze_single(r.moments, j).lambda - 1);
  }
  return {"single_mode_no_squeezing", worst >= -1e-9, worst, -1e-9,
          std::to_string(samples) + " configs at 1e-3 of the working point"};
}

// Deviations from the vacuum value are second order in the couplings. Entries
// that vanish at that order are compared against the largest deviation.
CheckResult check_weak_oracle() {
  ModelPoint p = working_point();
  const double eps = 1e-3;
  p.waveguide.linear_signal *= eps;
  p.waveguide.linear_idler *= eps;
  p.waveguide.nonlinear_forward *= eps;
  p.waveguide.nonlinear_backward *= eps;
  const PointResult r = evaluate_point(p);
  const ClassicalFieldProfile profile = analytic_profile(p.waveguide, p.boundary, 400);
  const auto predicted = weak_squeeze(weak_integrals(p.waveguide, profile));
  double signal = 0;
  for (const auto& [modes, value] : predicted)
    signal = std::max(signal, std::abs(value - (modes.is_pair() ? 2.0 : 1.0)));
  double worst = 0;
  for (const auto& [modes, value] : predicted) {
    const double deviation = std::abs(value - (modes.is_pair() ? 2.0 : 1.0));
    const double scale = deviation > 1e-6 * signal ? deviation : signal;
    worst = std::max(worst, std::abs(squeeze(r.moments, modes).lambda - value) / scale);
  }
  return {"weak_oracle_agreement", worst <= 1e-3, worst, 1e-3, "couplings scaled by 1e-3"};
}

InputStates random_inputs(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  InputStates in;
  for (auto& s : in) {
    s.xi = cplx(2 * u(rng) - 1, 2 * u(rng) - 1);
    s.r = 0.6 * u(rng);
    s.theta = 2 * kPi * u(rng);
    s.n_ch = 0.5 * u(rng);
  }
  return in;
}

// Output of a random quadratic Hamiltonian acting on random Gaussian inputs.
GaussianMoments random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Matrix12c g = Matrix12c::Zero();
  for (int j = 0; j < 6; ++j)
    for (int k = j; k < 6; ++k) {
      const cplx hop = 0.15 * cplx(n(rng), n(rng));
      const cplx pair = 0.15 * cplx(n(rng), n(rng));
      if (k == j) {
        g(2 * j, 2 * j) = kI * hop.real();
      } else {
        g(2 * j, 2 * k) += kI * hop;
        g(2 * k, 2 * j) += kI * std::conj(hop);
        g(2 * k, 2 * j + 1) += pair;
      }
      g(2 * j, 2 * k + 1) += pair;
    }
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      g(2 * j + 1, 2 * k + 1) = std::conj(g(2 * j, 2 * k));
      g(2 * j + 1, 2 * k) = std::conj(g(2 * j, 2 * k + 1));
    }
  const TransferMatrix t = integrate_transfer([&](double) { return g; }, 0.0, 1.0, 400);
  const BogoliubovBlocks b = bogoliubov_blocks(t.extended);
  return propagate_second_moments(b.u().cast<cplx>(), b.v().cast<cplx>(), random_inputs(rng));
}

CheckResult check_monte_carlo(int states, std::uint64_t samples) {
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int n = 0; n < states; ++n) {
    const GaussianMoments m = random_state(rng);
    const ModeSet sets[] = {ModeSet::single(static_cast<ModeId>(n % 6)),
                            ModeSet::pair(static_cast<ModeId>(n % 3),
                                          static_cast<ModeId>(3 + (n + 1) % 3))};
    for (const ModeSet& s : sets) {
      const PhotonStatsReport a = intensity_moments(m, s);
      const McPhotonStats mc = mc_oracle(m, s, {samples, 1000u + static_cast<std::uint64_t>(n), 1});
      worst = std::max(worst, std::abs(mc.var_W_N.value - a.var_W_N) / mc.var_W_N.error);
      if (a.fano && mc.fano) worst = std::max(worst, std::abs(mc.fano->value - *a.fano) / mc.fano->error);
    }
  }
  return {"monte_carlo_fourth_moments", worst <= 4.0, worst, 4.0,
          "max deviation in standard errors"};
}

template <class F>
CheckResult guarded(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {name, false, std::nan(""), 0, e.what()};
  }
}

}  // namespace

bool CheckReport::passed() const {
  for (const CheckResult& r : results)
    if (!r.passed) return false;
  return true;
}

CheckReport run_checks(CheckLevel level) {
  const auto start = std::chrono::steady_clock::now();
  const Sizes n = level == CheckLevel::Fast ? Sizes{10, 4, 100'000} : Sizes{50, 20, 1'000'000};
  CheckReport report;
  auto add = [&report](CheckResult r) { report.results.push_back(std::move(r)); };
  add(guarded("identity_map", check_identity));
  add(guarded("identity_observables", check_identity_observables));
  add(guarded("working_point_b4", check_working_b4));
  add(guarded("b4_refinement_order", check_b4_order));
  add(guarded("generator_vs_jacobian", check_generator));
  add(guarded("mutation_detected", check_mutation));
  add(guarded("shooting_conservation", [&] { return check_conservation(n.random_configs); }));
  add(guarded("analytic_vs_shooting", check_analytic_vs_shooting));
  add(guarded("single_mode_no_squeezing", [&] { return check_single_mode_lambda(n.random_configs); }));
  add(guarded("weak_oracle_agreement", check_weak_oracle));
  add(guarded("monte_carlo_fourth_moments",
              [&] { return check_monte_carlo(n.mc_states, n.mc_samples); }));
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void print_report(std::ostream& out, const CheckReport& report) {
  int passed = 0;
  char line[256];
  for (const CheckResult& r : report.results) {
    passed += r.passed;
    std::snprintf(line, sizeof line, "check %s %s value=%.6g threshold=%.6g", r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.value, r.threshold);
    out << line;
    if (!r.detail.empty()) out << " # " << r.detail;
    out << '\n';
  }
  std::snprintf(line, sizeof line, "summary passed=%d failed=%d seconds=%.2f", passed,
                static_cast<int>(report.results.size()) - passed, report.seconds);
  out << line << '\n';
}

}  // namespace pbg
