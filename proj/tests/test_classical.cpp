#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/core/error.hpp"
#include "support.hpp"

using namespace pbg;
using pbg::test::max_abs_diff;

namespace {

// Grating pair integrated as two basis solutions from z = 0 with an adaptive
// Dormand-Prince stepper; the backward amplitude at 0 follows from A_B(L) = 0.
std::pair<cplx, cplx> dfb_oracle(cplx K, double delta, double L, cplx a0) {
  using State = std::array<cplx, 2>;
  auto rhs = [&](const State& y, State& dy, double z) {
    dy[0] = kI * K * std::polar(1.0, -delta * z) * y[1];
    dy[1] = -kI * std::conj(K) * std::polar(1.0, delta * z) * y[0];
  };
  namespace ode = boost::numeric::odeint;
  auto solve = [&](State y) {
    ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()),
                            rhs, y, 0.0, L, 1e-4);
    return y;
  };
  const State from_f = solve({1.0, 0.0});
  const State from_b = solve({0.0, 1.0});
  const cplx b0 = -a0 * from_f[1] / from_b[1];
  return {a0 * from_f[0] + b0 * from_b[0], b0};
}

WaveguideConfig linear_only(cplx K, double delta, double L) {
  WaveguideConfig c;
  c.length = L;
  c.linear_signal = K;
  c.linear_idler = K;
  c.mismatch_signal = delta;
  c.mismatch_idler = delta;
  return c;
}

}  // namespace

TEST(LinearSolution, DecoupledLimit) {
  WaveguideConfig c = linear_only(0.0, 0.0, 1.3);
  const ClassicalBoundary b{cplx(0.3, -0.2), 0.7, 2.0};
  const auto k = solve_signal_idler_linear(c, b);
  EXPECT_TRUE(k.signal.decoupled);
  for (double z : {0.0, 0.4, 1.3}) {
    const FieldVector a = evaluate_analytic(c, b, solve_pump_perturbative(c, b, k), z);
    EXPECT_EQ(a[0], b.signal_forward);
    EXPECT_EQ(a[3], cplx(0.0));
    EXPECT_EQ(a[4], cplx(0.0));
  }
}

TEST(LinearSolution, DistributedFeedbackTransmission) {
  const WaveguideConfig c = linear_only(5.0, 0.0, 0.2);
  const ClassicalBoundary b{1.0, 0.0, 0.0};
  const auto k = solve_signal_idler_linear(c, b);
  const FieldVector end = evaluate_analytic(c, b, k, 0.2);
  EXPECT_NEAR(std::abs(end[0]), 1.0 / std::cosh(1.0), 1e-12);
  EXPECT_NEAR(std::abs(end[0]), 0.6481, 1e-4);

  const auto [aF_L, aB_0] = dfb_oracle(5.0, 0.0, 0.2, 1.0);
  EXPECT_NEAR(std::abs(end[0] - aF_L), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(evaluate_analytic(c, b, k, 0.0)[3] - aB_0), 0.0, 1e-10);
}

TEST(LinearSolution, OutsideGapOscillatory) {
  const cplx K(5.0, 0.0);
  const WaveguideConfig c = linear_only(K, 12.0, 0.7);
  const ClassicalBoundary b{cplx(0.8, 0.3), 0.0, 0.0};
  const auto k = solve_signal_idler_linear(c, b);
  EXPECT_NEAR(k.signal.half_gap.imag(), 0.0, 1e-14);
  EXPECT_GT(k.signal.half_gap.real(), 0.0);
  EXPECT_LT(std::abs(evaluate_analytic(c, b, k, 0.7)[3]), 1e-10);

  const auto [aF_L, aB_0] = dfb_oracle(K, 12.0, 0.7, b.signal_forward);
  EXPECT_NEAR(std::abs(evaluate_analytic(c, b, k, 0.7)[0] - aF_L), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(evaluate_analytic(c, b, k, 0.0)[3] - aB_0), 0.0, 1e-10);

  // Substitution into the linear equations by central differences.
  const double h = 1e-5;
  for (double z : {0.1, 0.35, 0.6}) {
    const FieldVector lo = evaluate_analytic(c, b, k, z - h);
    const FieldVector hi = evaluate_analytic(c, b, k, z + h);
    const FieldVector mid = evaluate_analytic(c, b, k, z);
    const FieldVector rhs = classical_rhs(c, z, mid);
    EXPECT_NEAR(std::abs((hi[0] - lo[0]) / (2 * h) - rhs[0]), 0.0, 1e-7);
    EXPECT_NEAR(std::abs((hi[3] - lo[3]) / (2 * h) - rhs[3]), 0.0, 1e-7);
  }
}

TEST(LinearSolution, ComplexCouplingInsideGap) {
  const cplx K = std::polar(3.0, 0.7);
  const WaveguideConfig c = linear_only(K, 1.5, 1.1);
  const ClassicalBoundary b{cplx(-0.4, 0.9), cplx(0.2, 0.1), 0.0};
  const auto k = solve_signal_idler_linear(c, b);
  const auto [aF_L, aB_0] = dfb_oracle(K, 1.5, 1.1, b.signal_forward);
  EXPECT_NEAR(std::abs(evaluate_analytic(c, b, k, 1.1)[0] - aF_L), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(evaluate_analytic(c, b, k, 0.0)[3] - aB_0), 0.0, 1e-10);
  EXPECT_NEAR(std::norm(k.signal.half_gap * k.signal.half_gap -
                        (1.5 * 1.5 / 4 - std::norm(K))),
              0.0, 1e-20);
}

TEST(LinearSolution, BandEdgeIsReported) {
  const WaveguideConfig c = linear_only(5.0, 10.0, 1.0);  // delta^2/4 == |K|^2
  EXPECT_THROW(solve_signal_idler_linear(c, {1.0, 1.0, 0.0}), SingularBoundary);
}

TEST(LinearSolution, GratingFluxConserved) {
  const WaveguideConfig c = linear_only(cplx(2.0, 1.0), 0.8, 1.5);
  const ClassicalBoundary b{cplx(0.5, 0.5), 1.0, 0.0};
  const auto k = solve_signal_idler_linear(c, b);
  const FieldVector a0 = evaluate_analytic(c, b, k, 0.0);
  const double flux0 = std::norm(a0[0]) - std::norm(a0[3]);
  for (double z = 0.1; z < 1.5; z += 0.1) {
    const FieldVector a = evaluate_analytic(c, b, k, z);
    EXPECT_NEAR(std::norm(a[0]) - std::norm(a[3]), flux0, 1e-12);
  }
}

TEST(PumpSolution, NoSeedMeansConstantPump) {
  const WaveguideConfig c = pbg::test::working_point();
  const ClassicalBoundary b{0.0, 0.0, 10.0};
  const ClassicalFieldProfile p = analytic_profile(c, b, 200);
  for (double z : {0.0, 0.7, 2.0}) {
    EXPECT_EQ(p.at(ModeId::pF, z), cplx(10.0));
    EXPECT_EQ(p.at(ModeId::pB, z), cplx(0.0));
    EXPECT_EQ(p.at(ModeId::sF, z), cplx(0.0));
  }
}

TEST(PumpSolution, MatchesQuadratureOfSignalIdlerProduct) {
  // The pump equations are linear in the pump given sF, iF (resp. sB, iB), so
  // the perturbative pump is an integral of the grating solution.
  for (double mismatch : {0.0, 0.9}) {
    WaveguideConfig c = pbg::test::working_point();
    c.length = 0.8;
    c.linear_idler = cplx(4.0, 1.0);
    c.mismatch_signal = 0.3 * mismatch;
    c.mismatch_forward = mismatch;
    c.mismatch_backward = -0.5 * mismatch;
    const ClassicalBoundary b{cplx(0.3, 0.1), cplx(0.2, -0.4), cplx(10.0, 1.0)};
    const auto lin = solve_signal_idler_linear(c, b);
    const auto full = solve_pump_perturbative(c, b, lin);
    auto at = [&](double z) { return evaluate_analytic(c, b, full, z); };

    using boost::math::quadrature::gauss_kronrod;
    auto fwd = [&](double z) {
      const FieldVector a = at(z);
      return -2.0 * std::conj(c.nonlinear_forward) * std::polar(1.0, -c.mismatch_forward * z) *
             a[0] * a[1];
    };
    auto bwd = [&](double z) {
      const FieldVector a = at(z);
      return 2.0 * std::conj(c.nonlinear_backward) * std::polar(1.0, c.mismatch_backward * z) *
             a[3] * a[4];
    };
    for (double z : {0.25, 0.8}) {
      const cplx pf = b.pump_forward + gauss_kronrod<double, 61>::integrate(fwd, 0.0, z, 8, 1e-14);
      EXPECT_NEAR(std::abs(at(z)[2] - pf), 0.0, 1e-12);
      const cplx pb = -gauss_kronrod<double, 61>::integrate(bwd, z, c.length, 8, 1e-14);
      EXPECT_NEAR(std::abs(at(z)[5] - pb), 0.0, 1e-12);
    }
    EXPECT_NEAR(std::abs(at(c.length)[5]), 0.0, 1e-14);
  }
}

TEST(PumpSolution, ResonantDenominatorIsContinuous) {
  // delta = 0 with K_s = K_i makes several exponents coincide exactly.
  WaveguideConfig c = pbg::test::working_point();
  const ClassicalBoundary b = pbg::test::working_boundary();
  const FieldVector exact = analytic_profile(c, b, 100)(1.3);
  c.mismatch_forward = 1e-9;
  const FieldVector near = analytic_profile(c, b, 100)(1.3);
  EXPECT_LT(max_abs_diff(exact, near), 1e-7);
  for (const cplx& v : exact) EXPECT_TRUE(std::isfinite(std::abs(v)));
}

TEST(Shooting, ZeroCouplingIsConstant) {
  WaveguideConfig c;
  c.length = 1.5;
  const ClassicalBoundary b{0.5, cplx(0.0, 0.2), 3.0};
  const ClassicalFieldProfile p = solve_classical_bvp_shooting(c, b, 150);
  for (double z : {0.0, 0.33, 1.5}) {
    EXPECT_NEAR(std::abs(p.at(ModeId::sF, z) - b.signal_forward), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.at(ModeId::pF, z) - b.pump_forward), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(p.at(ModeId::sB, z)), 0.0, 1e-14);
  }
  EXPECT_EQ(conservation_residual(p), 0.0);
}

TEST(Shooting, WorkingPointAgreesWithAnalytic) {
  const WaveguideConfig c = pbg::test::working_point();
  const ClassicalBoundary b = pbg::test::working_boundary();
  const ClassicalFieldProfile shot = solve_classical_bvp_shooting(c, b, 2000);
  const ClassicalFieldProfile ana = analytic_profile(c, b, 2000);
  EXPECT_LT(shot.boundary_residual(), 1e-9 * 10);
  EXPECT_LT(conservation_residual(shot), 1e-9);
  EXPECT_GT(conservation_residual(ana), 0.0);
  for (double z : {0.0, 0.5, 1.0, 2.0}) {
    const FieldVector s = shot(z), a = ana(z);
    double scale = 0;
    for (const cplx& v : s) scale = std::max(scale, std::abs(v));
    EXPECT_LT(max_abs_diff(s, a) / scale, 1e-2) << "z = " << z;
  }
}

TEST(Shooting, AnalyticErrorScaling) {
  // The closed form keeps the grating part of the signal/idler equations only,
  // so their error is first order in the nonlinear coupling; the pump is built
  // from those fields and its error is second order.
  struct Errors {
    double signal_idler;
    double pump;
  };
  auto errors_at = [](double k_nl) {
    WaveguideConfig c = pbg::test::working_point();
    c.length = 1.0;
    c.nonlinear_forward = k_nl;
    c.nonlinear_backward = k_nl;
    const ClassicalBoundary b{1.0, 1.0, 10.0};
    const ClassicalFieldProfile shot = solve_classical_bvp_shooting(c, b, 1000);
    const ClassicalFieldProfile ana = analytic_profile(c, b, 1000);
    Errors e{0, 0};
    for (double z : {0.0, 1.0}) {
      const FieldVector s = shot(z), a = ana(z);
      for (int k : {0, 1, 3, 4}) e.signal_idler = std::max(e.signal_idler, std::abs(s[k] - a[k]));
      for (int k : {2, 5}) e.pump = std::max(e.pump, std::abs(s[k] - a[k]));
    }
    return e;
  };
  const Errors e1 = errors_at(0.02), e2 = errors_at(0.01), e3 = errors_at(0.005);
  EXPECT_NEAR(std::log2(e1.signal_idler / e2.signal_idler), 1.0, 0.3);
  EXPECT_NEAR(std::log2(e2.signal_idler / e3.signal_idler), 1.0, 0.3);
  EXPECT_NEAR(std::log2(e1.pump / e2.pump), 2.0, 0.3);
  EXPECT_NEAR(std::log2(e2.pump / e3.pump), 2.0, 0.3);
}

TEST(Shooting, SmallCouplingPumpChange) {
  WaveguideConfig c = pbg::test::working_point();
  c.nonlinear_forward = 1e-4;
  c.nonlinear_backward = 1e-4;
  const ClassicalBoundary b = pbg::test::working_boundary();
  const cplx shot = solve_classical_bvp_shooting(c, b, 2000).at(ModeId::pF, 2.0);
  const cplx ana = analytic_profile(c, b, 100).at(ModeId::pF, 2.0);
  EXPECT_GT(std::abs(shot - b.pump_forward), 0.0);
  EXPECT_NEAR(std::abs((shot - b.pump_forward) / (ana - b.pump_forward) - 1.0), 0.0, 1e-3);
}

TEST(Shooting, SignalIdlerExchangeSymmetry) {
  WaveguideConfig c = pbg::test::working_point();
  c.linear_signal = cplx(4.0, 0.5);
  c.mismatch_signal = 0.7;
  c.mismatch_idler = -0.2;
  const ClassicalBoundary b{cplx(0.3, 0.1), cplx(0.1, -0.05), 8.0};
  const ClassicalBoundary bx{b.idler_forward, b.signal_forward, b.pump_forward};
  const WaveguideConfig cx = c.exchanged_signal_idler();
  for (bool shooting : {false, true}) {
    const auto p = shooting ? solve_classical_bvp_shooting(c, b, 1000) : analytic_profile(c, b, 10);
    const auto px =
        shooting ? solve_classical_bvp_shooting(cx, bx, 1000) : analytic_profile(cx, bx, 10);
    for (double z : {0.0, 0.8, 2.0}) {
      const FieldVector a = p(z), ax = px(z);
      EXPECT_NEAR(std::abs(a[0] - ax[1]), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(a[1] - ax[0]), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(a[3] - ax[4]), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(a[2] - ax[2]), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(a[5] - ax[5]), 0.0, 1e-10);
    }
  }
}

TEST(Shooting, RejectsCoarseGrid) {
  EXPECT_THROW(solve_classical_bvp_shooting(pbg::test::working_point(),
                                            pbg::test::working_boundary(), 50),
               InvalidInput);
}

TEST(Profile, CsvExport) {
  const ClassicalFieldProfile p =
      analytic_profile(pbg::test::working_point(), pbg::test::working_boundary(), 100);
  std::ostringstream out;
  write_profile_csv(out, p);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("z,", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 102);
}
