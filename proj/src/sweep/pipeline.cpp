#include "pbg/sweep/pipeline.hpp"

#include <algorithm>

#include "pbg/core/error.hpp"

namespace pbg {

std::string to_string(ClassicalSolver s) {
  return s == ClassicalSolver::Analytic ? "analytic" : "shooting";
}

ClassicalSolver parse_classical_solver(std::string_view text) {
  if (text == "analytic") return ClassicalSolver::Analytic;
  if (text == "shooting") return ClassicalSolver::Shooting;
  throw InvalidInput("unknown classical solver '" + std::string(text) +
                     "' (expected analytic or shooting)");
}

ClassicalFieldProfile solve_profile(const ModelPoint& point, const SolverOptions& options) {
  const int steps =
      default_steps(point.waveguide.length, options.steps_per_mm, options.min_steps);
  if (options.classical == ClassicalSolver::Shooting)
    return solve_classical_bvp_shooting(point.waveguide, point.boundary, steps, options.shooting);
  return analytic_profile(point.waveguide, point.boundary, steps);
}

PointResult evaluate_point(const ModelPoint& point, const SolverOptions& options) {
  point.waveguide.validate();
  for (const InputModeState& s : point.inputs) s.validate();
  ClassicalFieldProfile profile = solve_profile(point, options);
  const int steps =
      default_steps(point.waveguide.length, options.steps_per_mm, options.min_steps);
  TransferMatrix transfer = integrate_transfer(point.waveguide, profile, steps);
  InputOutputMap map = rearrange_input_output(transfer, options.max_condition);
  GaussianMoments moments = propagate_second_moments(map, point.inputs);
  const double b4 = commutation_residual(map);
  const long double peak = std::max(map.transfer_blocks.u().cwiseAbs().maxCoeff(),
                                    map.transfer_blocks.v().cwiseAbs().maxCoeff());
  const double scale = std::max(1.0, static_cast<double>(peak * peak));
  return {std::move(profile), transfer, std::move(map), std::move(moments), b4, scale};
}

namespace {

struct KindName {
  Observable::Kind kind;
  std::string_view name;
};

constexpr KindName kKinds[] = {
    {Observable::Kind::VarQ, "var_q"},   {Observable::Kind::VarP, "var_p"},
    {Observable::Kind::Lambda, "lambda"}, {Observable::Kind::MeanW, "mean_W"},
    {Observable::Kind::VarW, "var_W"},   {Observable::Kind::Fano, "fano"},
    {Observable::Kind::ReducedMoment, "R_W"},
};

}  // namespace

std::string Observable::name() const {
  for (const auto& k : kKinds)
    if (k.kind == kind) return std::string(k.name) + ":" + to_string(modes);
  return "?";
}

std::string Observable::column() const {
  std::string s = name();
  for (char& ch : s)
    if (ch == ':' || ch == ',') ch = '_';
  return s;
}

Observable Observable::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw InvalidInput("observable '" + std::string(text) + "' must look like kind:modes");
  const std::string_view kind = text.substr(0, colon);
  for (const auto& k : kKinds)
    if (k.name == kind) return {k.kind, parse_mode_set(text.substr(colon + 1))};
  throw InvalidInput("unknown observable kind '" + std::string(kind) +
                     "' (var_q, var_p, lambda, mean_W, var_W, fano, R_W)");
}

std::optional<double> evaluate_observable(const GaussianMoments& moments, const Observable& obs) {
  switch (obs.kind) {
    case Observable::Kind::VarQ: return squeeze(moments, obs.modes).var_q;
    case Observable::Kind::VarP: return squeeze(moments, obs.modes).var_p;
    case Observable::Kind::Lambda: return squeeze(moments, obs.modes).lambda;
    case Observable::Kind::MeanW: return intensity_moments(moments, obs.modes).mean_W;
    case Observable::Kind::VarW: return intensity_moments(moments, obs.modes).var_W_N;
    case Observable::Kind::Fano: return intensity_moments(moments, obs.modes).fano;
    case Observable::Kind::ReducedMoment:
      return intensity_moments(moments, obs.modes).reduced_moment;
  }
  return std::nullopt;
}

}  // namespace pbg
