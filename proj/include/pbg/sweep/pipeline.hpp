#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pbg/classical/classical_fields.hpp"
#include "pbg/fluctuation/propagator.hpp"
#include "pbg/statistics/moments.hpp"

namespace pbg {

enum class ClassicalSolver { Analytic, Shooting };

std::string to_string(ClassicalSolver s);
ClassicalSolver parse_classical_solver(std::string_view text);

struct SolverOptions {
  ClassicalSolver classical = ClassicalSolver::Analytic;
  double steps_per_mm = 1000;
  int min_steps = 100;
  double b4_tolerance = 1e-8;            // absolute
  double b4_relative_tolerance = 1e-16;  // times PointResult::b4_scale
  double max_condition = 1e12;
  ShootingOptions shooting;
};

/// Everything that defines one evaluation of the model.
struct ModelPoint {
  WaveguideConfig waveguide;
  ClassicalBoundary boundary;
  InputStates inputs{};
};

struct PointResult {
  ClassicalFieldProfile profile;
  TransferMatrix transfer;
  InputOutputMap map;
  GaussianMoments moments;
  double b4_residual = 0;
  // max(1, |u|^2, |v|^2) over the transfer blocks. The identities combine
  // products of that size, so rounding alone leaves a residual of eps * scale.
  double b4_scale = 1;

  bool within_tolerance(const SolverOptions& options) const {
    return b4_residual <= std::max(options.b4_tolerance, options.b4_relative_tolerance * b4_scale);
  }
};

ClassicalFieldProfile solve_profile(const ModelPoint& point, const SolverOptions& options);

/// Classical profile, transfer matrix, input-output map and output moments.
/// Library errors propagate unchanged.
PointResult evaluate_point(const ModelPoint& point, const SolverOptions& options = {});

/// One requested column, e.g. "lambda:sF,iF" or "fano:sB,iB".
struct Observable {
  enum class Kind { VarQ, VarP, Lambda, MeanW, VarW, Fano, ReducedMoment };
  Kind kind = Kind::Lambda;
  ModeSet modes;

  std::string name() const;    // "lambda:sF,iF"
  std::string column() const;  // "lambda_sF_iF", safe as a CSV header
  static Observable parse(std::string_view text);
};

/// Empty when undefined (fano or R_W with zero mean intensity).
std::optional<double> evaluate_observable(const GaussianMoments& moments, const Observable& obs);

}  // namespace pbg
