#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "pbg/sweep/pipeline.hpp"

namespace pbg {

inline constexpr int kSchemaVersion = 1;

enum class AxisScale { Linear, Log };

struct SweepAxis {
  std::string name;  // a parameter accepted by set_parameter()
  double start = 0;
  double stop = 1;
  int steps = 2;
  AxisScale scale = AxisScale::Linear;

  double value(int i) const;
};

/// Base point plus up to two swept parameters and the requested columns.
struct SweepSpec {
  std::string name;
  std::string description;
  ModelPoint base;
  SolverOptions solver;
  std::vector<SweepAxis> axes;
  std::vector<Observable> observables;
  std::uint64_t seed = 1;

  /// Throws ParseError with a field path on any violation.
  void validate() const;
};

/// A figure: one or more panels, each a full sweep.
struct FigurePreset {
  int id = 0;
  std::string title;
  std::vector<SweepSpec> panels;
};

/// Named scalar parameters of a model point. Complex quantities are scaled:
/// the new value keeps the phase of the current one (phase 0 if it is zero),
/// so negative values flip the sign. phi_X sets arg(xi_X) in units of pi.
///   L, K_s, K_i, K_l (= K_s = K_i), K_F, K_B, K_nl (= K_F = K_B),
///   delta_s, delta_i, delta_F, delta_B, delta_nl (= delta_F = delta_B),
///   A_sF0, A_iF0, A_pF0, and per mode X: xi_X, phi_X, r_X, theta_X, n_ch_X.
void set_parameter(ModelPoint& point, std::string_view name, double value);
double get_parameter(const ModelPoint& point, std::string_view name);
bool is_parameter(std::string_view name);
const std::vector<std::string>& parameter_names();

SweepSpec parse_sweep(const nlohmann::json& document, const std::string& path = "$");
SweepSpec load_sweep(const std::filesystem::path& file);
FigurePreset parse_figure(const nlohmann::json& document, const std::string& path = "$");
FigurePreset load_figure(const std::filesystem::path& file);

/// Fully resolved form, suitable for the CSV header and for re-loading.
nlohmann::json to_json(const SweepSpec& spec);

}  // namespace pbg
