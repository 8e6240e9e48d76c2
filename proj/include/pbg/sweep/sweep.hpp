#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pbg/sweep/config_io.hpp"

namespace pbg {

struct SweepRow {
  std::vector<double> coordinates;            // one per axis
  std::vector<std::optional<double>> values;  // one per observable
  double b4_residual = 0;
  double b4_scale = 0;
  double condition = 0;
  std::string status;  // ok | b4_tolerance | error
  std::string error;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;  // grid order, last axis fastest

  std::size_t failures() const;
};

/// Evaluates every grid point on `workers` threads (0 = hardware concurrency).
/// Row order follows the grid index regardless of completion order.
SweepResult run_sweep(const SweepSpec& spec, int workers = 0);

/// `#` lines with the resolved config, a header row, one row per grid point.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Standalone matplotlib script plotting the given CSV files.
void write_plot_script(std::ostream& out, const std::vector<SweepResult>& panels,
                       const std::vector<std::string>& csv_names);

struct FigureRunOptions {
  std::filesystem::path out_dir = ".";
  std::optional<double> steps_per_mm;
  std::optional<double> b4_tolerance;
  int workers = 0;
  bool plot_script = true;
};

/// Runs all panels of a preset; writes figNN[_panel].csv and figNN_plot.py.
std::vector<SweepResult> run_figure(const FigurePreset& preset, const FigureRunOptions& options);

}  // namespace pbg
