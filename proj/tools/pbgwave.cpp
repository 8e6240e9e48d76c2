// Command-line front end: figure presets, parameter sweeps, invariant checks.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pbg/core/error.hpp"
#include "pbg/core/units.hpp"
#include "pbg/sweep/checks.hpp"
#include "pbg/sweep/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // solver error rows, B4 tolerance misses, failed checks
constexpr int kExitUsage = 2;    // bad arguments or configuration

constexpr const char* kUnits = R"(Units (used verbatim in configs, presets and CSV output):
  length L                        mm
  couplings K_s, K_i, K_F, K_B    1/mm (K_F, K_B per 10^6 V/m of amplitude)
  mismatches delta_*              1/mm
  mean fields A_*                 10^6 V/m   (A_pF0 = 10 means 10^7 V/m)
  corrections xi_*                10 V/m     (|xi|^2 is a mean photon number)
  phi_*                           units of pi; theta_* in radians
Use `pbgwave convert 2 mm m` to rescale a value.)";

std::filesystem::path preset_dir() {
  if (const char* env = std::getenv("PBG_PRESETS")) return env;
  return PBG_PRESET_DIR;
}

void report_rows(const pbg::SweepResult& r) {
  for (const pbg::SweepRow& row : r.rows) {
    if (row.status == "error") std::cerr << r.spec.name << ": " << row.error << '\n';
  }
  const std::size_t misses = static_cast<std::size_t>(std::count_if(
      r.rows.begin(), r.rows.end(), [](const pbg::SweepRow& x) { return x.status == "b4_tolerance"; }));
  if (misses)
    std::cerr << r.spec.name << ": " << misses << " point(s) with b4_residual above max("
              << r.spec.solver.b4_tolerance << ", " << r.spec.solver.b4_relative_tolerance
              << " * b4_scale); try a larger --steps\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum statistics of counter-propagating parametric down-conversion\n"
               "in a waveguide with a Bragg grating.\n\n" +
               std::string(kUnits)};
  app.require_subcommand(1);

  int figure_id = 0;
  pbg::FigureRunOptions fig;
  std::optional<double> steps, tol;
  bool no_plot = false;
  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset (1..16) as CSV + plot script");
  figure->add_option("id", figure_id, "Figure number")->required()->check(CLI::Range(1, 16));
  figure->add_option("--out", fig.out_dir, "Output directory")->capture_default_str();
  figure->add_option("--steps", steps, "Integration steps per mm (default 1000)");
  figure->add_option("--tol", tol, "B4 residual tolerance per point (default 1e-8)");
  figure->add_option("--workers", fig.workers, "Worker threads (0 = all cores)");
  figure->add_flag("--no-plot", no_plot, "Skip the matplotlib script");

  std::string sweep_file, sweep_out;
  int sweep_workers = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a JSON config");
  sweep->add_option("config", sweep_file, "Sweep config (schema_version 1)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "CSV file (default: stdout)");
  sweep->add_option("--workers", sweep_workers, "Worker threads (0 = all cores)");

  std::string level = "fast";
  auto* check = app.add_subcommand("check", "Run the invariant suites and print a summary");
  check->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();

  std::string export_file;
  std::filesystem::path export_dir = ".";
  auto* exporter = app.add_subcommand("export", "Write profile.csv, transfer.csv and config.json for the base point of a config");
  exporter->add_option("config", export_file, "Sweep config")->required()->check(CLI::ExistingFile);
  exporter->add_option("--out", export_dir, "Output directory")->capture_default_str();

  double value = 0;
  std::string from, to;
  auto* convert = app.add_subcommand("convert", "Rescale a value between units (mm, m, 1e6V/m, 10V/m, V/m, SI)");
  convert->add_option("value", value)->required();
  convert->add_option("from", from)->required();
  convert->add_option("to", to)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*figure) {
      fig.steps_per_mm = steps;
      fig.b4_tolerance = tol;
      fig.plot_script = !no_plot;
      char name[32];
      std::snprintf(name, sizeof name, "fig%02d.json", figure_id);
      const pbg::FigurePreset preset = pbg::load_figure(preset_dir() / name);
      std::size_t failures = 0;
      for (const pbg::SweepResult& r : pbg::run_figure(preset, fig)) {
        report_rows(r);
        failures += r.failures();
      }
      return failures ? kExitFailure : kExitOk;
    }
    if (*sweep) {
      const pbg::SweepResult r = pbg::run_sweep(pbg::load_sweep(sweep_file), sweep_workers);
      if (sweep_out.empty()) {
        pbg::write_sweep_csv(std::cout, r);
      } else {
        std::ofstream out(sweep_out);
        if (!out) throw pbg::InvalidInput("cannot write " + sweep_out);
        pbg::write_sweep_csv(out, r);
      }
      report_rows(r);
      return r.failures() ? kExitFailure : kExitOk;
    }
    if (*check) {
      const pbg::CheckReport report =
          pbg::run_checks(level == "full" ? pbg::CheckLevel::Full : pbg::CheckLevel::Fast);
      pbg::print_report(std::cout, report);
      return report.passed() ? kExitOk : kExitFailure;
    }
    if (*exporter) {
      const pbg::SweepSpec spec = pbg::load_sweep(export_file);
      const pbg::PointResult r = pbg::evaluate_point(spec.base, spec.solver);
      std::filesystem::create_directories(export_dir);
      std::ofstream profile(export_dir / "profile.csv"), transfer(export_dir / "transfer.csv"),
          config(export_dir / "config.json");
      pbg::write_profile_csv(profile, r.profile);
      pbg::write_matrix_csv(transfer, r.transfer.matrix);
      config << pbg::to_json(spec).dump(2) << '\n';
      std::cerr << "b4_residual " << r.b4_residual << '\n';
      return r.within_tolerance(spec.solver) ? kExitOk : kExitFailure;
    }
    if (*convert) {
      std::printf("%.12g\n", pbg::rescale_units(value, from, to));
      return kExitOk;
    }
  } catch (const pbg::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pbg::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const pbg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
