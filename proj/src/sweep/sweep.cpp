#include "pbg/sweep/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "pbg/core/error.hpp"

namespace pbg {

namespace {

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::vector<double> grid_point(const SweepSpec& spec, std::size_t flat) {
  std::vector<double> coords(spec.axes.size());
  for (std::size_t a = spec.axes.size(); a-- > 0;) {
    const auto n = static_cast<std::size_t>(spec.axes[a].steps);
    coords[a] = spec.axes[a].value(static_cast<int>(flat % n));
    flat /= n;
  }
  return coords;
}

std::string describe(const SweepSpec& spec, const std::vector<double>& coords) {
  std::string s;
  for (std::size_t a = 0; a < coords.size(); ++a)
    s += (a ? " " : "") + spec.axes[a].name + "=" + format(coords[a]);
  return s.empty() ? "base point" : s;
}

SweepRow evaluate_row(const SweepSpec& spec, std::size_t flat) {
  SweepRow row;
  row.coordinates = grid_point(spec, flat);
  row.values.assign(spec.observables.size(), std::nullopt);
  ModelPoint point = spec.base;
  try {
    for (std::size_t a = 0; a < spec.axes.size(); ++a)
      set_parameter(point, spec.axes[a].name, row.coordinates[a]);
    const PointResult r = evaluate_point(point, spec.solver);
    row.b4_residual = r.b4_residual;
    row.b4_scale = r.b4_scale;
    row.condition = r.map.backward_condition;
    for (std::size_t k = 0; k < spec.observables.size(); ++k)
      row.values[k] = evaluate_observable(r.moments, spec.observables[k]);
    row.status = r.within_tolerance(spec.solver) ? "ok" : "b4_tolerance";
  } catch (const Error& e) {
    row.status = "error";
    row.error = describe(spec, row.coordinates) + ": " + e.what();
  }
  return row;
}

std::size_t grid_size(const SweepSpec& spec) {
  std::size_t n = 1;
  for (const SweepAxis& a : spec.axes) n *= static_cast<std::size_t>(a.steps);
  return n;
}

}  // namespace

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status != "ok"; }));
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  SweepResult result{spec, std::vector<SweepRow>(grid_size(spec))};
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<std::size_t>(workers, result.rows.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < result.rows.size(); i = next++)
      result.rows[i] = evaluate_row(spec, i);
  };
  std::vector<std::jthread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return result;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  std::istringstream config(to_json(result.spec).dump(2));
  for (std::string line; std::getline(config, line);) out << "# " << line << '\n';

  const SweepSpec& spec = result.spec;
  std::vector<std::string> header;
  for (const SweepAxis& a : spec.axes) header.push_back(a.name);
  for (const Observable& o : spec.observables) header.push_back(o.column());
  for (const char* c : {"b4_residual", "b4_scale", "condition", "status", "error"}) header.emplace_back(c);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';

  for (const SweepRow& row : result.rows) {
    for (double c : row.coordinates) out << format(c) << ',';
    for (const auto& v : row.values) out << (v ? format(*v) : "undefined") << ',';
    out << format(row.b4_residual) << ',' << format(row.b4_scale) << ',' << format(row.condition) << ',' << row.status << ','
        << (row.error.empty() ? "" : quoted(row.error)) << '\n';
  }
}

void write_plot_script(std::ostream& out, const std::vector<SweepResult>& panels,
                       const std::vector<std::string>& csv_names) {
  out << "#!/usr/bin/env python3\n"
         "import csv, os, sys\n"
         "import matplotlib\n"
         "matplotlib.use('Agg')\n"
         "import matplotlib.pyplot as plt\n\n"
         "here = os.path.dirname(os.path.abspath(__file__))\n\n"
         "def load(name):\n"
         "    with open(os.path.join(here, name)) as f:\n"
         "        rows = list(csv.reader(l for l in f if not l.startswith('#')))\n"
         "    head, body = rows[0], rows[1:]\n"
         "    def num(x):\n"
         "        try:\n"
         "            return float(x)\n"
         "        except ValueError:\n"
         "            return float('nan')\n"
         "    return {h: [num(r[i]) for r in body] for i, h in enumerate(head)}\n\n"
         "panels = [\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const SweepSpec& s = panels[p].spec;
    out << "    ('" << csv_names[p] << "', [";
    for (const SweepAxis& a : s.axes) out << "'" << a.name << "', ";
    out << "], [";
    for (const Observable& o : s.observables) out << "'" << o.column() << "', ";
    out << "]),\n";
  }
  out << "]\n\n"
         "fig, axes = plt.subplots(len(panels), 1, figsize=(7, 4 * len(panels)), squeeze=False)\n"
         "for ax, (name, axis_names, columns) in zip(axes[:, 0], panels):\n"
         "    d = load(name)\n"
         "    if len(axis_names) == 1:\n"
         "        for c in columns:\n"
         "            ax.plot(d[axis_names[0]], d[c], label=c)\n"
         "        ax.set_xlabel(axis_names[0])\n"
         "        ax.legend()\n"
         "    elif len(axis_names) == 2:\n"
         "        x, y = d[axis_names[0]], d[axis_names[1]]\n"
         "        ny = len(set(y))\n"
         "        nx = len(x) // ny\n"
         "        import numpy as np\n"
         "        z = np.array(d[columns[0]]).reshape(nx, ny)\n"
         "        im = ax.pcolormesh(np.array(y[:ny]), np.array(x[::ny]), z, shading='auto')\n"
         "        fig.colorbar(im, ax=ax, label=columns[0])\n"
         "        ax.set_xlabel(axis_names[1])\n"
         "        ax.set_ylabel(axis_names[0])\n"
         "    ax.set_title(name)\n"
         "fig.tight_layout()\n"
         "out = os.path.join(here, os.path.splitext(os.path.basename(__file__))[0] + '.png')\n"
         "fig.savefig(out if len(sys.argv) < 2 else sys.argv[1])\n";
}

std::vector<SweepResult> run_figure(const FigurePreset& preset, const FigureRunOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  std::vector<SweepResult> results;
  std::vector<std::string> names;
  for (SweepSpec spec : preset.panels) {
    if (options.steps_per_mm) spec.solver.steps_per_mm = *options.steps_per_mm;
    if (options.b4_tolerance) spec.solver.b4_tolerance = *options.b4_tolerance;
    results.push_back(run_sweep(spec, options.workers));
    names.push_back(spec.name + ".csv");
    std::ofstream csv(options.out_dir / names.back());
    if (!csv) throw InvalidInput("cannot write " + (options.out_dir / names.back()).string());
    write_sweep_csv(csv, results.back());
  }
  if (options.plot_script) {
    char file[32];
    std::snprintf(file, sizeof file, "fig%02d_plot.py", preset.id);
    std::ofstream py(options.out_dir / file);
    write_plot_script(py, results, names);
  }
  return results;
}

}  // namespace pbg
