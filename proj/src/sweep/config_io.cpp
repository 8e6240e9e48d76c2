#include "pbg/sweep/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pbg/core/error.hpp"

namespace pbg {

using nlohmann::json;

namespace {

std::string child(const std::string& path, std::string_view key) {
  return path + "." + std::string(key);
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
}

void check_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ParseError(child(path, key), "unknown field");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "must be finite");
  return v;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

// number | [re, im] | {"abs": r, "arg": rad} | {"abs": r, "arg_pi": x}
cplx as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return as_number(j, path);
  if (j.is_array()) {
    if (j.size() != 2) throw ParseError(path, "complex array must be [re, im]");
    return {as_number(j[0], item(path, 0)), as_number(j[1], item(path, 1))};
  }
  if (j.is_object()) {
    check_keys(j, path, {"abs", "arg", "arg_pi"});
    if (!j.contains("abs")) throw ParseError(child(path, "abs"), "missing");
    if (j.contains("arg") && j.contains("arg_pi"))
      throw ParseError(path, "give either arg or arg_pi");
    const double r = as_number(j["abs"], child(path, "abs"));
    double phase = 0;
    if (j.contains("arg")) phase = as_number(j["arg"], child(path, "arg"));
    if (j.contains("arg_pi")) phase = kPi * as_number(j["arg_pi"], child(path, "arg_pi"));
    return std::polar(r, phase);
  }
  throw ParseError(path, "expected a number, [re, im] or {abs, arg}");
}

json complex_json(cplx v) {
  if (v.imag() == 0.0) return v.real();
  return json::array({v.real(), v.imag()});
}

void parse_waveguide(const json& j, const std::string& path, WaveguideConfig& w) {
  check_keys(j, path,
             {"L", "K_s", "K_i", "K_F", "K_B", "delta_s", "delta_i", "delta_F", "delta_B"});
  if (j.contains("L")) w.length = as_number(j["L"], child(path, "L"));
  if (j.contains("K_s")) w.linear_signal = as_complex(j["K_s"], child(path, "K_s"));
  if (j.contains("K_i")) w.linear_idler = as_complex(j["K_i"], child(path, "K_i"));
  if (j.contains("K_F")) w.nonlinear_forward = as_complex(j["K_F"], child(path, "K_F"));
  if (j.contains("K_B")) w.nonlinear_backward = as_complex(j["K_B"], child(path, "K_B"));
  if (j.contains("delta_s")) w.mismatch_signal = as_number(j["delta_s"], child(path, "delta_s"));
  if (j.contains("delta_i")) w.mismatch_idler = as_number(j["delta_i"], child(path, "delta_i"));
  if (j.contains("delta_F"))
    w.mismatch_forward = as_number(j["delta_F"], child(path, "delta_F"));
  if (j.contains("delta_B"))
    w.mismatch_backward = as_number(j["delta_B"], child(path, "delta_B"));
  if (!(w.length > 0)) throw ParseError(child(path, "L"), "length must be positive");
}

void parse_boundary(const json& j, const std::string& path, ClassicalBoundary& b) {
  check_keys(j, path, {"A_sF0", "A_iF0", "A_pF0"});
  if (j.contains("A_sF0")) b.signal_forward = as_complex(j["A_sF0"], child(path, "A_sF0"));
  if (j.contains("A_iF0")) b.idler_forward = as_complex(j["A_iF0"], child(path, "A_iF0"));
  if (j.contains("A_pF0")) b.pump_forward = as_complex(j["A_pF0"], child(path, "A_pF0"));
}

void parse_inputs(const json& j, const std::string& path, InputStates& inputs) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    const std::string p = child(path, key);
    ModeId m;
    try {
      m = parse_mode(key);
    } catch (const InvalidInput& e) {
      throw ParseError(p, e.what());
    }
    InputModeState& s = inputs[index(m)];
    check_keys(value, p, {"xi", "r", "theta", "n_ch"});
    if (value.contains("xi")) s.xi = as_complex(value["xi"], child(p, "xi"));
    if (value.contains("r")) s.r = as_number(value["r"], child(p, "r"));
    if (value.contains("theta")) s.theta = as_number(value["theta"], child(p, "theta"));
    if (value.contains("n_ch")) s.n_ch = as_number(value["n_ch"], child(p, "n_ch"));
    if (s.r < 0) throw ParseError(child(p, "r"), "squeeze parameter must be >= 0");
    if (s.n_ch < 0) throw ParseError(child(p, "n_ch"), "chaotic photon number must be >= 0");
  }
}

void parse_solver(const json& j, const std::string& path, SolverOptions& o) {
  check_keys(j, path,
             {"classical", "steps_per_mm", "min_steps", "b4_tolerance", "b4_relative_tolerance",
              "max_condition",
              "shooting_max_iterations", "shooting_tolerance"});
  if (j.contains("classical")) {
    try {
      o.classical = parse_classical_solver(as_string(j["classical"], child(path, "classical")));
    } catch (const InvalidInput& e) {
      throw ParseError(child(path, "classical"), e.what());
    }
  }
  if (j.contains("steps_per_mm")) {
    o.steps_per_mm = as_number(j["steps_per_mm"], child(path, "steps_per_mm"));
    if (!(o.steps_per_mm > 0)) throw ParseError(child(path, "steps_per_mm"), "must be positive");
  }
  if (j.contains("min_steps")) {
    o.min_steps = as_int(j["min_steps"], child(path, "min_steps"));
    if (o.min_steps < 100) throw ParseError(child(path, "min_steps"), "must be >= 100");
  }
  if (j.contains("b4_tolerance"))
    o.b4_tolerance = as_number(j["b4_tolerance"], child(path, "b4_tolerance"));
  if (j.contains("b4_relative_tolerance"))
    o.b4_relative_tolerance =
        as_number(j["b4_relative_tolerance"], child(path, "b4_relative_tolerance"));
  if (j.contains("max_condition"))
    o.max_condition = as_number(j["max_condition"], child(path, "max_condition"));
  if (j.contains("shooting_max_iterations"))
    o.shooting.max_iterations =
        as_int(j["shooting_max_iterations"], child(path, "shooting_max_iterations"));
  if (j.contains("shooting_tolerance"))
    o.shooting.tolerance = as_number(j["shooting_tolerance"], child(path, "shooting_tolerance"));
}

AxisScale parse_scale(const json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "linear") return AxisScale::Linear;
  if (s == "log") return AxisScale::Log;
  throw ParseError(path, "scale must be linear or log");
}

void parse_sweep_block(const json& j, const std::string& path, SweepSpec& spec) {
  check_keys(j, path, {"axes", "observables", "seed"});
  if (j.contains("axes")) {
    const json& axes = j["axes"];
    const std::string ap = child(path, "axes");
    if (!axes.is_array()) throw ParseError(ap, "expected an array");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string p = item(ap, i);
      check_keys(axes[i], p, {"name", "start", "stop", "steps", "scale"});
      for (const char* key : {"name", "start", "stop", "steps"})
        if (!axes[i].contains(key)) throw ParseError(child(p, key), "missing");
      SweepAxis a;
      a.name = as_string(axes[i]["name"], child(p, "name"));
      a.start = as_number(axes[i]["start"], child(p, "start"));
      a.stop = as_number(axes[i]["stop"], child(p, "stop"));
      a.steps = as_int(axes[i]["steps"], child(p, "steps"));
      if (axes[i].contains("scale")) a.scale = parse_scale(axes[i]["scale"], child(p, "scale"));
      spec.axes.push_back(a);
    }
  }
  if (j.contains("observables")) {
    const json& obs = j["observables"];
    const std::string op = child(path, "observables");
    if (!obs.is_array()) throw ParseError(op, "expected an array");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      try {
        spec.observables.push_back(Observable::parse(as_string(obs[i], item(op, i))));
      } catch (const InvalidInput& e) {
        throw ParseError(item(op, i), e.what());
      }
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError(child(path, "seed"), "expected an unsigned integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
}

void check_schema(const json& doc, const std::string& path) {
  require_object(doc, path);
  const std::string p = child(path, "schema_version");
  if (!doc.contains("schema_version")) throw ParseError(p, "missing");
  if (as_int(doc["schema_version"], p) != kSchemaVersion)
    throw ParseError(p, "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
}

void parse_model(const json& j, const std::string& path, SweepSpec& spec) {
  if (j.contains("waveguide"))
    parse_waveguide(j["waveguide"], child(path, "waveguide"), spec.base.waveguide);
  if (j.contains("boundary"))
    parse_boundary(j["boundary"], child(path, "boundary"), spec.base.boundary);
  if (j.contains("inputs")) parse_inputs(j["inputs"], child(path, "inputs"), spec.base.inputs);
  if (j.contains("solver")) parse_solver(j["solver"], child(path, "solver"), spec.solver);
}

// Re-raises validation errors of a finished spec with the document prefix.
void validate_under(const SweepSpec& spec, const std::string& path) {
  try {
    spec.validate();
  } catch (const ParseError& e) {
    const std::string inner = e.path();
    throw ParseError(path + inner.substr(1), std::string(e.what()).substr(inner.size() + 2));
  }
}

// ---- parameter table -------------------------------------------------------

cplx rescaled(cplx current, double value) {
  const double r = std::abs(current);
  return r > 0 ? current * (value / r) : cplx(value);
}

double signed_modulus(cplx v) { return std::abs(v); }

struct Parameter {
  std::string name;
  std::function<void(ModelPoint&, double)> set;
  std::function<double(const ModelPoint&)> get;
};

const std::vector<Parameter>& parameter_table() {
  static const std::vector<Parameter> table = [] {
    std::vector<Parameter> t;
    auto real = [&t](std::string name, double WaveguideConfig::*field) {
      t.push_back({name, [field](ModelPoint& p, double v) { p.waveguide.*field = v; },
                   [field](const ModelPoint& p) { return p.waveguide.*field; }});
    };
    auto complex = [&t](std::string name, cplx WaveguideConfig::*field) {
      t.push_back({name,
                   [field](ModelPoint& p, double v) {
                     p.waveguide.*field = rescaled(p.waveguide.*field, v);
                   },
                   [field](const ModelPoint& p) { return signed_modulus(p.waveguide.*field); }});
    };
    auto amplitude = [&t](std::string name, cplx ClassicalBoundary::*field) {
      t.push_back({name,
                   [field](ModelPoint& p, double v) {
                     p.boundary.*field = rescaled(p.boundary.*field, v);
                   },
                   [field](const ModelPoint& p) { return signed_modulus(p.boundary.*field); }});
    };
    real("L", &WaveguideConfig::length);
    complex("K_s", &WaveguideConfig::linear_signal);
    complex("K_i", &WaveguideConfig::linear_idler);
    t.push_back({"K_l",
                 [](ModelPoint& p, double v) {
                   p.waveguide.linear_signal = rescaled(p.waveguide.linear_signal, v);
                   p.waveguide.linear_idler = rescaled(p.waveguide.linear_idler, v);
                 },
                 [](const ModelPoint& p) { return std::abs(p.waveguide.linear_signal); }});
    complex("K_F", &WaveguideConfig::nonlinear_forward);
    complex("K_B", &WaveguideConfig::nonlinear_backward);
    t.push_back({"K_nl",
                 [](ModelPoint& p, double v) {
                   p.waveguide.nonlinear_forward = rescaled(p.waveguide.nonlinear_forward, v);
                   p.waveguide.nonlinear_backward = rescaled(p.waveguide.nonlinear_backward, v);
                 },
                 [](const ModelPoint& p) { return std::abs(p.waveguide.nonlinear_forward); }});
    real("delta_s", &WaveguideConfig::mismatch_signal);
    real("delta_i", &WaveguideConfig::mismatch_idler);
    real("delta_F", &WaveguideConfig::mismatch_forward);
    real("delta_B", &WaveguideConfig::mismatch_backward);
    t.push_back({"delta_nl",
                 [](ModelPoint& p, double v) {
                   p.waveguide.mismatch_forward = v;
                   p.waveguide.mismatch_backward = v;
                 },
                 [](const ModelPoint& p) { return p.waveguide.mismatch_forward; }});
    amplitude("A_sF0", &ClassicalBoundary::signal_forward);
    amplitude("A_iF0", &ClassicalBoundary::idler_forward);
    amplitude("A_pF0", &ClassicalBoundary::pump_forward);
    for (ModeId m : kAllModes) {
      const int k = index(m);
      const std::string suffix = "_" + std::string(to_string(m));
      t.push_back({"xi" + suffix,
                   [k](ModelPoint& p, double v) { p.inputs[k].xi = rescaled(p.inputs[k].xi, v); },
                   [k](const ModelPoint& p) { return std::abs(p.inputs[k].xi); }});
      t.push_back({"phi" + suffix,
                   [k](ModelPoint& p, double v) {
                     p.inputs[k].xi = std::polar(std::abs(p.inputs[k].xi), kPi * v);
                   },
                   [k](const ModelPoint& p) { return std::arg(p.inputs[k].xi) / kPi; }});
      t.push_back({"r" + suffix, [k](ModelPoint& p, double v) { p.inputs[k].r = v; },
                   [k](const ModelPoint& p) { return p.inputs[k].r; }});
      t.push_back({"theta" + suffix, [k](ModelPoint& p, double v) { p.inputs[k].theta = v; },
                   [k](const ModelPoint& p) { return p.inputs[k].theta; }});
      t.push_back({"n_ch" + suffix, [k](ModelPoint& p, double v) { p.inputs[k].n_ch = v; },
                   [k](const ModelPoint& p) { return p.inputs[k].n_ch; }});
    }
    return t;
  }();
  return table;
}

const Parameter& find_parameter(std::string_view name) {
  for (const Parameter& p : parameter_table())
    if (p.name == name) return p;
  throw InvalidInput("unknown parameter '" + std::string(name) + "'");
}

json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string(), "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(file.string(), e.what());
  }
}

}  // namespace

double SweepAxis::value(int i) const {
  const double t = steps > 1 ? static_cast<double>(i) / (steps - 1) : 0.0;
  if (scale == AxisScale::Log) return start * std::pow(stop / start, t);
  return start + (stop - start) * t;
}

void SweepSpec::validate() const {
  if (axes.size() > 2) throw ParseError("$.sweep.axes", "at most two swept parameters");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string p = item("$.sweep.axes", i);
    if (!is_parameter(axes[i].name)) throw ParseError(child(p, "name"), "unknown parameter '" + axes[i].name + "'");
    if (axes[i].steps < 2) throw ParseError(child(p, "steps"), "must be >= 2");
    if (axes[i].scale == AxisScale::Log && !(axes[i].start > 0 && axes[i].stop > 0))
      throw ParseError(child(p, "scale"), "log axis needs positive start and stop");
    for (std::size_t k = 0; k < i; ++k)
      if (axes[k].name == axes[i].name) throw ParseError(child(p, "name"), "duplicate axis");
  }
  if (observables.empty()) throw ParseError("$.sweep.observables", "at least one observable");
  try {
    base.waveguide.validate();
  } catch (const InvalidInput& e) {
    throw ParseError("$.waveguide", e.what());
  }
}

void set_parameter(ModelPoint& point, std::string_view name, double value) {
  find_parameter(name).set(point, value);
}

double get_parameter(const ModelPoint& point, std::string_view name) {
  return find_parameter(name).get(point);
}

bool is_parameter(std::string_view name) {
  for (const Parameter& p : parameter_table())
    if (p.name == name) return true;
  return false;
}

const std::vector<std::string>& parameter_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const Parameter& p : parameter_table()) n.push_back(p.name);
    return n;
  }();
  return names;
}

SweepSpec parse_sweep(const json& doc, const std::string& path) {
  check_schema(doc, path);
  check_keys(doc, path,
             {"schema_version", "name", "description", "waveguide", "boundary", "inputs", "solver",
              "sweep"});
  SweepSpec spec;
  if (doc.contains("name")) spec.name = as_string(doc["name"], child(path, "name"));
  if (doc.contains("description"))
    spec.description = as_string(doc["description"], child(path, "description"));
  parse_model(doc, path, spec);
  if (doc.contains("sweep")) parse_sweep_block(doc["sweep"], child(path, "sweep"), spec);
  validate_under(spec, path);
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& file) { return parse_sweep(read_json(file)); }

FigurePreset parse_figure(const json& doc, const std::string& path) {
  check_schema(doc, path);
  check_keys(doc, path, {"schema_version", "figure", "title", "base", "panels"});
  FigurePreset f;
  if (!doc.contains("figure")) throw ParseError(child(path, "figure"), "missing");
  f.id = as_int(doc["figure"], child(path, "figure"));
  if (f.id < 1 || f.id > 16) throw ParseError(child(path, "figure"), "must be 1..16");
  if (doc.contains("title")) f.title = as_string(doc["title"], child(path, "title"));

  SweepSpec base;
  if (doc.contains("base")) {
    const std::string bp = child(path, "base");
    check_keys(doc["base"], bp, {"waveguide", "boundary", "inputs", "solver"});
    parse_model(doc["base"], bp, base);
  }
  const std::string pp = child(path, "panels");
  if (!doc.contains("panels") || !doc["panels"].is_array() || doc["panels"].empty())
    throw ParseError(pp, "expected a non-empty array");
  char id[8];
  std::snprintf(id, sizeof id, "%02d", f.id);
  for (std::size_t i = 0; i < doc["panels"].size(); ++i) {
    const json& panel = doc["panels"][i];
    const std::string p = item(pp, i);
    check_keys(panel, p, {"name", "description", "set", "sweep"});
    SweepSpec spec = base;
    spec.name = std::string("fig") + id;
    if (panel.contains("name")) spec.name += "_" + as_string(panel["name"], child(p, "name"));
    if (panel.contains("description"))
      spec.description = as_string(panel["description"], child(p, "description"));
    if (panel.contains("set")) {
      const std::string sp = child(p, "set");
      require_object(panel["set"], sp);
      for (const auto& [name, value] : panel["set"].items()) {
        try {
          set_parameter(spec.base, name, as_number(value, child(sp, name)));
        } catch (const InvalidInput& e) {
          throw ParseError(child(sp, name), e.what());
        }
      }
    }
    if (!panel.contains("sweep")) throw ParseError(child(p, "sweep"), "missing");
    parse_sweep_block(panel["sweep"], child(p, "sweep"), spec);
    validate_under(spec, p);
    f.panels.push_back(std::move(spec));
  }
  return f;
}

FigurePreset load_figure(const std::filesystem::path& file) {
  return parse_figure(read_json(file));
}

json to_json(const SweepSpec& spec) {
  const WaveguideConfig& w = spec.base.waveguide;
  const ClassicalBoundary& b = spec.base.boundary;
  json inputs = json::object();
  for (ModeId m : kAllModes) {
    const InputModeState& s = spec.base.inputs[index(m)];
    inputs[std::string(to_string(m))] = {
        {"xi", complex_json(s.xi)}, {"r", s.r}, {"theta", s.theta}, {"n_ch", s.n_ch}};
  }
  json axes = json::array();
  for (const SweepAxis& a : spec.axes)
    axes.push_back({{"name", a.name},
                    {"start", a.start},
                    {"stop", a.stop},
                    {"steps", a.steps},
                    {"scale", a.scale == AxisScale::Log ? "log" : "linear"}});
  json observables = json::array();
  for (const Observable& o : spec.observables) observables.push_back(o.name());
  return {
      {"schema_version", kSchemaVersion},
      {"name", spec.name},
      {"description", spec.description},
      {"waveguide",
       {{"L", w.length},
        {"K_s", complex_json(w.linear_signal)},
        {"K_i", complex_json(w.linear_idler)},
        {"K_F", complex_json(w.nonlinear_forward)},
        {"K_B", complex_json(w.nonlinear_backward)},
        {"delta_s", w.mismatch_signal},
        {"delta_i", w.mismatch_idler},
        {"delta_F", w.mismatch_forward},
        {"delta_B", w.mismatch_backward}}},
      {"boundary",
       {{"A_sF0", complex_json(b.signal_forward)},
        {"A_iF0", complex_json(b.idler_forward)},
        {"A_pF0", complex_json(b.pump_forward)}}},
      {"inputs", inputs},
      {"solver",
       {{"classical", to_string(spec.solver.classical)},
        {"steps_per_mm", spec.solver.steps_per_mm},
        {"min_steps", spec.solver.min_steps},
        {"b4_tolerance", spec.solver.b4_tolerance},
        {"b4_relative_tolerance", spec.solver.b4_relative_tolerance},
        {"max_condition", spec.solver.max_condition},
        {"shooting_max_iterations", spec.solver.shooting.max_iterations},
        {"shooting_tolerance", spec.solver.shooting.tolerance}}},
      {"sweep", {{"axes", axes}, {"observables", observables}, {"seed", spec.seed}}},
  };
}

}  // namespace pbg
