#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "darkpassage/cli.hpp"

namespace darkpassage::cli {

namespace {

using json = nlohmann::json;

const std::set<std::string> kTopKeys{
    "schema_version", "experiment", "sweep_of",     "axes",         "G",           "sigma",      "delay",
    "pad",            "t0",         "M",            "straddle_ramp", "n",          "N",          "p",
    "phi",            "axis",       "alpha",        "beta",         "gamma",       "segment_gap", "K",
    "L",              "scheme",     "qubit",        "tolerance",    "sample_stride", "pump_scale", "stokes_scale",
    "pump_shift",     "stokes_shift", "backward",   "output"};
const std::set<std::string> kQubitKeys{"alpha_re", "alpha_im", "beta_re", "beta_im"};
const std::set<std::string> kOutputKeys{"summary", "trace", "table"};
const std::set<std::string> kAxisKeys{"name", "values"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ValidationError("config: unknown key '" + k + "' in " + where);
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ValidationError("config: '" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError("config: '" + key + "' must be finite");
  return v;
}

std::size_t count(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ValidationError("config: '" + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) throw ValidationError("config: '" + key + "' must be a string");
  return j.get<std::string>();
}

void apply_physics(const json& doc, ExperimentParams& e) {
  TransferParams& t = e.transfer;
  auto opt = [&](const char* key, auto&& setter) {
    if (doc.contains(key)) setter(doc.at(key));
  };
  opt("G", [&](const json& j) { t.G = number(j, "G"); });
  opt("sigma", [&](const json& j) { t.sigma = number(j, "sigma"); });
  opt("delay", [&](const json& j) { t.delay = number(j, "delay"); });
  opt("pad", [&](const json& j) { t.pad = number(j, "pad"); });
  opt("t0", [&](const json& j) { t.t0 = number(j, "t0"); });
  opt("M", [&](const json& j) { t.M = number(j, "M"); });
  opt("straddle_ramp", [&](const json& j) { t.straddle_ramp = number(j, "straddle_ramp"); });
  opt("tolerance", [&](const json& j) { t.tolerance = number(j, "tolerance"); });
  opt("sample_stride", [&](const json& j) { t.sample_stride = number(j, "sample_stride"); });
  opt("pump_scale", [&](const json& j) { t.pump_scale = number(j, "pump_scale"); });
  opt("stokes_scale", [&](const json& j) { t.stokes_scale = number(j, "stokes_scale"); });
  opt("pump_shift", [&](const json& j) { t.pump_shift = number(j, "pump_shift"); });
  opt("stokes_shift", [&](const json& j) { t.stokes_shift = number(j, "stokes_shift"); });
  opt("backward", [&](const json& j) {
    if (!j.is_boolean()) throw ValidationError("config: 'backward' must be a boolean");
    t.backward = j.get<bool>();
  });
  opt("n", [&](const json& j) { e.n = count(j, "n"); });
  opt("N", [&](const json& j) { e.N = count(j, "N"); });
  opt("p", [&](const json& j) { e.p = number(j, "p"); });
  opt("phi", [&](const json& j) { e.phi = number(j, "phi"); });
  opt("alpha", [&](const json& j) { e.alpha = number(j, "alpha"); });
  opt("beta", [&](const json& j) { e.beta = number(j, "beta"); });
  opt("gamma", [&](const json& j) { e.gamma = number(j, "gamma"); });
  opt("segment_gap", [&](const json& j) { e.segment_gap = number(j, "segment_gap"); });
  opt("K", [&](const json& j) { e.K = number(j, "K"); });
  opt("L", [&](const json& j) { e.L = number(j, "L"); });
  opt("axis", [&](const json& j) {
    const std::string a = text(j, "axis");
    if (a == "z" || a == "Z") e.axis = Axis::Z;
    else if (a == "x" || a == "X") e.axis = Axis::X;
    else throw ValidationError("config: 'axis' must be \"z\" or \"x\"");
  });
  opt("scheme", [&](const json& j) {
    const std::string s = text(j, "scheme");
    e.darkstate_alternating = s == "alternating";
    e.darkstate_straddle = s == "straddling";
    if (s != "three_level" && s != "alternating" && s != "straddling")
      throw ValidationError("config: 'scheme' must be three_level, alternating or straddling");
  });
  opt("qubit", [&](const json& j) {
    if (!j.is_object()) throw ValidationError("config: 'qubit' must be an object");
    reject_unknown(j, kQubitKeys, "qubit");
    auto get = [&](const char* k) { return j.contains(k) ? number(j.at(k), std::string("qubit.") + k) : 0.0; };
    e.qubit = QubitState(cplx(get("alpha_re"), get("alpha_im")), cplx(get("beta_re"), get("beta_im")));
  });
}

}  // namespace

ExperimentConfig parse_config(const std::string& content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");
  reject_unknown(doc, kTopKeys, "config");

  if (!doc.contains("schema_version")) throw ValidationError("config: missing 'schema_version'");
  if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion)
    throw ValidationError("config: unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  if (!doc.contains("experiment")) throw ValidationError("config: missing 'experiment'");

  ExperimentConfig cfg;
  const std::string experiment = text(doc.at("experiment"), "experiment");
  cfg.is_sweep = experiment == "sweep";
  if (cfg.is_sweep) {
    if (!doc.contains("sweep_of")) throw ValidationError("config: sweep needs 'sweep_of'");
    cfg.params.kind = parse_experiment(text(doc.at("sweep_of"), "sweep_of"));
    if (!doc.contains("axes") || !doc.at("axes").is_array())
      throw ValidationError("config: sweep needs an 'axes' array");
    for (const auto& a : doc.at("axes")) {
      if (!a.is_object()) throw ValidationError("config: each axis must be an object");
      reject_unknown(a, kAxisKeys, "axes");
      if (!a.contains("name") || !a.contains("values") || !a.at("values").is_array())
        throw ValidationError("config: each axis needs 'name' and a 'values' array");
      SweepAxis axis{text(a.at("name"), "axes.name"), {}};
      for (const auto& v : a.at("values")) axis.values.push_back(number(v, "axes." + axis.name));
      cfg.grid.axes.push_back(std::move(axis));
    }
    cfg.grid.validate();
    const auto& known = sweepable_parameters();
    for (const auto& a : cfg.grid.axes)
      if (std::find(known.begin(), known.end(), a.name) == known.end())
        throw ValidationError("config: unknown sweep axis '" + a.name + "'");
  } else {
    if (doc.contains("sweep_of") || doc.contains("axes"))
      throw ValidationError("config: 'sweep_of' and 'axes' are only valid for experiment \"sweep\"");
    cfg.params.kind = parse_experiment(experiment);
  }

  apply_physics(doc, cfg.params);

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) throw ValidationError("config: 'output' must be an object");
    reject_unknown(o, kOutputKeys, "output");
    if (o.contains("summary")) cfg.summary_path = text(o.at("summary"), "output.summary");
    if (o.contains("trace")) cfg.trace_path = text(o.at("trace"), "output.trace");
    if (o.contains("table")) cfg.table_path = text(o.at("table"), "output.table");
  }
  if (cfg.is_sweep && cfg.trace_path) throw ValidationError("config: sweeps write a table, not a trace");
  if (!cfg.is_sweep && cfg.table_path) throw ValidationError("config: 'output.table' is only valid for sweeps");

  if (cfg.trace_path && cfg.params.kind == ExperimentKind::Darkstate)
    throw ValidationError("config: darkstate produces no trace");

  validate_experiment(cfg.params);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace darkpassage::cli
