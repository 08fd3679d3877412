#include "spectraflow/config.hpp"

#include "spectraflow/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spectraflow {

using nlohmann::json;

ModelParams RunConfig::model_params() const {
  ModelParams p;
  p.model = model;
  p.omega = omega;
  p.omega0 = omega0.value_or(omega);
  p.epsilon = epsilon;
  return p;
}

void RunConfig::validate() const {
  model_params().validate();
  if (!std::isfinite(g_min) || !std::isfinite(g_max)) throw ConfigError("g_min and g_max must be finite");
  if (!(g_min < g_max)) throw ConfigError("g_min must be smaller than g_max");
  if (g_steps < 2) throw ConfigError("g_steps must be at least 2");
  if (levels < 1) throw ConfigError("levels must be at least 1");
  if (n_cut) {
    if (*n_cut < 2) throw ConfigError("n_cut must be at least 2");
    if (levels > *n_cut) throw ConfigError("levels must not exceed n_cut (upper half of the truncated spectrum is untrusted)");
  }
  if (!(converge_tol > 0.0)) throw ConfigError("converge_tol must be positive");
  if (!std::isfinite(histogram_g)) throw ConfigError("histogram_g must be finite");
  if (n_bins < 2) throw ConfigError("n_bins must be at least 2");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

namespace {

template <typename T>
T read(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

std::size_t read_count(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

} // namespace

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known{"model",   "omega",  "omega0",       "epsilon",      "g_min",
                                           "g_max",   "g_steps", "levels",      "n_cut",        "converge_tol",
                                           "histogram_g", "n_bins", "output_dir"};
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");

  RunConfig cfg;
  if (doc.contains("model")) cfg.model = parse_model_kind(read<std::string>(doc, "model"));
  if (doc.contains("omega")) cfg.omega = read<double>(doc, "omega");
  if (doc.contains("omega0") && !doc.at("omega0").is_null()) cfg.omega0 = read<double>(doc, "omega0");
  if (doc.contains("epsilon")) cfg.epsilon = read<double>(doc, "epsilon");
  if (doc.contains("g_min")) cfg.g_min = read<double>(doc, "g_min");
  if (doc.contains("g_max")) cfg.g_max = read<double>(doc, "g_max");
  if (doc.contains("g_steps")) cfg.g_steps = read_count(doc, "g_steps");
  if (doc.contains("levels")) cfg.levels = read_count(doc, "levels");
  if (doc.contains("n_cut")) {
    const json& v = doc.at("n_cut");
    if (v.is_string()) {
      if (v.get<std::string>() != "auto") throw ConfigError("n_cut must be \"auto\" or an integer");
    } else {
      cfg.n_cut = read_count(doc, "n_cut");
    }
  }
  if (doc.contains("converge_tol")) cfg.converge_tol = read<double>(doc, "converge_tol");
  if (doc.contains("histogram_g")) cfg.histogram_g = read<double>(doc, "histogram_g");
  if (doc.contains("n_bins")) cfg.n_bins = read_count(doc, "n_bins");
  if (doc.contains("output_dir")) cfg.output_dir = read<std::string>(doc, "output_dir");
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

} // namespace spectraflow
