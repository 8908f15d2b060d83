#include "uas/config.hpp"

#include <cstdint>
#include <fstream>
#include <type_traits>

#include <fmt/format.h>

namespace uas {
namespace {

using nlohmann::json;

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const json& require_object(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  return doc;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number_at(const json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  return value.get<double>();
}

double required_number(const json& obj, const std::string& parent, const std::string& key) {
  const json* v = optional_field(obj, key);
  if (v == nullptr) throw ConfigError(join(parent, key), "missing required field");
  return number_at(*v, join(parent, key));
}

void read_number(const json& obj, const std::string& parent, const std::string& key,
                 double& target) {
  if (const json* v = optional_field(obj, key)) target = number_at(*v, join(parent, key));
}

void read_int(const json& obj, const std::string& parent, const std::string& key, int& target) {
  if (const json* v = optional_field(obj, key)) {
    if (!v->is_number_integer()) throw ConfigError(join(parent, key), "expected an integer");
    target = v->get<int>();
  }
}

void read_string(const json& obj, const std::string& parent, const std::string& key,
                 std::string& target) {
  if (const json* v = optional_field(obj, key)) {
    if (!v->is_string()) throw ConfigError(join(parent, key), "expected a string");
    target = v->get<std::string>();
  }
}

template <typename T>
void read_list(const json& obj, const std::string& parent, const std::string& key,
               std::vector<T>& target) {
  const json* v = optional_field(obj, key);
  if (v == nullptr) return;
  std::string path = join(parent, key);
  if (!v->is_array() || v->empty()) throw ConfigError(path, "expected a non-empty array");
  std::vector<T> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    const json& item = (*v)[i];
    std::string item_path = fmt::format("{}[{}]", path, i);
    if constexpr (std::is_same_v<T, std::string>) {
      if (!item.is_string()) throw ConfigError(item_path, "expected a string");
      out.push_back(item.get<std::string>());
    } else if constexpr (std::is_integral_v<T>) {
      if (!item.is_number_integer()) throw ConfigError(item_path, "expected an integer");
      out.push_back(item.get<T>());
    } else {
      out.push_back(number_at(item, item_path));
    }
  }
  target = std::move(out);
}

void parse_region(const json& sec, ScenarioConfig& sc) {
  require_object(sec, "region");
  read_number(sec, "region", "radius_m", sc.region_radius);
  read_int(sec, "region", "n_gns", sc.n_gns);
  if (!(sc.region_radius > 0.0)) throw ConfigError("region.radius_m", "must be positive");
  if (sc.n_gns < 1) throw ConfigError("region.n_gns", "must be at least 1");
}

void parse_radio(const json& sec, RadioConfig& radio) {
  require_object(sec, "radio");
  radio.g0 = required_number(sec, "radio", "g0");
  radio.p_downlink = required_number(sec, "radio", "p_downlink_w");
  radio.p_max_gn = required_number(sec, "radio", "p_max_gn_w");
  radio.noise_power = required_number(sec, "radio", "noise_power_w");
  radio.gamma_dl = required_number(sec, "radio", "gamma_dl");
  radio.gamma_ul = required_number(sec, "radio", "gamma_ul");
  read_number(sec, "radio", "antenna_constant", radio.antenna_constant);
  struct Field {
    const char* name;
    double value;
  };
  for (Field f : {Field{"g0", radio.g0}, Field{"p_downlink_w", radio.p_downlink},
                  Field{"p_max_gn_w", radio.p_max_gn}, Field{"noise_power_w", radio.noise_power},
                  Field{"gamma_dl", radio.gamma_dl}, Field{"gamma_ul", radio.gamma_ul},
                  Field{"antenna_constant", radio.antenna_constant}}) {
    if (!(f.value > 0.0)) throw ConfigError(join("radio", f.name), "must be positive");
  }
}

void parse_environment(const json& sec, ScenarioConfig& sc) {
  if (sec.is_string()) {
    sc.environment_name = sec.get<std::string>();
    sc.environment = resolve_environment(sc.environment_name, "environment");
    return;
  }
  require_object(sec, "environment");
  EnvironmentProfile env;
  env.a = required_number(sec, "environment", "a");
  env.b = required_number(sec, "environment", "b");
  env.eta_los = required_number(sec, "environment", "eta_los");
  env.eta_nlos = required_number(sec, "environment", "eta_nlos");
  env.half_beamwidth = Angle::degrees(required_number(sec, "environment", "half_beamwidth_deg"));
  std::string name = "custom";
  read_string(sec, "environment", "name", name);
  try {
    env.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("environment", e.what());
  }
  sc.environment_name = name;
  sc.environment = env;
}

void parse_traffic(const json& sec, TrafficModel& traffic) {
  require_object(sec, "traffic");
  read_number(sec, "traffic", "arrival_rate", traffic.arrival_rate);
  read_number(sec, "traffic", "service_rate", traffic.service_rate);
  if (!(traffic.arrival_rate >= 0.0)) {
    throw ConfigError("traffic.arrival_rate", "must be non-negative");
  }
  if (!(traffic.service_rate > 0.0)) throw ConfigError("traffic.service_rate", "must be positive");
}

void check_probability(double v, const std::string& path) {
  if (!(v > 0.0 && v <= 1.0)) throw ConfigError(path, "must lie in (0, 1]");
}

void parse_experiment(const json& sec, RunConfig& cfg) {
  const std::string p = "experiment";
  require_object(sec, p);
  ScenarioConfig& sc = cfg.scenario;
  read_int(sec, p, "trials", sc.trials);
  if (sc.trials < 1) throw ConfigError("experiment.trials", "must be at least 1");
  if (const json* seed = optional_field(sec, "seed")) {
    if (!seed->is_number_unsigned()) {
      throw ConfigError("experiment.seed", "expected a non-negative integer");
    }
    sc.seed = seed->get<std::uint64_t>();
  }
  read_number(sec, p, "threshold", sc.threshold);
  check_probability(sc.threshold, "experiment.threshold");

  if (const json* f4 = optional_field(sec, "fig4")) {
    const std::string q = "experiment.fig4";
    require_object(*f4, q);
    read_list(*f4, q, "environments", cfg.fig4.environments);
    for (std::size_t i = 0; i < cfg.fig4.environments.size(); ++i) {
      resolve_environment(cfg.fig4.environments[i], fmt::format("{}.environments[{}]", q, i));
    }
    read_list(*f4, q, "radii_m", cfg.fig4.radii);
    read_list(*f4, q, "n_gns", cfg.fig4.gn_counts);
    for (double r : cfg.fig4.radii) {
      if (!(r > 0.0)) throw ConfigError(q + ".radii_m", "radii must be positive");
    }
    for (int n : cfg.fig4.gn_counts) {
      if (n < 1) throw ConfigError(q + ".n_gns", "counts must be at least 1");
    }
  }
  if (const json* f5 = optional_field(sec, "fig5")) {
    const std::string q = "experiment.fig5";
    require_object(*f5, q);
    read_int(*f5, q, "n_cells", cfg.fig5.n_cells);
    read_list(*f5, q, "deltas", cfg.fig5.deltas);
    if (cfg.fig5.n_cells < 1) throw ConfigError(q + ".n_cells", "must be at least 1");
    for (double d : cfg.fig5.deltas) {
      if (!(d >= 0.0)) throw ConfigError(q + ".deltas", "intensities must be non-negative");
    }
  }
  if (const json* f6 = optional_field(sec, "fig6")) {
    const std::string q = "experiment.fig6";
    require_object(*f6, q);
    read_string(*f6, q, "environment", cfg.fig6.environment);
    resolve_environment(cfg.fig6.environment, q + ".environment");
    read_int(*f6, q, "n_gns", cfg.fig6.n_gns);
    read_list(*f6, q, "radii_m", cfg.fig6.radii);
    read_list(*f6, q, "deltas", cfg.fig6.deltas);
    read_list(*f6, q, "thresholds", cfg.fig6.thresholds);
    if (cfg.fig6.n_gns < 1) throw ConfigError(q + ".n_gns", "must be at least 1");
    for (double r : cfg.fig6.radii) {
      if (!(r > 0.0)) throw ConfigError(q + ".radii_m", "radii must be positive");
    }
    for (double d : cfg.fig6.deltas) {
      if (!(d >= 0.0)) throw ConfigError(q + ".deltas", "intensities must be non-negative");
    }
    for (double t : cfg.fig6.thresholds) check_probability(t, q + ".thresholds");
  }
}

}  // namespace

EnvironmentProfile resolve_environment(const std::string& name, const std::string& field) {
  if (auto env = environment_preset(name)) return *env;
  throw ConfigError(field, "unknown environment preset '" + name + "'");
}

RunConfig default_run_config() { return RunConfig{}; }

RunConfig parse_run_config(const nlohmann::json& doc) {
  require_object(doc, "<root>");
  for (const auto& [key, _] : doc.items()) {
    if (key != "region" && key != "radio" && key != "environment" && key != "traffic" &&
        key != "experiment") {
      throw ConfigError(key, "unknown section");
    }
  }
  RunConfig cfg = default_run_config();
  const json* radio = optional_field(doc, "radio");
  if (radio == nullptr) throw ConfigError("radio", "missing required section");
  parse_radio(*radio, cfg.scenario.radio);
  if (const json* s = optional_field(doc, "region")) parse_region(*s, cfg.scenario);
  if (const json* s = optional_field(doc, "environment")) parse_environment(*s, cfg.scenario);
  if (const json* s = optional_field(doc, "traffic")) parse_traffic(*s, cfg.scenario.traffic);
  if (const json* s = optional_field(doc, "experiment")) parse_experiment(*s, cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
  }
  return parse_run_config(doc);
}

nlohmann::json to_json(const RunConfig& cfg) {
  const ScenarioConfig& sc = cfg.scenario;
  json j;
  j["region"] = {{"radius_m", sc.region_radius}, {"n_gns", sc.n_gns}};
  j["radio"] = {{"g0", sc.radio.g0},
                {"p_downlink_w", sc.radio.p_downlink},
                {"p_max_gn_w", sc.radio.p_max_gn},
                {"noise_power_w", sc.radio.noise_power},
                {"gamma_dl", sc.radio.gamma_dl},
                {"gamma_ul", sc.radio.gamma_ul},
                {"antenna_constant", sc.radio.antenna_constant}};
  j["environment"] = {{"name", sc.environment_name},
                      {"a", sc.environment.a},
                      {"b", sc.environment.b},
                      {"eta_los", sc.environment.eta_los},
                      {"eta_nlos", sc.environment.eta_nlos},
                      {"half_beamwidth_deg", sc.environment.half_beamwidth.deg()}};
  j["traffic"] = {{"arrival_rate", sc.traffic.arrival_rate},
                  {"service_rate", sc.traffic.service_rate}};
  j["experiment"] = {
      {"trials", sc.trials},
      {"seed", sc.seed},
      {"threshold", sc.threshold},
      {"fig4",
       {{"environments", cfg.fig4.environments},
        {"radii_m", cfg.fig4.radii},
        {"n_gns", cfg.fig4.gn_counts}}},
      {"fig5", {{"n_cells", cfg.fig5.n_cells}, {"deltas", cfg.fig5.deltas}}},
      {"fig6",
       {{"environment", cfg.fig6.environment},
        {"n_gns", cfg.fig6.n_gns},
        {"radii_m", cfg.fig6.radii},
        {"deltas", cfg.fig6.deltas},
        {"thresholds", cfg.fig6.thresholds}}}};
  return j;
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace uas
