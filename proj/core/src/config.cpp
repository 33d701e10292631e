#include "mlwng/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"

namespace mlwng {

using nlohmann::json;

namespace {

// Reads keys from one JSON object and remembers which were consumed, so
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw ConfigError(where() + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    auto it = object_.find(key);
    if (it == object_.end()) return;
    seen_.insert(key);
    if (!type_matches<T>(*it)) throw ConfigError("key '" + qualified(key) + "': " + type_hint<T>());
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("key '" + qualified(key) + "': " + type_hint<T>());
    }
  }

  template <typename T>
  void read_optional(const char* key, std::optional<T>& out) {
    T value{};
    if (!object_.contains(key)) return;
    read(key, value);
    out = value;
  }

  template <typename Enum, typename Parse>
  void read_enum(const char* key, Enum& out, Parse parse) {
    std::string text;
    if (!object_.contains(key)) return;
    read(key, text);
    try {
      out = parse(text);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("key '" + qualified(key) + "': " + e.what());
    }
  }

  const json* child(const char* key) {
    auto it = object_.find(key);
    if (it == object_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  std::string qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.count(key)) throw ConfigError("unknown config key '" + qualified(key) + "'");
    }
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  template <typename T>
  static bool type_matches(const json& value) {
    if constexpr (std::is_same_v<T, bool>) {
      return value.is_boolean();
    } else if constexpr (std::is_same_v<T, std::string>) {
      return value.is_string();
    } else if constexpr (std::is_floating_point_v<T>) {
      return value.is_number();
    } else if constexpr (std::is_integral_v<T>) {
      return value.is_number_unsigned();
    } else {
      if (!value.is_array()) return false;
      for (const auto& item : value) {
        if (!type_matches<typename T::value_type>(item)) return false;
      }
      return true;
    }
  }

  template <typename T>
  static std::string type_hint() {
    if constexpr (std::is_same_v<T, bool>) return "expected a boolean";
    else if constexpr (std::is_same_v<T, std::string>) return "expected a string";
    else if constexpr (std::is_floating_point_v<T>) return "expected a number";
    else if constexpr (std::is_integral_v<T>) return "expected a non-negative integer";
    else return "expected a list of values";
  }

  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text.begin(), json_text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }

  ExperimentConfig c;
  ObjectReader top(root, "");
  top.read_enum("kind", c.kind, parse_experiment_kind);
  top.read("n", c.n);
  top.read("runs", c.runs);
  top.read("max_steps", c.max_steps);
  top.read("base_seed", c.base_seed);
  top.read("m0_values", c.m0_values);
  top.read("rho_values", c.rho_values);
  top.read("n_values", c.n_values);
  if (root.contains("topologies")) {
    std::vector<std::string> names;
    top.read("topologies", names);
    c.topologies.clear();
    for (const auto& name : names) {
      try {
        c.topologies.push_back(parse_topology(name));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("key 'topologies': ") + e.what());
      }
    }
  }
  top.read_optional("rho", c.rho);
  top.read_optional("m0", c.m0);
  top.read("target_avg_degree", c.target_avg_degree);
  top.read("sw_rewire_prob", c.sw_rewire_prob);
  top.read("regenerate_network_per_run", c.regenerate_network_per_run);
  top.read("workers", c.workers);
  top.read_enum("pair_selection", c.pair_selection, parse_pair_selection);
  top.read("stagnation_window", c.stagnation_window);
  top.read("rho_threshold_factor", c.rho_threshold_factor);
  top.read("points_per_decade", c.points_per_decade);
  top.read("write_series", c.write_series);
  top.read("write_networks", c.write_networks);
  if (const json* mlw = top.child("mlw")) {
    ObjectReader r(*mlw, "mlw");
    r.read("p1", c.mlw.p1);
    r.read("p2", c.mlw.p2);
    r.read("p3", c.mlw.p3);
    r.read("p4", c.mlw.p4);
    r.read("e1", c.mlw.e1);
    r.read("e2", c.mlw.e2);
    r.read("e3", c.mlw.e3);
    r.read("e4", c.mlw.e4);
    r.read("alpha", c.mlw.alpha);
    r.reject_unknown();
  }
  std::string description;  // free-form note, not used
  top.read("description", description);
  top.reject_unknown();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string config_to_json(const ExperimentConfig& c) {
  json root = json::object();
  root["kind"] = to_string(c.kind);
  root["n"] = c.n;
  root["runs"] = c.runs;
  root["max_steps"] = c.max_steps;
  root["base_seed"] = c.base_seed;
  root["m0_values"] = c.m0_values;
  root["rho_values"] = c.rho_values;
  root["n_values"] = c.n_values;
  json topologies = json::array();
  for (Topology t : c.topologies) topologies.push_back(to_string(t));
  root["topologies"] = topologies;
  if (c.rho) root["rho"] = *c.rho;
  if (c.m0) root["m0"] = *c.m0;
  root["target_avg_degree"] = c.target_avg_degree;
  root["sw_rewire_prob"] = c.sw_rewire_prob;
  root["regenerate_network_per_run"] = c.regenerate_network_per_run;
  root["workers"] = c.workers;
  root["pair_selection"] = to_string(c.pair_selection);
  root["stagnation_window"] = c.stagnation_window;
  root["rho_threshold_factor"] = c.rho_threshold_factor;
  root["points_per_decade"] = c.points_per_decade;
  root["write_series"] = c.write_series;
  root["write_networks"] = c.write_networks;
  root["mlw"] = {{"p1", c.mlw.p1}, {"p2", c.mlw.p2}, {"p3", c.mlw.p3},       {"p4", c.mlw.p4},
                 {"e1", c.mlw.e1}, {"e2", c.mlw.e2}, {"e3", c.mlw.e3},       {"e4", c.mlw.e4},
                 {"alpha", c.mlw.alpha}};
  return root.dump(2);
}

}  // namespace mlwng
