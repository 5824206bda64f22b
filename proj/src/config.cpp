// config.cpp — strict config parsing, validation, and manifest formatting.
#include "dstirap/config.hpp"

#include "json.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

namespace dstirap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Value {
  enum Kind { kBool, kNumber, kString, kArray } kind = kNumber;
  bool b = false;
  double num = 0.0;
  std::string str;
  std::vector<double> arr;
  int line = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty numeric value (line " + std::to_string(line) + ")");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw ConfigError("malformed number '" + t + "' (line " + std::to_string(line) + ")");
  return v;
}

Value parse_value(const std::string& text, int line) {
  Value v;
  v.line = line;
  const std::string t = trim(text);
  if (t == "true" || t == "false") {
    v.kind = Value::kBool;
    v.b = (t == "true");
    return v;
  }
  if (!t.empty() && t.front() == '"') {
    if (t.size() < 2 || t.back() != '"')
      throw ConfigError("unterminated string (line " + std::to_string(line) + ")");
    v.kind = Value::kString;
    v.str = t.substr(1, t.size() - 2);
    return v;
  }
  if (!t.empty() && t.front() == '[') {
    if (t.back() != ']')
      throw ConfigError("unterminated array (line " + std::to_string(line) + ")");
    v.kind = Value::kArray;
    const std::string inner = trim(t.substr(1, t.size() - 2));
    if (!inner.empty()) {
      std::stringstream ss(inner);
      std::string part;
      while (std::getline(ss, part, ',')) v.arr.push_back(parse_number(part, line));
    }
    return v;
  }
  v.kind = Value::kNumber;
  v.num = parse_number(t, line);
  return v;
}

// Strips a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

class KeyTable {
 public:
  void insert(const std::string& key, Value v) {
    if (vals_.count(key))
      throw ConfigError("duplicate key '" + key + "' (line " + std::to_string(v.line) + ")");
    vals_.emplace(key, std::move(v));
  }

  double number(const std::string& key, double dflt) {
    auto v = take(key);
    if (!v) return dflt;
    if (v->kind != Value::kNumber) throw type_error(key, "a number", v->line);
    return v->num;
  }
  int integer(const std::string& key, int dflt) {
    auto v = take(key);
    if (!v) return dflt;
    if (v->kind != Value::kNumber || std::floor(v->num) != v->num ||
        std::abs(v->num) > 2.0e9)
      throw type_error(key, "an integer", v->line);
    return static_cast<int>(v->num);
  }
  bool boolean(const std::string& key, bool dflt) {
    auto v = take(key);
    if (!v) return dflt;
    if (v->kind != Value::kBool) throw type_error(key, "a boolean", v->line);
    return v->b;
  }
  std::string string(const std::string& key, const std::string& dflt) {
    auto v = take(key);
    if (!v) return dflt;
    if (v->kind != Value::kString) throw type_error(key, "a string", v->line);
    return v->str;
  }

  void finish() const {
    if (vals_.empty()) return;
    throw ConfigError("unknown configuration key '" + vals_.begin()->first + "' (line " +
                      std::to_string(vals_.begin()->second.line) + ")");
  }

 private:
  static ConfigError type_error(const std::string& key, const std::string& want, int line) {
    return ConfigError("key '" + key + "' must be " + want + " (line " + std::to_string(line) +
                       ")");
  }
  std::optional<Value> take(const std::string& key) {
    auto it = vals_.find(key);
    if (it == vals_.end()) return std::nullopt;
    Value v = std::move(it->second);
    vals_.erase(it);
    return v;
  }
  std::map<std::string, Value> vals_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("key '" + key + "' " + what);
}

}  // namespace

RunConfig default_config() {
  RunConfig c;
  c.omega0 = kTwoPi * 44.0;
  c.omega_r = c.omega0;
  c.gamma_phase = std::numbers::pi;
  return c;
}

RunConfig parse_config(const std::string& text) {
  KeyTable table;
  std::string section;
  std::stringstream ss(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(ss, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ConfigError("malformed section header (line " + std::to_string(line_no) + ")");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value (line " + std::to_string(line_no) + ")");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError("empty key (line " + std::to_string(line_no) + ")");
    const std::string full = section.empty() ? key : section + "." + key;
    table.insert(full, parse_value(line.substr(eq + 1), line_no));
  }

  RunConfig c = default_config();
  const double omega0_mhz = table.number("physics.omega0_mhz", 44.0);
  const double omega_r_mhz = table.number("physics.omega_r_mhz", omega0_mhz);
  require(omega0_mhz > 0.0, "physics.omega0_mhz", "must be positive");
  require(omega_r_mhz > 0.0, "physics.omega_r_mhz", "must be positive");
  c.omega0 = kTwoPi * omega0_mhz;
  c.omega_r = kTwoPi * omega_r_mhz;
  c.omega_c_ratio = table.number("physics.omega_c_over_omega0", c.omega_c_ratio);
  require(c.omega_c_ratio >= 0.0, "physics.omega_c_over_omega0", "must be non-negative");
  c.delta_ratio = table.number("physics.delta_over_omega0", c.delta_ratio);
  c.lifetime_r_us = table.number("physics.lifetime_r_us", c.lifetime_r_us);
  c.lifetime_big_r_us = table.number("physics.lifetime_big_r_us", c.lifetime_big_r_us);
  c.lifetime_e1_us = table.number("physics.lifetime_e1_us", c.lifetime_e1_us);
  c.lifetime_e2_us = table.number("physics.lifetime_e2_us", c.lifetime_e2_us);
  require(c.lifetime_r_us > 0.0, "physics.lifetime_r_us", "must be positive");
  require(c.lifetime_big_r_us > 0.0, "physics.lifetime_big_r_us", "must be positive");
  require(c.lifetime_e1_us > 0.0, "physics.lifetime_e1_us", "must be positive");
  require(c.lifetime_e2_us > 0.0, "physics.lifetime_e2_us", "must be positive");
  c.gamma_phase = std::numbers::pi * table.number("physics.gamma_phase_over_pi", 1.0);
  c.xi = table.number("physics.xi", c.xi);
  c.zeta = table.number("physics.zeta", c.zeta);
  c.include_decay = table.boolean("physics.include_decay", c.include_decay);
  c.include_cc = table.boolean("physics.include_cc", c.include_cc);

  c.n_principal = table.number("geometry.n_principal", c.n_principal);
  require(c.n_principal > 0.0, "geometry.n_principal", "must be positive");
  c.spacing_um = table.number("geometry.spacing_um", c.spacing_um);
  require(c.spacing_um > 0.0, "geometry.spacing_um", "must be positive");

  c.t_total_us = table.number("pulse.t_total_us", c.t_total_us);
  require(c.t_total_us > 0.0, "pulse.t_total_us", "must be positive");
  c.sigma_frac = table.number("pulse.sigma_frac", c.sigma_frac);
  require(c.sigma_frac > 0.0, "pulse.sigma_frac", "must be positive");
  c.delta_frac = table.number("pulse.delta_frac", c.delta_frac);
  require(c.delta_frac > 0.0, "pulse.delta_frac", "must be positive");

  c.integrator.rel_tol = table.number("integrator.rel_tol", c.integrator.rel_tol);
  c.integrator.abs_tol = table.number("integrator.abs_tol", c.integrator.abs_tol);
  require(c.integrator.rel_tol > 0.0, "integrator.rel_tol", "must be positive");
  require(c.integrator.abs_tol > 0.0, "integrator.abs_tol", "must be positive");
  c.integrator.max_step = table.number("integrator.max_step_us", c.integrator.max_step);
  require(c.integrator.max_step >= 0.0, "integrator.max_step_us", "must be non-negative");
  c.integrator.fixed_step = table.number("integrator.fixed_step_us", c.integrator.fixed_step);
  require(c.integrator.fixed_step > 0.0, "integrator.fixed_step_us", "must be positive");
  c.integrator.max_steps = table.integer("integrator.max_steps",
                                         static_cast<int>(c.integrator.max_steps));
  require(c.integrator.max_steps > 0, "integrator.max_steps", "must be positive");
  c.engine = table.string("integrator.engine", c.engine);
  require(c.engine == "auto" || c.engine == "dense" || c.engine == "factorized",
          "integrator.engine", "must be auto, dense, or factorized");

  c.qubits = table.integer("run.qubits", c.qubits);
  require(c.qubits >= 2 && c.qubits <= 4, "run.qubits", "must be 2, 3, or 4");
  c.threads = table.integer("run.threads", c.threads);
  require(c.threads >= 1, "run.threads", "must be at least 1");
  c.output_dir = table.string("run.output_dir", c.output_dir);

  c.t_min_us = table.number("sweep.t_min_us", c.t_min_us);
  c.t_max_us = table.number("sweep.t_max_us", c.t_max_us);
  require(c.t_min_us > 0.0 && c.t_max_us >= c.t_min_us, "sweep.t_min_us",
          "and sweep.t_max_us must form a positive range");
  c.points = table.integer("sweep.points", c.points);
  require(c.points >= 1, "sweep.points", "must be at least 1");
  c.omega_c_min_ratio = table.number("sweep.omega_c_min_ratio", c.omega_c_min_ratio);
  c.omega_c_max_ratio = table.number("sweep.omega_c_max_ratio", c.omega_c_max_ratio);
  c.v_min_ratio = table.number("sweep.v_min_ratio", c.v_min_ratio);
  c.v_max_ratio = table.number("sweep.v_max_ratio", c.v_max_ratio);
  c.error_min = table.number("sweep.error_min", c.error_min);
  c.error_max = table.number("sweep.error_max", c.error_max);
  c.l_min_um = table.number("sweep.l_min_um", c.l_min_um);
  c.l_max_um = table.number("sweep.l_max_um", c.l_max_um);
  require(c.l_min_um > 0.0 && c.l_max_um >= c.l_min_um, "sweep.l_min_um",
          "and sweep.l_max_um must form a positive range");

  table.finish();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

PhysicsParams RunConfig::physics(int n_controls) const {
  PhysicsParams p;
  p.omega0 = omega0;
  p.omega_r = omega_r;
  p.omega_c = omega_c_ratio * omega0;
  p.delta = delta_ratio * omega0;
  if (include_decay) {
    p.gamma_r = 1.0 / lifetime_r_us;
    p.gamma_big_r = 1.0 / lifetime_big_r_us;
    p.gamma_e1 = 1.0 / lifetime_e1_us;
    p.gamma_e2 = 1.0 / lifetime_e2_us;
  }
  p.gamma_phase = gamma_phase;
  p.xi = xi;
  p.zeta = zeta;
  p.sigma_frac = sigma_frac;
  p.delta_frac = delta_frac;
  p.include_cc = include_cc;
  p.set_interactions_from_geometry(Geometry::preset(geometry_preset_name(n_controls), spacing_um),
                                   n_principal);
  return p;
}

Engine RunConfig::engine_enum() const {
  if (engine == "dense") return Engine::kDense;
  if (engine == "factorized") return Engine::kFactorized;
  return Engine::kAuto;
}

ExtractionOptions RunConfig::extraction() const {
  ExtractionOptions opts;
  opts.engine = engine_enum();
  opts.integrator = integrator;
  opts.threads = threads;
  return opts;
}

std::string manifest_json(const RunConfig& cfg, const std::string& subcommand,
                          double wall_seconds,
                          const std::vector<std::pair<std::string, double>>& numbers,
                          const std::vector<std::pair<std::string, std::string>>& strings) {
  nlohmann::json j;
  j["tool"] = "dstirap";
  j["version"] = kToolVersion;
  j["subcommand"] = subcommand;
  j["wall_seconds"] = wall_seconds;
  j["config"]["physics"] = {
      {"omega0_rad_per_us", cfg.omega0},
      {"omega_r_rad_per_us", cfg.omega_r},
      {"omega_c_over_omega0", cfg.omega_c_ratio},
      {"delta_over_omega0", cfg.delta_ratio},
      {"lifetime_r_us", cfg.lifetime_r_us},
      {"lifetime_big_r_us", cfg.lifetime_big_r_us},
      {"lifetime_e1_us", cfg.lifetime_e1_us},
      {"lifetime_e2_us", cfg.lifetime_e2_us},
      {"gamma_phase_rad", cfg.gamma_phase},
      {"xi", cfg.xi},
      {"zeta", cfg.zeta},
      {"include_decay", cfg.include_decay},
      {"include_cc", cfg.include_cc},
  };
  j["config"]["geometry"] = {
      {"n_principal", cfg.n_principal},
      {"spacing_um", cfg.spacing_um},
  };
  j["config"]["pulse"] = {
      {"t_total_us", cfg.t_total_us},
      {"sigma_frac", cfg.sigma_frac},
      {"delta_frac", cfg.delta_frac},
  };
  j["config"]["integrator"] = {
      {"rel_tol", cfg.integrator.rel_tol},
      {"abs_tol", cfg.integrator.abs_tol},
      {"max_step_us", cfg.integrator.max_step},
      {"fixed_step_us", cfg.integrator.fixed_step},
      {"max_steps", cfg.integrator.max_steps},
      {"engine", cfg.engine},
  };
  j["config"]["run"] = {
      {"qubits", cfg.qubits},
      {"threads", cfg.threads},
      {"output_dir", cfg.output_dir},
  };
  j["config"]["sweep"] = {
      {"t_min_us", cfg.t_min_us},
      {"t_max_us", cfg.t_max_us},
      {"points", cfg.points},
      {"omega_c_min_ratio", cfg.omega_c_min_ratio},
      {"omega_c_max_ratio", cfg.omega_c_max_ratio},
      {"v_min_ratio", cfg.v_min_ratio},
      {"v_max_ratio", cfg.v_max_ratio},
      {"error_min", cfg.error_min},
      {"error_max", cfg.error_max},
      {"l_min_um", cfg.l_min_um},
      {"l_max_um", cfg.l_max_um},
  };
  for (const auto& [k, v] : numbers) j["results"][k] = v;
  for (const auto& [k, v] : strings) j["results"][k] = v;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace dstirap
