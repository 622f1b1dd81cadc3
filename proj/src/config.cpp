#include "sqg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sqg/errors.hpp"

extern char** environ;

namespace sqg {

namespace {

const KeySpec* find_key(const std::string& key) {
  for (const KeySpec& k : config_keys())
    if (k.key == key) return &k;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string valid_keys() {
  std::string out;
  for (const KeySpec& k : config_keys()) out += (out.empty() ? "" : ", ") + k.key;
  return out;
}

bool parse_integer(const std::string& v, long long& out) {
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool parse_real(const std::string& v, double& out) {
  if (v.empty()) return false;
  char* end = nullptr;
  out = std::strtod(v.c_str(), &end);
  return end == v.c_str() + v.size();
}

bool parse_flag(const std::string& v, bool& out) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return out = true, true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return out = false, true;
  return false;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

bool well_typed(KeyType type, const std::string& v) {
  long long i;
  double d;
  bool b;
  switch (type) {
    case KeyType::integer: return parse_integer(v, i);
    case KeyType::real: return parse_real(v, d);
    case KeyType::flag: return parse_flag(v, b);
    case KeyType::real_list:
      for (const auto& item : split_list(v))
        if (!parse_real(item, d)) return false;
      return true;
    case KeyType::text: return true;
  }
  return false;
}

}  // namespace

std::string to_string(KeyType type) {
  switch (type) {
    case KeyType::integer: return "integer";
    case KeyType::real: return "number";
    case KeyType::text: return "string";
    case KeyType::flag: return "boolean (true/false)";
    case KeyType::real_list: return "comma-separated numbers";
  }
  return "";
}

const std::vector<KeySpec>& config_keys() {
  using K = KeyType;
  static const std::vector<KeySpec> keys = {
      {"n", K::integer, "64", "grid points per side (power of two, >= 8)"},
      {"box_length", K::real, "6.283185307179586", "period L of the box"},
      {"kappa", K::real, "0.8", "dissipation order"},
      {"dt", K::real, "0.001", "time step"},
      {"t_end", K::real, "0.1", "final time"},
      {"dealias", K::text, "two-thirds", "two-thirds or none"},
      {"picard_depth", K::integer, "4", "Picard iterates computed by the picard verb"},
      {"initial", K::text, "vortex_pair", "zero, mode, vortex_pair, ring, white, random_besov, snapshot"},
      {"amplitude", K::real, "0.1", "initial data amplitude"},
      {"mode", K::integer, "1", "wavenumber for mode/ring initial data"},
      {"seed", K::integer, "1", "random seed"},
      {"initial_path", K::text, "", "snapshot file for initial=snapshot"},
      {"record_every", K::integer, "10", "steps between saved snapshots"},
      {"p", K::real, "2", "Lebesgue exponent for diagnostics"},
      {"q", K::real, "2", "Besov summation exponent"},
      {"alpha", K::real, "0.4", "Gevrey exponent"},
      {"beta", K::real, "0", "X_T time-weight exponent"},
      {"lambda", K::real, "1", "X_T Gevrey rate"},
      {"gamma", K::real, "0", "Gevrey radius for analyze"},
      {"besov_s", K::real, "", "Besov regularity for analyze (default sigma = 1 + 2/p - kappa)"},
      {"bump_sharpness", K::real, "1", "Littlewood-Paley transition sharpness"},
      {"input", K::text, "", "analyze: snapshot file or directory of snapshots"},
      {"symbol", K::text, "", "symbols: registered symbol to probe"},
      {"symbol_params", K::real_list, "", "symbols: symbol parameters"},
      {"symbol_p", K::real, "2", "symbols: first input exponent"},
      {"symbol_q", K::real, "2", "symbols: second input exponent"},
      {"symbol_trials", K::integer, "20", "symbols: random probe pairs"},
      {"symbol_order", K::integer, "2", "symbols: derivative order of the Marcinkiewicz probe"},
      {"verify.n", K::integer, "", "check grid size"},
      {"verify.box_length", K::real, "", "check box length"},
      {"verify.j_lo", K::integer, "", "lowest dyadic index (separation for r_derivatives)"},
      {"verify.j_hi", K::integer, "", "highest dyadic index"},
      {"verify.p", K::real_list, "", "Lebesgue exponents"},
      {"verify.s", K::real_list, "", "regularity exponents"},
      {"verify.t", K::real_list, "", "times (heat_kernel) or second regularity (commutator_decay)"},
      {"verify.alpha", K::real_list, "", "Gevrey exponents"},
      {"verify.kappa", K::real_list, "", "dissipation orders"},
      {"verify.gamma", K::real_list, "", "Gevrey radii"},
      {"verify.sigma", K::real_list, "", "R symbol sigma values"},
      {"verify.c", K::real_list, "", "concavity ratios"},
      {"verify.amplitudes", K::real_list, "", "well-posedness amplitude sweep"},
      {"verify.delta", K::real, "", "commutator delta"},
      {"verify.beta", K::real, "", "X_T beta"},
      {"verify.lambda", K::real, "", "X_T lambda"},
      {"verify.gamma_margin", K::real, "", "extra damping of Gevrey test fields"},
      {"verify.trials", K::integer, "", "random trials"},
      {"verify.seed", K::integer, "", "check seed"},
      {"verify.slope_slack", K::real, "", "slack on fitted log2 slopes"},
      {"verify.constant_cap", K::real, "", "cap on fitted constants"},
      {"verify.max_order", K::integer, "", "derivative order for r_derivatives"},
      {"verify.bump_sharpness", K::real, "", "Littlewood-Paley transition sharpness"},
      {"verify.padding", K::flag, "", "evaluate nonlinear powers on the 2n grid"},
      {"verify.allow_boundary", K::flag, "", "run commutator triples on a hypothesis boundary"},
      {"verify.dt", K::real, "", "well-posedness time step"},
      {"verify.t_end", K::real, "", "well-posedness final time"},
      {"verify.picard_depth", K::integer, "", "well-posedness Picard depth"},
      {"verify.picard_amplitude", K::real, "", "well-posedness Picard amplitude"},
      {"verify.record_every", K::integer, "", "well-posedness snapshot stride"},
      {"verify.initial", K::text, "", "well-posedness initial data kind"},
  };
  return keys;
}

Config::Config() {
  for (const KeySpec& k : config_keys()) values_[k.key] = k.default_value;
}

void Config::set(const std::string& key, const std::string& value, const std::string& where) {
  const std::string prefix = where.empty() ? "" : where + ": ";
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError(prefix + "unknown key '" + key + "' (valid keys: " + valid_keys() + ")");
  if (!well_typed(spec->type, value))
    throw ConfigError(prefix + "key '" + key + "' expects " + to_string(spec->type) + ", got '" +
                      value + "'");
  values_[key] = value;
}

bool Config::is_set(const std::string& key) const { return !raw(key).empty(); }

const std::string& Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

long long Config::integer(const std::string& key) const {
  long long v = 0;
  if (!parse_integer(raw(key), v)) throw ConfigError("key '" + key + "' is not set to an integer");
  return v;
}

double Config::real(const std::string& key) const {
  double v = 0.0;
  if (!parse_real(raw(key), v)) throw ConfigError("key '" + key + "' is not set to a number");
  return v;
}

const std::string& Config::text(const std::string& key) const { return raw(key); }

bool Config::flag(const std::string& key) const {
  bool v = false;
  if (!parse_flag(raw(key), v)) throw ConfigError("key '" + key + "' is not set to a boolean");
  return v;
}

std::vector<double> Config::real_list(const std::string& key) const {
  std::vector<double> out;
  if (raw(key).empty()) return out;
  for (const auto& item : split_list(raw(key))) {
    double v = 0.0;
    parse_real(item, v);
    out.push_back(v);
  }
  return out;
}

Metadata Config::echo() const {
  Metadata m;
  for (const KeySpec& k : config_keys()) m[k.key] = values_.at(k.key);
  return m;
}

void apply_config_text(Config& config, const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos || trim(body.substr(0, eq)).empty())
      throw ConfigError(where + ": malformed line, expected key=value: '" + trim(line) + "'");
    config.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)), where);
  }
}

std::vector<std::pair<std::string, std::string>> environment_overrides() {
  std::vector<std::pair<std::string, std::string>> out;
  for (char** e = environ; e && *e; ++e) {
    const std::string entry(*e);
    if (entry.rfind("SQG_", 0) != 0) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) continue;
    std::string name = entry.substr(4, eq - 4);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::string key;
    for (const KeySpec& k : config_keys()) {
      std::string flat = k.key;
      std::replace(flat.begin(), flat.end(), '.', '_');
      if (flat == name) key = k.key;
    }
    if (key.empty())
      throw ConfigError("environment variable " + entry.substr(0, eq) + " matches no config key");
    out.emplace_back(key, entry.substr(eq + 1));
  }
  return out;
}

Config parse_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides,
                    const std::vector<std::pair<std::string, std::string>>& environment) {
  Config config;
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file '" + *path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(config, buf.str(), *path);
  }
  for (const auto& [k, v] : environment) config.set(k, v, "environment");
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override '" + o + "' is not of the form key=value");
    config.set(trim(o.substr(0, eq)), trim(o.substr(eq + 1)), "override");
  }
  return config;
}

SolverConfig solver_config(const Config& c) {
  SolverConfig s;
  s.grid = Grid(static_cast<int>(c.integer("n")), c.real("box_length"));
  s.kappa = c.real("kappa");
  s.dt = c.real("dt");
  s.t_end = c.real("t_end");
  s.dealias = parse_dealias(c.text("dealias"));
  s.picard_depth = static_cast<int>(c.integer("picard_depth"));
  s.initial_data.kind = c.text("initial");
  s.initial_data.amplitude = c.real("amplitude");
  s.initial_data.mode = static_cast<int>(c.integer("mode"));
  s.initial_data.seed = static_cast<std::uint64_t>(c.integer("seed"));
  s.initial_data.path = c.text("initial_path");
  s.record_every = static_cast<int>(c.integer("record_every"));
  s.p = c.real("p");
  s.q = c.real("q");
  s.alpha = c.real("alpha");
  s.bump_sharpness = c.real("bump_sharpness");
  validate(s);
  return s;
}

GevreyParams gevrey_params(const Config& c) {
  GevreyParams gp;
  gp.alpha = c.real("alpha");
  gp.gamma = c.real("gamma");
  gp.lambda = c.real("lambda");
  gp.kappa = c.real("kappa");
  gp.beta = c.real("beta");
  validate(gp);
  return gp;
}

BesovParams besov_params(const Config& c) {
  BesovParams bp;
  bp.p = c.real("p");
  bp.q = c.real("q");
  bp.s = c.is_set("besov_s") ? c.real("besov_s") : 1.0 + 2.0 / bp.p - c.real("kappa");
  validate(bp);
  return bp;
}

CheckConfig check_config(const Config& c, const std::string& id) {
  CheckConfig cfg = default_check_config(id);
  auto real = [&](const char* key, double& field) {
    if (c.is_set(key)) field = c.real(key);
  };
  auto integer = [&](const char* key, int& field) {
    if (c.is_set(key)) field = static_cast<int>(c.integer(key));
  };
  auto list = [&](const char* key, std::vector<double>& field) {
    if (c.is_set(key)) field = c.real_list(key);
  };
  auto flag = [&](const char* key, bool& field) {
    if (c.is_set(key)) field = c.flag(key);
  };
  integer("verify.n", cfg.n);
  real("verify.box_length", cfg.box_length);
  integer("verify.j_lo", cfg.j_lo);
  integer("verify.j_hi", cfg.j_hi);
  list("verify.p", cfg.p);
  list("verify.s", cfg.s);
  list("verify.t", cfg.t);
  list("verify.alpha", cfg.alpha);
  list("verify.kappa", cfg.kappa);
  list("verify.gamma", cfg.gamma);
  list("verify.sigma", cfg.sigma);
  list("verify.c", cfg.c);
  list("verify.amplitudes", cfg.amplitudes);
  real("verify.delta", cfg.delta);
  real("verify.beta", cfg.beta);
  real("verify.lambda", cfg.lambda);
  real("verify.gamma_margin", cfg.gamma_margin);
  integer("verify.trials", cfg.trials);
  if (c.is_set("verify.seed")) cfg.seed = static_cast<std::uint64_t>(c.integer("verify.seed"));
  real("verify.slope_slack", cfg.slope_slack);
  real("verify.constant_cap", cfg.constant_cap);
  integer("verify.max_order", cfg.max_order);
  real("verify.bump_sharpness", cfg.bump_sharpness);
  flag("verify.padding", cfg.padding);
  flag("verify.allow_boundary", cfg.allow_boundary);
  real("verify.dt", cfg.dt);
  real("verify.t_end", cfg.t_end);
  integer("verify.picard_depth", cfg.picard_depth);
  real("verify.picard_amplitude", cfg.picard_amplitude);
  integer("verify.record_every", cfg.record_every);
  if (c.is_set("verify.initial")) cfg.initial_kind = c.text("verify.initial");
  if (cfg.trials < 1) throw ConfigError("verify.trials must be at least 1");
  return cfg;
}

}  // namespace sqg
