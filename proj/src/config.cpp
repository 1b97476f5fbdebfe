#include "qwalk/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace qwalk {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw ConfigError("bad value '" + text + "' for " + key);
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw ConfigError("non-finite value for " + key);
  }
  return v;
}

struct KeyDef {
  std::string key;  // section.name
  bool angle = false;
  std::function<void(ExperimentConfig&, const std::string&, double)> set;  // last arg: angle scale
  std::function<std::string(const ExperimentConfig&)> get;
};

KeyDef int_key(std::string key, int ExperimentConfig::*m) {
  return {key, false, [key, m](ExperimentConfig& c, const std::string& v, double) { c.*m = parse_number<int>(key, v); },
          [m](const ExperimentConfig& c) { return std::to_string(c.*m); }};
}

KeyDef real_key(std::string key, double ExperimentConfig::*m, bool angle) {
  return {key, angle,
          [key, m](ExperimentConfig& c, const std::string& v, double scale) { c.*m = scale * parse_number<double>(key, v); },
          [m](const ExperimentConfig& c) { return format_double(c.*m); }};
}

KeyDef string_key(std::string key, std::string ExperimentConfig::*m) {
  return {key, false, [m](ExperimentConfig& c, const std::string& v, double) { c.*m = v; },
          [m](const ExperimentConfig& c) { return c.*m; }};
}

const std::vector<KeyDef>& registry() {
  using C = ExperimentConfig;
  static const std::vector<KeyDef> keys = [] {
    std::vector<KeyDef> k;
    k.push_back(string_key("scenario", &C::scenario));
    k.push_back(int_key("geometry.size", &C::size));
    k.push_back(int_key("geometry.segment", &C::segment));
    k.push_back(real_key("coin.theta", &C::theta, true));
    k.push_back(real_key("coin.theta_minus", &C::theta_minus, true));
    k.push_back(real_key("coin.theta_plus", &C::theta_plus, true));
    k.push_back(real_key("coin.theta_a", &C::theta_a, true));
    k.push_back(real_key("coin.theta_b", &C::theta_b, true));
    k.push_back(real_key("coin.left_end", &C::left_end, true));
    k.push_back(real_key("coin.right_end", &C::right_end, true));
    k.push_back(real_key("coin.delta", &C::delta, true));
    k.push_back(real_key("coin.zeta", &C::zeta, true));
    k.push_back(real_key("coin.sigma", &C::sigma, true));
    k.push_back(string_key("initial.mode", &C::initial));
    k.push_back(int_key("initial.x", &C::initial_x));
    k.push_back(real_key("initial.a_re", &C::initial_a_re, false));
    k.push_back(real_key("initial.a_im", &C::initial_a_im, false));
    k.push_back(real_key("initial.b_re", &C::initial_b_re, false));
    k.push_back(real_key("initial.b_im", &C::initial_b_im, false));
    k.push_back({"run.steps", false,
                 [](C& c, const std::string& v, double) {
                   if (v == "auto") {
                     c.steps.reset();
                   } else {
                     c.steps = parse_number<int>("run.steps", v);
                   }
                 },
                 [](const C& c) { return c.steps ? std::to_string(*c.steps) : std::string("auto"); }});
    k.push_back({"run.seed", false,
                 [](C& c, const std::string& v, double) { c.seed = parse_number<std::uint64_t>("run.seed", v); },
                 [](const C& c) { return std::to_string(c.seed); }});
    k.push_back(int_key("run.realizations", &C::realizations));
    k.push_back(real_key("run.theta_lo", &C::theta_lo, true));
    k.push_back(real_key("run.theta_hi", &C::theta_hi, true));
    k.push_back(int_key("run.l_min", &C::l_min));
    k.push_back(int_key("run.l_max", &C::l_max));
    k.push_back({"run.thetas", true,
                 [](C& c, const std::string& v, double scale) {
                   c.thetas.clear();
                   std::stringstream ss(v);
                   std::string item;
                   while (std::getline(ss, item, ',')) c.thetas.push_back(scale * parse_number<double>("run.thetas", trim(item)));
                   if (c.thetas.empty()) throw ConfigError("run.thetas must list at least one angle");
                 },
                 [](const C& c) {
                   std::string out;
                   for (std::size_t i = 0; i < c.thetas.size(); ++i) out += (i ? "," : "") + format_double(c.thetas[i]);
                   return out;
                 }});
    k.push_back(real_key("run.grid_start", &C::grid_start, true));
    k.push_back(real_key("run.grid_stop", &C::grid_stop, true));
    k.push_back(int_key("run.grid_points", &C::grid_points));
    return k;
  }();
  return keys;
}

const KeyDef& lookup(std::string_view canonical) {
  for (const auto& k : registry()) {
    if (k.key == canonical) return k;
  }
  throw ConfigError("unknown config key '" + std::string(canonical) + "'");
}

}  // namespace

std::string canonical_key(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '-', '_');
  std::vector<const KeyDef*> matches;
  for (const auto& def : registry()) {
    if (def.key == k) return def.key;
    const auto dot = def.key.find('.');
    if (dot != std::string::npos && def.key.compare(dot + 1, std::string::npos, k) == 0) matches.push_back(&def);
  }
  if (matches.size() == 1) return matches.front()->key;
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : registry()) out.push_back(k.key);
  return out;
}

bool is_angle_key(std::string_view canonical) { return lookup(canonical).angle; }

RawSettings parse_config_text(std::string_view text) {
  RawSettings out;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    const std::string full = section.empty() ? key : section + "." + key;
    out.emplace_back(canonical_key(full), value);
  }
  return out;
}

RawSettings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_settings(ExperimentConfig& config, const RawSettings& settings, bool pi_units) {
  for (const auto& [key, value] : settings) {
    const KeyDef& def = lookup(canonical_key(key));
    def.set(config, value, def.angle && pi_units ? kPi : 1.0);
  }
}

std::string dump_config(const ExperimentConfig& config) {
  std::string out = "# qwalk config (angles in radians)\n";
  std::string section;
  for (const auto& def : registry()) {
    const auto dot = def.key.find('.');
    const std::string sec = dot == std::string::npos ? "" : def.key.substr(0, dot);
    const std::string name = dot == std::string::npos ? def.key : def.key.substr(dot + 1);
    if (sec != section) {
      out += "\n[" + sec + "]\n";
      section = sec;
    }
    out += name + " = " + def.get(config) + "\n";
  }
  return out;
}

std::map<std::string, std::string> config_values(const ExperimentConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& def : registry()) out[def.key] = def.get(config);
  return out;
}

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool one_of(std::string_view v, std::initializer_list<std::string_view> options) {
  return std::find(options.begin(), options.end(), v) != options.end();
}

void check_gapped_wire(const ExperimentConfig& c) {
  check(c.size >= 5, "geometry.size must be at least 5 for a wire");
  check(c.theta > 0.0 && c.theta < 0.5 * kPi, "coin.theta must lie in (0, pi/2)");
}

}  // namespace

void validate_config(const ExperimentConfig& c, std::string_view command) {
  if (c.steps) check(*c.steps >= 0, "run.steps must be non-negative");
  if (command == "simulate") {
    check(one_of(c.scenario, {"interface", "homogeneous", "defect", "wire"}),
          "simulate scenario must be interface, homogeneous, defect or wire");
    if (c.scenario == "interface") {
      check(c.theta_minus < 0.0 && c.theta_plus > 0.0, "interface needs theta_minus < 0 < theta_plus");
    }
    if (c.scenario == "wire") {
      check(c.size >= 3, "geometry.size must be at least 3");
      check(std::abs(std::abs(c.left_end) - 0.5 * kPi) < 1e-9 && std::abs(std::abs(c.right_end) - 0.5 * kPi) < 1e-9,
            "wire end coins must have |theta| = pi/2");
    }
    check(one_of(c.initial, {"default", "site"}), "simulate initial.mode must be default or site");
  } else if (command == "spectrum") {
    check(one_of(c.scenario, {"cycle-two-segment", "defect", "wire"}),
          "spectrum scenario must be cycle-two-segment, defect or wire");
    check(c.size >= 2, "geometry.size must be at least 2");
    if (c.scenario == "cycle-two-segment") check(c.segment >= 1 && c.segment < c.size, "geometry.segment must lie in [1, size)");
    if (c.scenario != "wire") check(c.grid_points >= 1, "run.grid_points must be positive");
  } else if (command == "rabi" || command == "analytic-check") {
    check_gapped_wire(c);
  } else if (command == "gap-scaling") {
    check(c.l_min >= 1 && c.l_max >= c.l_min, "need 1 <= run.l_min <= run.l_max");
    for (double t : c.thetas) check(t > 0.0 && t < 0.5 * kPi, "run.thetas must lie in (0, pi/2)");
  } else if (command == "disorder") {
    check(c.size >= 5, "geometry.size must be at least 5");
    check(c.theta_lo >= 0.0 && c.theta_hi <= 0.5 * kPi && c.theta_lo <= c.theta_hi,
          "disorder range must satisfy 0 <= theta_lo <= theta_hi <= pi/2");
    check(c.realizations >= 1, "run.realizations must be positive");
    check(one_of(c.initial, {"default", "left-site", "clean-psi-l"}),
          "disorder initial.mode must be left-site or clean-psi-l");
  } else {
    throw ConfigError("unknown command '" + std::string(command) + "'");
  }
}

}  // namespace qwalk
