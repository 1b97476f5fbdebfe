#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

/// Malformed config text, unknown key, bad value or failed validation.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every knob of every subcommand. Angles are stored in radians.
struct ExperimentConfig {
  std::string scenario = "interface";

  // [geometry]
  int size = 21;
  int segment = 21;

  // [coin]
  double theta = 0.1 * kPi;
  double theta_minus = -0.25 * kPi;
  double theta_plus = 0.25 * kPi;
  double theta_a = -0.5 * kPi;
  double theta_b = 0.25 * kPi;
  double left_end = -0.5 * kPi;
  double right_end = -0.5 * kPi;
  double delta = 0.0;
  double zeta = 0.0;
  double sigma = 0.0;

  // [initial]
  std::string initial = "default";
  int initial_x = 0;
  double initial_a_re = 0.70710678118654752;
  double initial_a_im = 0.0;
  double initial_b_re = 0.0;
  double initial_b_im = 0.70710678118654752;

  // [run]
  std::optional<int> steps;
  std::uint64_t seed = 1;
  int realizations = 50;
  double theta_lo = 0.0;
  double theta_hi = 0.2 * kPi;
  int l_min = 4;
  int l_max = 14;
  std::vector<double> thetas{0.05 * kPi, kPi / 6.0, 0.25 * kPi, kPi / 3.0, 0.4 * kPi};
  double grid_start = -0.5 * kPi;
  double grid_stop = -0.25 * kPi;
  int grid_points = 100;

  CoinPhases phases() const { return {delta, zeta, sigma}; }
};

/// Ordered (key, value) pairs as written, with section prefixes folded in
/// ("[coin]\ntheta = 1" yields ("coin.theta", "1")).
using RawSettings = std::vector<std::pair<std::string, std::string>>;

/// Parses the flat key = value format with optional [section] headers, '#' comments.
RawSettings parse_config_text(std::string_view text);
RawSettings read_config_file(const std::string& path);

/// Canonical dotted key for a bare or dotted key ("theta" -> "coin.theta").
/// Throws ConfigError for unknown keys.
std::string canonical_key(std::string_view key);

/// All canonical keys in dump order.
std::vector<std::string> config_keys();

/// True if the key holds an angle (scaled by pi under pi units).
bool is_angle_key(std::string_view canonical);

/// Applies settings in order (later wins). Angles are multiplied by pi when pi_units is set.
void apply_settings(ExperimentConfig& config, const RawSettings& settings, bool pi_units);

/// Serializes every key (17 significant digits, radians) so that parsing the
/// result reproduces the config exactly.
std::string dump_config(const ExperimentConfig& config);

/// Canonical key -> serialized value, for echoing into summaries.
std::map<std::string, std::string> config_values(const ExperimentConfig& config);

/// Checks the fields the given subcommand and scenario depend on.
void validate_config(const ExperimentConfig& config, std::string_view command);

/// Text of a double with 17 significant digits (lossless round trip).
std::string format_double(double value);

}  // namespace qwalk
