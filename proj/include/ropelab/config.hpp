#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ropelab/encoding.hpp"

namespace ropelab {

// Flat `key = value` text. Blank lines and lines starting with '#' are
// ignored. Keys must be unique. Consumers `take` the keys they understand;
// anything left over is an error.
class KeyValues {
 public:
  static KeyValues parse(std::string_view text);
  static KeyValues load(const std::string& path);

  bool contains(const std::string& key) const { return entries_.count(key) != 0; }
  std::optional<std::string> take(const std::string& key);
  void set(const std::string& key, std::string value) { entries_[key] = std::move(value); }

  // Throws InvalidParameter naming every unconsumed key.
  void expect_consumed() const;

 private:
  std::map<std::string, std::string> entries_;
};

double parse_double(const std::string& key, const std::string& value);
std::int64_t parse_int(const std::string& key, const std::string& value);
std::string format_double(double v);  // shortest round-trip form

enum class Scheme { rope, power, truncated, randomized, xpos };

std::string_view to_string(Scheme s);
Scheme parse_scheme(std::string_view s);
Precision parse_precision(std::string_view s);

enum class Phase { train, eval };

// Everything needed to turn a sequence length into rotary angles.
// Linear scaling applies to every scheme (positions are divided by the scale).
struct EncodingConfig {
  Scheme scheme = Scheme::rope;
  int d = 16;
  double base = 10000.0;
  double scale_train = 1.0;
  std::optional<double> scale_eval;
  double power_k = 0.5;
  TruncationParams trunc;
  RandomizedParams rand;
  double xpos_gamma = 0.4;
  double xpos_scale_base = 512.0;
  Precision precision = Precision::wide;
  std::uint64_t seed = 0;

  double eval_scale() const { return scale_eval.value_or(scale_train); }

  FrequencyBasis basis() const;
  std::optional<XPosParams> xpos() const;

  // Train phase divides by scale_train; eval phase by the eval scale. For the
  // randomized scheme gaps come from `rng` when given, otherwise from `seed`.
  PositionSchedule positions(std::size_t n, Phase phase, Rng* rng = nullptr) const;

  void validate() const;

  // Keys: scheme d base scale_train scale_eval power_k trunc_a trunc_b trunc_rho
  // rand_epsilon rand_upper xpos_gamma xpos_scale_base precision_mode seed.
  static EncodingConfig from_key_values(KeyValues& kv);
  static EncodingConfig parse(std::string_view text);
  void write_key_values(std::vector<std::pair<std::string, std::string>>& out) const;
  std::string to_text() const;
};

}  // namespace ropelab
