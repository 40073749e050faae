#pragma once

// Frequency bases and position schedules for rotary position encodings and
// the context-extension variants built on top of them: linear position
// scaling, power-reshaped bases, truncated bases, randomized position gaps
// and xPos amplitude decay.

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ropelab/rng.hpp"

namespace ropelab {

enum class BasisKind { rope, power, truncated };

std::string_view to_string(BasisKind kind);

// Rotation frequencies theta_1..theta_{d/2}, in radians per position unit.
struct FrequencyBasis {
  int d = 0;
  double base = 10000.0;
  std::vector<double> freqs;
  BasisKind kind = BasisKind::rope;

  std::size_t pairs() const { return freqs.size(); }
};

struct PowerParams {
  double k = 0.5;
};

struct TruncationParams {
  // Defaults: keep frequencies completing a full turn within 2048 positions,
  // replace the band down to one eighth of that by a single slow frequency.
  static constexpr double kTwoPiOver2048 = 2.0 * std::numbers::pi / 2048.0;
  double a = kTwoPiOver2048 / 8.0;
  double b = kTwoPiOver2048;
  double rho = kTwoPiOver2048 / 16.0;
};

// Advisory checks that do not reject parameters (e.g. rho outside [a, b]).
std::vector<std::string> truncation_warnings(const TruncationParams& params);

struct ScaleParams {
  double train_scale = 1.0;
  std::optional<double> eval_scale;  // falls back to train_scale

  double effective_eval_scale() const { return eval_scale.value_or(train_scale); }
};

struct RandomizedParams {
  double epsilon = 1.0 / 16.0;
  double upper = 2.0;
};

enum class Precision { wide, narrow };

std::string_view to_string(Precision p);

struct XPosParams {
  std::vector<double> decay;  // zeta_i in (0, 1], one per dimension pair
  double scale_base = 512.0;  // exponent is position / scale_base
  Precision precision = Precision::wide;
};

// zeta_i = (2(i-1)/d + gamma) / (1 + gamma), i = 1..d/2.
XPosParams default_xpos(int d, double gamma = 0.4, double scale_base = 512.0,
                        Precision precision = Precision::wide);

struct PositionSchedule {
  std::vector<double> positions;

  std::size_t size() const { return positions.size(); }
};

// theta_i = base^(-2(i-1)/d).
FrequencyBasis rope_basis(int d, double base = 10000.0);

// theta_i * (1 - 2i/d)^k. The last pair (i = d/2) is always 0, including k = 0.
FrequencyBasis power_basis(int d, double base, PowerParams params);

// theta_i kept when >= b, replaced by rho when strictly between a and b,
// zeroed when <= a.
FrequencyBasis truncated_basis(int d, double base, TruncationParams params);

// positions[j] = j / eval_scale.
PositionSchedule linear_positions(std::size_t n, const ScaleParams& scale);

// Cumulative sums of i.i.d. gaps drawn from U[epsilon, upper], starting at 0.
PositionSchedule randomized_positions(std::size_t n, const RandomizedParams& params,
                                      Rng& rng);

// Same, with gaps produced by a caller-supplied U[0,1) source.
PositionSchedule randomized_positions(std::size_t n, const RandomizedParams& params,
                                      const std::function<double()>& uniform01);

// zeta_i^(exponent / scale_base) per pair. Queries use exponent = +position,
// keys use exponent = -position. In narrow mode values are rounded to IEEE
// half precision and NumericOverflow is thrown when one exceeds its range.
std::vector<double> xpos_decay(int d, const XPosParams& params, double exponent);

inline std::vector<double> xpos_query_scale(int d, const XPosParams& p, double position) {
  return xpos_decay(d, p, position);
}
inline std::vector<double> xpos_key_scale(int d, const XPosParams& p, double position) {
  return xpos_decay(d, p, -position);
}

// Largest finite IEEE binary16 value.
inline constexpr double kHalfMax = 65504.0;

// Rounds to the nearest binary16 value (ties to even); +-inf when out of range.
double round_to_half(double x);

}  // namespace ropelab
