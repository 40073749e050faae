#include "ropelab/encoding.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ropelab/error.hpp"

namespace ropelab {

std::string_view to_string(BasisKind kind) {
  switch (kind) {
    case BasisKind::rope: return "rope";
    case BasisKind::power: return "power";
    case BasisKind::truncated: return "truncated";
  }
  return "?";
}

std::string_view to_string(Precision p) {
  return p == Precision::wide ? "wide" : "narrow";
}

namespace {

void check_dims(int d, double base) {
  if (d < 2 || d % 2 != 0) {
    throw InvalidDimension("head dimension must be even and >= 2, got " + std::to_string(d));
  }
  if (!(base > 1.0) || !std::isfinite(base)) {
    std::ostringstream os;
    os << "rotary base must be > 1, got " << base;
    throw InvalidParameter(os.str());
  }
}

}  // namespace

FrequencyBasis rope_basis(int d, double base) {
  check_dims(d, base);
  FrequencyBasis out{d, base, {}, BasisKind::rope};
  out.freqs.resize(static_cast<std::size_t>(d / 2));
  for (int i = 0; i < d / 2; ++i) {
    out.freqs[i] = std::pow(base, -2.0 * i / d);
  }
  return out;
}

FrequencyBasis power_basis(int d, double base, PowerParams params) {
  if (!(params.k >= 0.0) || !std::isfinite(params.k)) {
    throw InvalidParameter("power exponent k must be >= 0");
  }
  FrequencyBasis out = rope_basis(d, base);
  out.kind = BasisKind::power;
  const int half = d / 2;
  for (int i = 1; i <= half; ++i) {
    const double shrink = 1.0 - 2.0 * i / d;
    // 0^0 is taken as 0: the final pair is removed for every k.
    out.freqs[i - 1] = (i == half) ? 0.0 : out.freqs[i - 1] * std::pow(shrink, params.k);
  }
  return out;
}

std::vector<std::string> truncation_warnings(const TruncationParams& p) {
  std::vector<std::string> warnings;
  if (p.rho < p.a || p.rho > p.b) {
    std::ostringstream os;
    os << "truncation rho=" << p.rho << " lies outside the replaced band [" << p.a << ", "
       << p.b << "]";
    warnings.push_back(os.str());
  }
  return warnings;
}

FrequencyBasis truncated_basis(int d, double base, TruncationParams params) {
  if (!(params.a > 0.0) || !(params.b > 0.0) || !(params.a < params.b)) {
    throw InvalidParameter("truncation cutoffs must satisfy 0 < a < b");
  }
  if (!(params.rho >= 0.0) || !std::isfinite(params.rho)) {
    throw InvalidParameter("truncation rho must be >= 0");
  }
  FrequencyBasis out = rope_basis(d, base);
  out.kind = BasisKind::truncated;
  for (double& theta : out.freqs) {
    if (theta >= params.b) continue;
    theta = (theta > params.a) ? params.rho : 0.0;
  }
  return out;
}

PositionSchedule linear_positions(std::size_t n, const ScaleParams& scale) {
  if (n == 0) throw EmptySequence("position schedule needs n >= 1");
  const double x = scale.effective_eval_scale();
  if (!(x > 0.0) || !(scale.train_scale > 0.0) || !std::isfinite(x)) {
    throw InvalidParameter("position scale factors must be > 0");
  }
  PositionSchedule out;
  out.positions.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.positions[j] = static_cast<double>(j) / x;
  return out;
}

PositionSchedule randomized_positions(std::size_t n, const RandomizedParams& params,
                                      const std::function<double()>& uniform01) {
  if (n == 0) throw EmptySequence("position schedule needs n >= 1");
  if (!(params.epsilon > 0.0) || !(params.epsilon < params.upper) ||
      !std::isfinite(params.upper)) {
    throw InvalidParameter("randomized gaps need 0 < epsilon < upper");
  }
  PositionSchedule out;
  out.positions.resize(n);
  out.positions[0] = 0.0;
  const double width = params.upper - params.epsilon;
  for (std::size_t j = 1; j < n; ++j) {
    const double gap = params.epsilon + width * uniform01();
    out.positions[j] = out.positions[j - 1] + gap;
  }
  return out;
}

PositionSchedule randomized_positions(std::size_t n, const RandomizedParams& params,
                                      Rng& rng) {
  return randomized_positions(n, params, [&rng] { return rng.uniform01(); });
}

XPosParams default_xpos(int d, double gamma, double scale_base, Precision precision) {
  if (d < 2 || d % 2 != 0) throw InvalidDimension("xPos needs an even head dimension");
  if (!(gamma > 0.0) || !(scale_base > 0.0)) {
    throw InvalidParameter("xPos gamma and scale_base must be > 0");
  }
  XPosParams p;
  p.scale_base = scale_base;
  p.precision = precision;
  p.decay.resize(static_cast<std::size_t>(d / 2));
  for (int i = 0; i < d / 2; ++i) {
    p.decay[i] = (2.0 * i / d + gamma) / (1.0 + gamma);
  }
  return p;
}

double round_to_half(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  const double ax = std::fabs(x);
  // Values at or beyond the midpoint between 65504 and 65536 round to infinity.
  if (ax >= 65520.0) return std::copysign(std::numeric_limits<double>::infinity(), x);
  int exp = 0;
  std::frexp(ax, &exp);  // ax = m * 2^exp, m in [0.5, 1)
  // binary16 keeps 11 significant bits for normals; subnormals share 2^-24 spacing.
  const int quantum_exp = std::max(exp - 11, -24);
  const double quantum = std::ldexp(1.0, quantum_exp);
  return std::nearbyint(x / quantum) * quantum;
}

std::vector<double> xpos_decay(int d, const XPosParams& params, double exponent) {
  if (params.decay.size() != static_cast<std::size_t>(d / 2) || d % 2 != 0) {
    throw InvalidDimension("xPos decay length must equal d/2");
  }
  if (!(params.scale_base > 0.0)) throw InvalidParameter("xPos scale_base must be > 0");
  std::vector<double> out(params.decay.size());
  const double power = exponent / params.scale_base;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double zeta = params.decay[i];
    if (!(zeta > 0.0 && zeta <= 1.0)) throw InvalidParameter("xPos decay must lie in (0, 1]");
    double v = std::pow(zeta, power);
    if (params.precision == Precision::narrow) {
      v = round_to_half(v);
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "xPos amplitude zeta_" << (i + 1) << "^" << power
           << " exceeds the half-precision range (" << kHalfMax << ")";
        throw NumericOverflow(os.str());
      }
    } else if (!std::isfinite(v)) {
      throw NumericOverflow("xPos amplitude overflowed double precision");
    }
    out[i] = v;
  }
  return out;
}

}  // namespace ropelab
