#include "ropelab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ropelab/error.hpp"

namespace ropelab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

KeyValues KeyValues::parse(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(line_no) + ": expected `key = value`");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw InputError("config line " + std::to_string(line_no) + ": empty key");
    if (kv.entries_.count(key)) throw InputError("config key `" + key + "` given twice");
    kv.entries_.emplace(std::move(key), std::move(value));
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<std::string> KeyValues::take(const std::string& key) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  std::string v = std::move(it->second);
  entries_.erase(it);
  return v;
}

void KeyValues::expect_consumed() const {
  if (entries_.empty()) return;
  std::string names;
  for (const auto& [k, v] : entries_) names += (names.empty() ? "" : ", ") + k;
  throw InvalidParameter("unknown config key(s): " + names);
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw InvalidParameter("config key `" + key + "`: not a finite number: " + value);
  }
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw InvalidParameter("config key `" + key + "`: not an integer: " + value);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::rope: return "rope";
    case Scheme::power: return "power";
    case Scheme::truncated: return "truncated";
    case Scheme::randomized: return "randomized";
    case Scheme::xpos: return "xpos";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  if (s == "rope" || s == "linear") return Scheme::rope;
  if (s == "power") return Scheme::power;
  if (s == "truncated") return Scheme::truncated;
  if (s == "randomized") return Scheme::randomized;
  if (s == "xpos") return Scheme::xpos;
  throw InvalidParameter("unknown encoding scheme: " + std::string(s));
}

Precision parse_precision(std::string_view s) {
  if (s == "wide") return Precision::wide;
  if (s == "narrow") return Precision::narrow;
  throw InvalidParameter("precision_mode must be wide or narrow, got " + std::string(s));
}

FrequencyBasis EncodingConfig::basis() const {
  switch (scheme) {
    case Scheme::power: return power_basis(d, base, PowerParams{power_k});
    case Scheme::truncated: return truncated_basis(d, base, trunc);
    default: return rope_basis(d, base);
  }
}

std::optional<XPosParams> EncodingConfig::xpos() const {
  if (scheme != Scheme::xpos) return std::nullopt;
  return default_xpos(d, xpos_gamma, xpos_scale_base, precision);
}

PositionSchedule EncodingConfig::positions(std::size_t n, Phase phase, Rng* rng) const {
  const double scale = phase == Phase::train ? scale_train : eval_scale();
  if (scheme != Scheme::randomized) {
    return linear_positions(n, ScaleParams{scale, std::nullopt});
  }
  Rng own(seed);
  PositionSchedule s = randomized_positions(n, rand, rng ? *rng : own);
  if (!(scale > 0.0)) throw InvalidParameter("position scale factors must be > 0");
  for (double& p : s.positions) p /= scale;
  return s;
}

void EncodingConfig::validate() const {
  if (d < 2 || d % 2 != 0) throw InvalidDimension("d must be even and >= 2");
  if (!(scale_train > 0.0) || !(eval_scale() > 0.0)) {
    throw InvalidParameter("scale_train and scale_eval must be > 0");
  }
  (void)basis();  // throws on invalid basis parameters
  if (scheme == Scheme::randomized) {
    if (!(rand.epsilon > 0.0) || !(rand.epsilon < rand.upper)) {
      throw InvalidParameter("randomized gaps need 0 < rand_epsilon < rand_upper");
    }
  }
  if (scheme == Scheme::xpos) (void)xpos();
}

EncodingConfig EncodingConfig::from_key_values(KeyValues& kv) {
  EncodingConfig c;
  auto num = [&kv](const char* key, double& dst) {
    if (auto v = kv.take(key)) dst = parse_double(key, *v);
  };
  if (auto v = kv.take("scheme")) c.scheme = parse_scheme(*v);
  if (auto v = kv.take("d")) c.d = static_cast<int>(parse_int("d", *v));
  num("base", c.base);
  num("scale_train", c.scale_train);
  if (auto v = kv.take("scale_eval")) c.scale_eval = parse_double("scale_eval", *v);
  num("power_k", c.power_k);
  num("trunc_a", c.trunc.a);
  num("trunc_b", c.trunc.b);
  num("trunc_rho", c.trunc.rho);
  num("rand_epsilon", c.rand.epsilon);
  num("rand_upper", c.rand.upper);
  num("xpos_gamma", c.xpos_gamma);
  num("xpos_scale_base", c.xpos_scale_base);
  if (auto v = kv.take("precision_mode")) c.precision = parse_precision(*v);
  if (auto v = kv.take("seed")) c.seed = static_cast<std::uint64_t>(parse_int("seed", *v));
  return c;
}

EncodingConfig EncodingConfig::parse(std::string_view text) {
  KeyValues kv = KeyValues::parse(text);
  EncodingConfig c = from_key_values(kv);
  kv.expect_consumed();
  c.validate();
  return c;
}

void EncodingConfig::write_key_values(
    std::vector<std::pair<std::string, std::string>>& out) const {
  out.emplace_back("scheme", std::string(to_string(scheme)));
  out.emplace_back("d", std::to_string(d));
  out.emplace_back("base", format_double(base));
  out.emplace_back("scale_train", format_double(scale_train));
  out.emplace_back("scale_eval", format_double(eval_scale()));
  out.emplace_back("power_k", format_double(power_k));
  out.emplace_back("trunc_a", format_double(trunc.a));
  out.emplace_back("trunc_b", format_double(trunc.b));
  out.emplace_back("trunc_rho", format_double(trunc.rho));
  out.emplace_back("rand_epsilon", format_double(rand.epsilon));
  out.emplace_back("rand_upper", format_double(rand.upper));
  out.emplace_back("xpos_gamma", format_double(xpos_gamma));
  out.emplace_back("xpos_scale_base", format_double(xpos_scale_base));
  out.emplace_back("precision_mode", std::string(to_string(precision)));
  out.emplace_back("seed", std::to_string(seed));
}

std::string EncodingConfig::to_text() const {
  std::vector<std::pair<std::string, std::string>> kv;
  write_key_values(kv);
  std::string out;
  for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
  return out;
}

}  // namespace ropelab
