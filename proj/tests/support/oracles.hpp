#pragma once

// Independent reference computations for the tests: arbitrary-precision
// evaluations of the frequency formulas and loop-based attention.

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using HP = boost::multiprecision::cpp_dec_float_50;

inline HP hp_pi() { return boost::math::constants::pi<HP>(); }

// base^(-2(i-1)/d), i = 1..d/2
inline std::vector<HP> rope(int d, double base) {
  std::vector<HP> out;
  for (int i = 1; i <= d / 2; ++i) {
    out.push_back(boost::multiprecision::pow(HP(base), HP(-2 * (i - 1)) / HP(d)));
  }
  return out;
}

// theta_i * (1 - 2i/d)^k with 0^k := 0 for every k
inline std::vector<HP> power(int d, double base, double k) {
  auto theta = rope(d, base);
  for (int i = 1; i <= d / 2; ++i) {
    const HP x = HP(1) - HP(2 * i) / HP(d);
    theta[i - 1] = x == 0 ? HP(0) : theta[i - 1] * boost::multiprecision::pow(x, HP(k));
  }
  return theta;
}

enum class Regime { keep, rho, zero };

inline std::vector<Regime> truncation_regimes(int d, double base, const HP& a, const HP& b) {
  std::vector<Regime> out;
  for (const HP& t : rope(d, base)) {
    out.push_back(t >= b ? Regime::keep : (t > a ? Regime::rho : Regime::zero));
  }
  return out;
}

inline std::vector<HP> truncated(int d, double base, const HP& a, const HP& b, const HP& rho) {
  auto theta = rope(d, base);
  const auto reg = truncation_regimes(d, base, a, b);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (reg[i] == Regime::rho) theta[i] = rho;
    if (reg[i] == Regime::zero) theta[i] = 0;
  }
  return theta;
}

using Rows = std::vector<std::vector<double>>;

// Rotates adjacent pairs of each row by positions[j] * freqs[i], then scales
// pair i by amp[j][i] when amp is given.
inline Rows rotate(const Rows& x, const std::vector<double>& positions,
                   const std::vector<double>& freqs, const Rows* amp = nullptr) {
  Rows out = x;
  for (std::size_t j = 0; j < x.size(); ++j) {
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      const double ang = positions[j] * freqs[i];
      const double c = std::cos(ang), s = std::sin(ang);
      const double a = x[j][2 * i], b = x[j][2 * i + 1];
      double ra = a * c - b * s, rb = a * s + b * c;
      if (amp) {
        ra *= (*amp)[j][i];
        rb *= (*amp)[j][i];
      }
      out[j][2 * i] = ra;
      out[j][2 * i + 1] = rb;
    }
  }
  return out;
}

inline Rows scores(const Rows& q, const Rows& k, const std::vector<double>& positions,
                   const std::vector<double>& freqs, bool causal) {
  const Rows rq = rotate(q, positions, freqs), rk = rotate(k, positions, freqs);
  const std::size_t n = q.size(), d = q[0].size();
  Rows s(n, std::vector<double>(n, 0.0));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t c = 0; c < n; ++c) {
      if (causal && c > m) {
        s[m][c] = -INFINITY;
        continue;
      }
      double acc = 0.0;
      for (std::size_t t = 0; t < d; ++t) acc += rq[m][t] * rk[c][t];
      s[m][c] = acc / std::sqrt(static_cast<double>(d));
    }
  }
  return s;
}

inline Rows softmax(const Rows& s) {
  Rows p = s;
  for (auto& row : p) {
    double mx = -INFINITY;
    for (double v : row) mx = std::max(mx, v);
    double z = 0.0;
    for (double& v : row) {
      v = std::isinf(v) && v < 0 ? 0.0 : std::exp(v - mx);
      z += v;
    }
    for (double& v : row) v /= z;
  }
  return p;
}

inline Rows attend(const Rows& q, const Rows& k, const Rows& v,
                   const std::vector<double>& positions, const std::vector<double>& freqs) {
  const Rows p = softmax(scores(q, k, positions, freqs, true));
  Rows out(q.size(), std::vector<double>(v[0].size(), 0.0));
  for (std::size_t m = 0; m < q.size(); ++m) {
    for (std::size_t n = 0; n < v.size(); ++n) {
      for (std::size_t t = 0; t < v[0].size(); ++t) out[m][t] += p[m][n] * v[n][t];
    }
  }
  return out;
}

// Mean negative log-likelihood in 50-digit arithmetic.
inline double nll(const std::vector<std::vector<double>>& logits, const std::vector<int>& targets) {
  HP total = 0;
  int counted = 0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    if (targets[j] < 0) continue;
    HP z = 0;
    for (double v : logits[j]) z += boost::multiprecision::exp(HP(v));
    total += boost::multiprecision::log(z) - HP(logits[j][targets[j]]);
    ++counted;
  }
  return static_cast<double>(total / counted);
}

}  // namespace oracle
