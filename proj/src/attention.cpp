#include "ropelab/attention.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "ropelab/error.hpp"

namespace ropelab {

RotaryTable make_rotary_table(const PositionSchedule& schedule, const FrequencyBasis& basis,
                              const std::optional<XPosParams>& xpos) {
  const auto n = static_cast<Eigen::Index>(schedule.size());
  const auto half = static_cast<Eigen::Index>(basis.freqs.size());
  RotaryTable t;
  t.cos.resize(n, half);
  t.sin.resize(n, half);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pos = schedule.positions[j];
    for (Eigen::Index i = 0; i < half; ++i) {
      const double angle = pos * basis.freqs[i];
      t.cos(j, i) = std::cos(angle);
      t.sin(j, i) = std::sin(angle);
    }
  }
  if (xpos) {
    t.query_amp.resize(n, half);
    t.key_amp.resize(n, half);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto q = xpos_query_scale(basis.d, *xpos, schedule.positions[j]);
      const auto k = xpos_key_scale(basis.d, *xpos, schedule.positions[j]);
      for (Eigen::Index i = 0; i < half; ++i) {
        t.query_amp(j, i) = q[i];
        t.key_amp(j, i) = k[i];
      }
    }
  }
  return t;
}

void rotate_inplace(Eigen::Ref<Matrix> x, const RotaryTable& t, const Matrix* amp) {
  const Eigen::Index half = t.pairs();
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    for (Eigen::Index i = 0; i < half; ++i) {
      const double c = t.cos(j, i), s = t.sin(j, i);
      const double a = x(j, 2 * i), b = x(j, 2 * i + 1);
      double ra = a * c - b * s;
      double rb = a * s + b * c;
      if (amp) {
        ra *= (*amp)(j, i);
        rb *= (*amp)(j, i);
      }
      x(j, 2 * i) = ra;
      x(j, 2 * i + 1) = rb;
    }
  }
}

void rotate_transpose_inplace(Eigen::Ref<Matrix> x, const RotaryTable& t, const Matrix* amp) {
  const Eigen::Index half = t.pairs();
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    for (Eigen::Index i = 0; i < half; ++i) {
      const double c = t.cos(j, i), s = t.sin(j, i);
      double a = x(j, 2 * i), b = x(j, 2 * i + 1);
      if (amp) {
        a *= (*amp)(j, i);
        b *= (*amp)(j, i);
      }
      x(j, 2 * i) = a * c + b * s;
      x(j, 2 * i + 1) = -a * s + b * c;
    }
  }
}

namespace {

void check_rotary_shapes(const Matrix& x, const PositionSchedule& schedule,
                         const FrequencyBasis& basis) {
  if (x.cols() % 2 != 0) throw ShapeError("rotary input needs an even column count");
  if (x.cols() != basis.d) {
    throw ShapeError("rotary input has " + std::to_string(x.cols()) +
                     " columns but the basis has d=" + std::to_string(basis.d));
  }
  if (static_cast<std::size_t>(x.rows()) != schedule.size()) {
    throw ShapeError("position schedule length " + std::to_string(schedule.size()) +
                     " does not match " + std::to_string(x.rows()) + " rows");
  }
}

void round_narrow(Matrix& x, const char* what) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double r = round_to_half(x.data()[i]);
    if (!std::isfinite(r)) {
      throw NumericOverflow(std::string("xPos-scaled ") + what +
                            " entry exceeds the half-precision range");
    }
    x.data()[i] = r;
  }
}

}  // namespace

HeadTensor apply_rotary(const HeadTensor& x, const PositionSchedule& schedule,
                        const FrequencyBasis& basis) {
  check_rotary_shapes(x, schedule, basis);
  HeadTensor out = x;
  rotate_inplace(out, make_rotary_table(schedule, basis));
  return out;
}

ScoreMatrix scores_from_rotated(const Matrix& q_rot, const Matrix& k_rot, bool causal) {
  if (q_rot.rows() != k_rot.rows() || q_rot.cols() != k_rot.cols()) {
    throw ShapeError("query and key shapes differ");
  }
  ScoreMatrix s;
  s.causal = causal;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(q_rot.cols()));
  s.values.noalias() = q_rot * k_rot.transpose();
  s.values *= inv_sqrt_d;
  if (causal) {
    const double ninf = -std::numeric_limits<double>::infinity();
    for (Eigen::Index m = 0; m < s.values.rows(); ++m) {
      for (Eigen::Index n = m + 1; n < s.values.cols(); ++n) s.values(m, n) = ninf;
    }
  }
  return s;
}

ScoreMatrix scores(const HeadTensor& q, const HeadTensor& k, const PositionSchedule& schedule,
                   const FrequencyBasis& basis, const std::optional<XPosParams>& xpos,
                   bool causal) {
  check_rotary_shapes(q, schedule, basis);
  check_rotary_shapes(k, schedule, basis);
  const RotaryTable table = make_rotary_table(schedule, basis, xpos);
  Matrix qr = q, kr = k;
  rotate_inplace(qr, table, table.has_xpos() ? &table.query_amp : nullptr);
  rotate_inplace(kr, table, table.has_xpos() ? &table.key_amp : nullptr);
  if (xpos && xpos->precision == Precision::narrow) {
    round_narrow(qr, "query");
    round_narrow(kr, "key");
  }
  return scores_from_rotated(qr, kr, causal);
}

ScoreMatrix softmax_rows(const ScoreMatrix& s) {
  ScoreMatrix out = s;
  out.post_softmax = true;
  out.fully_masked_rows = 0;
  if (s.post_softmax) return out;
  for (Eigen::Index m = 0; m < s.values.rows(); ++m) {
    auto row = out.values.row(m);
    double mx = -std::numeric_limits<double>::infinity();
    for (Eigen::Index n = 0; n < row.size(); ++n) mx = std::max(mx, row(n));
    if (mx == -std::numeric_limits<double>::infinity()) {
      row.setZero();
      ++out.fully_masked_rows;
      continue;
    }
    double sum = 0.0;
    for (Eigen::Index n = 0; n < row.size(); ++n) {
      const double e = row(n) == -std::numeric_limits<double>::infinity()
                           ? 0.0
                           : std::exp(row(n) - mx);
      row(n) = e;
      sum += e;
    }
    row /= sum;
  }
  return out;
}

HeadTensor attend(const HeadTensor& q, const HeadTensor& k, const HeadTensor& v,
                  const PositionSchedule& schedule, const FrequencyBasis& basis,
                  const std::optional<XPosParams>& xpos, bool causal) {
  if (v.rows() != k.rows()) throw ShapeError("value rows must match key rows");
  const ScoreMatrix p = softmax_rows(scores(q, k, schedule, basis, xpos, causal));
  return p.values * v;
}

ScoreStats score_stats(const ScoreMatrix& s) {
  ScoreStats st;
  st.min = std::numeric_limits<double>::infinity();
  st.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (Eigen::Index m = 0; m < s.values.rows(); ++m) {
    for (Eigen::Index n = 0; n < s.values.cols(); ++n) {
      if (ScoreMatrix::masked(s, m, n)) continue;
      const double v = s.values(m, n);
      st.min = std::min(st.min, v);
      st.max = std::max(st.max, v);
      st.max_abs = std::max(st.max_abs, std::fabs(v));
      sum += v;
      ++st.count;
    }
  }
  if (st.count) st.mean = sum / static_cast<double>(st.count);
  return st;
}

void write_scores_csv(std::ostream& os, const ScoreMatrix& s) {
  char buf[64];
  for (Eigen::Index m = 0; m < s.values.rows(); ++m) {
    for (Eigen::Index n = 0; n < s.values.cols(); ++n) {
      if (n) os << ',';
      if (ScoreMatrix::masked(s, m, n)) continue;
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s.values(m, n));
      os.write(buf, ptr - buf);
    }
    os << '\n';
  }
}

}  // namespace ropelab
