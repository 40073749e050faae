#pragma once

#include <iosfwd>
#include <optional>

#include <Eigen/Dense>

#include "ropelab/encoding.hpp"

namespace ropelab {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

// One head's queries, keys or values: n rows (tokens) by d columns.
using HeadTensor = Matrix;

// Per-token rotation (and optional xPos amplitude) coefficients, n x d/2.
// Pair i of row j is (x[j, 2i], x[j, 2i+1]).
struct RotaryTable {
  Matrix cos;
  Matrix sin;
  Matrix query_amp;  // empty unless xPos is active
  Matrix key_amp;

  bool has_xpos() const { return query_amp.size() != 0; }
  Eigen::Index rows() const { return cos.rows(); }
  Eigen::Index pairs() const { return cos.cols(); }
};

RotaryTable make_rotary_table(const PositionSchedule& schedule, const FrequencyBasis& basis,
                              const std::optional<XPosParams>& xpos = std::nullopt);

// In-place rotation by +angle (forward) or -angle (transpose, for gradients).
// `amp` (optional, n x d/2) scales each pair after rotation.
void rotate_inplace(Eigen::Ref<Matrix> x, const RotaryTable& table, const Matrix* amp = nullptr);
void rotate_transpose_inplace(Eigen::Ref<Matrix> x, const RotaryTable& table,
                              const Matrix* amp = nullptr);

HeadTensor apply_rotary(const HeadTensor& x, const PositionSchedule& schedule,
                        const FrequencyBasis& basis);

struct ScoreMatrix {
  Matrix values;
  bool post_softmax = false;
  bool causal = true;
  // Rows with no allowed entry, filled with zeros by softmax_rows.
  int fully_masked_rows = 0;

  Eigen::Index size() const { return values.rows(); }
  static bool masked(const ScoreMatrix& s, Eigen::Index m, Eigen::Index n) {
    return s.causal && n > m;
  }
};

// S[m, n] = <rot(q_m), rot(k_n)> / sqrt(d). With xPos, q_m picks up
// zeta^(+pos_m) and k_n zeta^(-pos_n). Masked entries hold -inf.
ScoreMatrix scores(const HeadTensor& q, const HeadTensor& k, const PositionSchedule& schedule,
                   const FrequencyBasis& basis, const std::optional<XPosParams>& xpos,
                   bool causal = true);

// Pre-rotated variant used by the model: q and k already carry the rotation.
ScoreMatrix scores_from_rotated(const Matrix& q_rot, const Matrix& k_rot, bool causal);

// Max-subtracted row softmax; masked entries become exactly 0.
ScoreMatrix softmax_rows(const ScoreMatrix& s);

HeadTensor attend(const HeadTensor& q, const HeadTensor& k, const HeadTensor& v,
                  const PositionSchedule& schedule, const FrequencyBasis& basis,
                  const std::optional<XPosParams>& xpos = std::nullopt, bool causal = true);

struct ScoreStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double max_abs = 0.0;
  long count = 0;
};

// Statistics over the unmasked region.
ScoreStats score_stats(const ScoreMatrix& s);

// Row-major CSV, masked entries written as empty fields.
void write_scores_csv(std::ostream& os, const ScoreMatrix& s);

}  // namespace ropelab
