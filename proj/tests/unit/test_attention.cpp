#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "ropelab/attention.hpp"
#include "ropelab/error.hpp"

using namespace ropelab;

namespace {

Matrix random_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

oracle::Rows rows_of(const Matrix& m) {
  oracle::Rows out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
  }
  return out;
}

PositionSchedule integer_positions(int n, double offset = 0.0) {
  PositionSchedule s;
  for (int j = 0; j < n; ++j) s.positions.push_back(offset + j);
  return s;
}

}  // namespace

TEST_CASE("rotation identities") {
  Rng rng(1);
  const Matrix x = random_matrix(rng, 5, 8);
  const auto basis = rope_basis(8, 10000);
  PositionSchedule zeros;
  zeros.positions.assign(5, 0.0);
  CHECK(apply_rotary(x, zeros, basis) == x);

  FrequencyBasis dead = truncated_basis(8, 10000, {2.0, 3.0, 2.5});
  CHECK(apply_rotary(x, integer_positions(5, 100), dead) == x);

  Matrix unit(1, 2);
  unit << 1.0, 0.0;
  PositionSchedule quarter;
  quarter.positions = {std::numbers::pi / 2 / rope_basis(2, 10000).freqs[0]};
  const Matrix r = apply_rotary(unit, quarter, rope_basis(2, 10000));
  CHECK(std::fabs(r(0, 0)) < 1e-9);
  CHECK(std::fabs(r(0, 1) - 1.0) < 1e-9);
}

TEST_CASE("rotation preserves pair norms and matches the loop oracle") {
  Rng rng(2);
  const Matrix x = random_matrix(rng, 12, 32);
  const auto basis = power_basis(32, 10000, {0.5});
  const auto sched = integer_positions(12, 37);
  const Matrix r = apply_rotary(x, sched, basis);
  const auto want = oracle::rotate(rows_of(x), sched.positions, basis.freqs);
  for (int j = 0; j < 12; ++j) {
    for (int i = 0; i < 16; ++i) {
      const double n0 = std::hypot(x(j, 2 * i), x(j, 2 * i + 1));
      const double n1 = std::hypot(r(j, 2 * i), r(j, 2 * i + 1));
      CHECK(std::fabs(n0 - n1) < 1e-9);
      CHECK(std::fabs(r(j, 2 * i) - want[j][2 * i]) < 1e-12);
      CHECK(std::fabs(r(j, 2 * i + 1) - want[j][2 * i + 1]) < 1e-12);
    }
  }
}

TEST_CASE("rotation shape errors") {
  Rng rng(3);
  CHECK_THROWS_AS(apply_rotary(random_matrix(rng, 3, 8), integer_positions(4), rope_basis(8, 10000)),
                  ShapeError);
  CHECK_THROWS_AS(apply_rotary(random_matrix(rng, 3, 6), integer_positions(3), rope_basis(8, 10000)),
                  ShapeError);
}

TEST_CASE("scores without rotation") {
  Rng rng(4);
  const Matrix q = random_matrix(rng, 4, 8);
  PositionSchedule zeros;
  zeros.positions.assign(4, 0.0);
  const ScoreMatrix s = scores(q, q, zeros, rope_basis(8, 10000), std::nullopt);
  for (int m = 0; m < 4; ++m) {
    CHECK(s.values(m, m) == doctest::Approx(q.row(m).squaredNorm() / std::sqrt(8.0)).epsilon(1e-14));
    for (int n = m + 1; n < 4; ++n) CHECK(std::isinf(s.values(m, n)));
  }
  CHECK_FALSE(s.post_softmax);
}

TEST_CASE("scores match the loop oracle") {
  Rng rng(5);
  const Matrix q = random_matrix(rng, 16, 32), k = random_matrix(rng, 16, 32);
  const auto basis = rope_basis(32, 10000);
  const auto sched = integer_positions(16, 3);
  const ScoreMatrix s = scores(q, k, sched, basis, std::nullopt);
  const auto want = oracle::scores(rows_of(q), rows_of(k), sched.positions, basis.freqs, true);
  for (int m = 0; m < 16; ++m) {
    for (int n = 0; n <= m; ++n) CHECK(std::fabs(s.values(m, n) - want[m][n]) < 1e-10);
  }
}

TEST_CASE("identity xPos decay leaves scores bitwise unchanged") {
  Rng rng(6);
  const Matrix q = random_matrix(rng, 10, 16), k = random_matrix(rng, 10, 16);
  const auto basis = rope_basis(16, 10000);
  const auto sched = integer_positions(10, 50);
  XPosParams ones{std::vector<double>(8, 1.0), 512.0, Precision::wide};
  const ScoreMatrix plain = scores(q, k, sched, basis, std::nullopt);
  const ScoreMatrix x = scores(q, k, sched, basis, ones);
  for (int m = 0; m < 10; ++m) {
    for (int n = 0; n <= m; ++n) CHECK(plain.values(m, n) == x.values(m, n));
  }
}

TEST_CASE("xPos scores carry the relative amplitude") {
  Rng rng(7);
  const int d = 16;
  const Matrix q = random_matrix(rng, 6, d), k = random_matrix(rng, 6, d);
  const auto basis = rope_basis(d, 10000);
  const auto sched = integer_positions(6, 1000);
  const XPosParams xp = default_xpos(d);
  const ScoreMatrix s = scores(q, k, sched, basis, xp);
  const Matrix rq = apply_rotary(q, sched, basis), rk = apply_rotary(k, sched, basis);
  for (int m = 0; m < 6; ++m) {
    for (int n = 0; n <= m; ++n) {
      double want = 0.0;
      for (int i = 0; i < d / 2; ++i) {
        const double amp = std::pow(xp.decay[i], (m - n) / xp.scale_base);
        want += amp * (rq(m, 2 * i) * rk(n, 2 * i) + rq(m, 2 * i + 1) * rk(n, 2 * i + 1));
      }
      want /= std::sqrt(double(d));
      CHECK(std::fabs(s.values(m, n) - want) <= 1e-9 * std::max(1.0, std::fabs(want)));
    }
    // Diagonal equals plain RoPE.
    const double plain = rq.row(m).dot(rk.row(m)) / std::sqrt(double(d));
    CHECK(std::fabs(s.values(m, m) - plain) <= 1e-12 * std::max(1.0, std::fabs(plain)));
  }
}

TEST_CASE("narrow xPos overflow propagates from scores") {
  Rng rng(8);
  const Matrix q = random_matrix(rng, 2, 8), k = random_matrix(rng, 2, 8);
  PositionSchedule far;
  far.positions = {32767.0, 32768.0};
  const auto xp = default_xpos(8, 0.4, 512.0, Precision::narrow);
  CHECK_THROWS_AS(scores(q, k, far, rope_basis(8, 10000), xp), NumericOverflow);
}

TEST_CASE("softmax rows") {
  ScoreMatrix s;
  s.causal = false;
  s.values = Matrix::Constant(1, 4, 0.3);
  const auto u = softmax_rows(s);
  for (int c = 0; c < 4; ++c) CHECK(u.values(0, c) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(u.post_softmax);

  s.values = Matrix(1, 2);
  s.values << 1000.0, 1000.0;
  const auto big = softmax_rows(s);
  CHECK(big.values(0, 0) == 0.5);
  CHECK(big.values(0, 1) == 0.5);

  Rng rng(9);
  const Matrix q = random_matrix(rng, 8, 8), k = random_matrix(rng, 8, 8);
  const auto p = softmax_rows(scores(q, k, integer_positions(8), rope_basis(8, 100), std::nullopt));
  for (int m = 0; m < 8; ++m) {
    CHECK(std::fabs(p.values.row(m).sum() - 1.0) < 1e-9);
    for (int n = m + 1; n < 8; ++n) CHECK(p.values(m, n) == 0.0);
  }
  CHECK(p.fully_masked_rows == 0);
}

TEST_CASE("fully masked rows become zeros and are counted") {
  ScoreMatrix s;
  s.causal = false;
  s.values = Matrix::Constant(2, 2, -INFINITY);
  s.values(1, 0) = 0.0;
  const auto p = softmax_rows(s);
  CHECK(p.fully_masked_rows == 1);
  CHECK(p.values(0, 0) == 0.0);
  CHECK(p.values(0, 1) == 0.0);
  CHECK(p.values(1, 0) == 1.0);
}

TEST_CASE("attend") {
  Rng rng(10);
  SUBCASE("single token returns its value row") {
    const Matrix q = random_matrix(rng, 1, 8), k = random_matrix(rng, 1, 8), v = random_matrix(rng, 1, 5);
    const Matrix o = attend(q, k, v, integer_positions(1), rope_basis(8, 10000));
    for (int c = 0; c < 5; ++c) CHECK(o(0, c) == doctest::Approx(v(0, c)).epsilon(1e-15));
  }
  SUBCASE("uniform scores average the value rows") {
    const Matrix q = Matrix::Zero(4, 8), k = random_matrix(rng, 4, 8);
    const Matrix v = Matrix::Identity(4, 4);
    const Matrix o = attend(q, k, v, integer_positions(4), rope_basis(8, 10000));
    for (int m = 0; m < 4; ++m) {
      for (int c = 0; c < 4; ++c) {
        const double want = c <= m ? 1.0 / (m + 1) : 0.0;
        CHECK(std::fabs(o(m, c) - want) < 1e-15);
      }
    }
  }
  SUBCASE("matches the three-loop reference") {
    const Matrix q = random_matrix(rng, 16, 32), k = random_matrix(rng, 16, 32),
                 v = random_matrix(rng, 16, 32);
    const auto basis = rope_basis(32, 10000);
    const auto sched = integer_positions(16);
    const Matrix o = attend(q, k, v, sched, basis);
    const auto want = oracle::attend(rows_of(q), rows_of(k), rows_of(v), sched.positions, basis.freqs);
    for (int m = 0; m < 16; ++m) {
      for (int c = 0; c < 32; ++c) CHECK(std::fabs(o(m, c) - want[m][c]) < 1e-8);
    }
  }
}

TEST_CASE("relative shift invariance for every fixed basis") {
  Rng rng(11);
  const int d = 64;
  for (const auto& basis : {rope_basis(d, 10000), power_basis(d, 10000, {0.5}),
                            truncated_basis(d, 10000, TruncationParams{})}) {
    for (int trial = 0; trial < 50; ++trial) {
      Matrix q = random_matrix(rng, 2, d), k = random_matrix(rng, 2, d);
      q.rowwise().normalize();
      k.rowwise().normalize();
      const double shift = std::floor(rng.uniform(1, 5000));
      PositionSchedule a, b;
      a.positions = {3.0, 17.0};
      b.positions = {3.0 + shift, 17.0 + shift};
      const auto sa = scores(q, k, a, basis, std::nullopt);
      const auto sb = scores(q, k, b, basis, std::nullopt);
      CHECK(std::fabs(sa.values(1, 0) - sb.values(1, 0)) <= 1e-6);
    }
  }
}

TEST_CASE("score statistics and CSV dump") {
  ScoreMatrix s;
  s.values = Matrix(2, 2);
  s.values << 1.0, -INFINITY, -3.0, 2.0;
  const ScoreStats st = score_stats(s);
  CHECK(st.count == 3);
  CHECK(st.min == -3.0);
  CHECK(st.max == 2.0);
  CHECK(st.max_abs == 3.0);
  CHECK(st.mean == doctest::Approx(0.0));
  std::ostringstream os;
  write_scores_csv(os, s);
  CHECK(os.str() == "1,\n-3,2\n");
}
