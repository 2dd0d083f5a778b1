// Copyright 2026 The motionsim Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <doctest.h>

#include "motionsim/alignment.hpp"
#include "motionsim/error.hpp"
#include "motionsim/hetero.hpp"
#include "motionsim/measures.hpp"
#include "motionsim/synth.hpp"
#include "oracles.hpp"

using namespace motionsim;
using oracle::traj;

namespace {

Matrix rigid(const Matrix& x, const Matrix& r, const Vector& t) {
  Matrix y = x * r.transpose();
  y.rowwise() += t.transpose();
  return y;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[k - 1]) return false;
  }
  return true;
}

double orthonormality_error(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols()))
      .cwiseAbs()
      .maxCoeff();
}

}  // namespace

TEST_SUITE("self_distance") {

TEST_CASE("hand example and degenerate input") {
  Matrix x(3, 1);
  x << 0, 1, 3;
  Matrix expect(3, 3);
  expect << 0, 1, 3, 1, 0, 2, 3, 2, 0;
  CHECK(self_distance(traj(x)) == expect);
  Matrix sq = expect.cwiseAbs2();
  CHECK(self_distance(traj(x), SelfMetric::kSqEuclidean) == sq);
  CHECK(self_distance(traj(Matrix::Constant(5, 2, 3.0))).isZero(0.0));
}

TEST_CASE("isometry invariant, symmetric, zero diagonal") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 1 + trial % 5;
    const Matrix x = oracle::gaussian(rng, 15, d);
    const Matrix y = rigid(x, oracle::random_orthogonal(rng, d),
                           oracle::gaussian(rng, d, 1));
    const Matrix dx = self_distance(traj(x));
    CHECK((dx - self_distance(traj(y))).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((dx - dx.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(dx.diagonal().isZero(0.0));
    CHECK(dx == oracle::distances(x));
  }
}

}  // TEST_SUITE

TEST_SUITE("gdtw") {

TEST_CASE("identical inputs give zero on the diagonal") {
  std::mt19937_64 rng(22);
  const auto a = traj(oracle::smooth_curve(rng, 30, 4));
  const MeasureResult r = gdtw(a, a);
  CHECK(r.discrepancy == 0.0);
  CHECK(r.path.pairs == linear_path(30, 30));
  CHECK(r.converged);
  const MeasureResult s = soft_gdtw(a, a);
  CHECK(s.discrepancy == 0.0);
}

TEST_CASE("isometry invariance including zero padding") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 3;
    const Matrix x = oracle::smooth_curve(rng, 25, d);
    Matrix padded = Matrix::Zero(25, d + 2);
    padded.leftCols(d) = x;
    const Matrix y = rigid(padded, oracle::random_orthogonal(rng, d + 2),
                           oracle::gaussian(rng, d + 2, 1));
    const MeasureResult r = gdtw(traj(x), traj(y));
    CHECK(r.discrepancy < 1e-8);
    CHECK(soft_gdtw(traj(x), traj(y)).discrepancy < 1e-8);
  }
}

TEST_CASE("objective is sandwiched by brute force and the init path") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> len(2, 5), dim(1, 3);
  for (int trial = 0; trial < 150; ++trial) {
    const Matrix x = oracle::gaussian(rng, len(rng), dim(rng));
    const Matrix y = oracle::gaussian(rng, len(rng), dim(rng));
    const Matrix dx = oracle::distances(x), dy = oracle::distances(y);
    const MeasureResult r = gdtw(traj(x), traj(y));
    const double best = oracle::brute_gromov(dx, dy);
    const double init =
        oracle::quadratic_objective(dx, dy, linear_path(x.rows(), y.rows()));
    CHECK(best <= r.discrepancy + 1e-12);
    CHECK(r.discrepancy <= init + 1e-12);
    CHECK(r.objective_trace.front() == doctest::Approx(init).epsilon(1e-12));
    CHECK(nonincreasing(r.objective_trace));
    CHECK(r.discrepancy ==
          doctest::Approx(oracle::quadratic_objective(dx, dy, r.path.pairs))
              .epsilon(1e-12));
    CHECK(validate_path(r.path, x.rows(), y.rows()));
  }
}

TEST_CASE("uniform init and band are honored") {
  std::mt19937_64 rng(25);
  const auto a = traj(oracle::smooth_curve(rng, 20, 3));
  const auto b = traj(oracle::smooth_curve(rng, 24, 2));
  HeteroMeasureConfig cfg;
  cfg.init = InitMode::kUniform;
  const MeasureResult r = gdtw(a, b, cfg);
  CHECK(validate_path(r.path, 20, 24));
  CHECK(std::get<std::string>(r.params.at("init")) == "uniform");
  cfg.init = InitMode::kDiagonalPath;
  cfg.band.radius = 3;
  const MeasureResult banded = gdtw(a, b, cfg);
  for (const auto& [i, j] : banded.path.pairs) CHECK(cfg.band.admits(i, j, 20, 24));
}

TEST_CASE("parameters are validated and recorded") {
  const auto a = traj(Matrix::Random(5, 2));
  HeteroMeasureConfig cfg;
  cfg.max_outer_iters = 0;
  CHECK_THROWS_AS(gdtw(a, a, cfg), ParameterError);
  cfg = {};
  cfg.gamma = 0.0;
  CHECK_NOTHROW(gdtw(a, a, cfg));
  CHECK_THROWS_AS(soft_gdtw(a, a, cfg), ParameterError);
  cfg = {};
  const MeasureResult r = soft_gdtw(a, a, cfg);
  CHECK(std::get<double>(r.params.at("gamma")) == 0.1);
  CHECK(std::get<long>(r.params.at("max_outer_iters")) == 30);
  CHECK(std::get<double>(r.params.at("tol")) == 1e-6);
}

TEST_CASE("max iterations reached reports non-convergence") {
  std::mt19937_64 rng(26);
  int unconverged = 0;
  for (int trial = 0; trial < 20; ++trial) {
    HeteroMeasureConfig cfg;
    cfg.max_outer_iters = 1;
    const auto a = traj(oracle::gaussian(rng, 12, 3));
    const auto b = traj(oracle::gaussian(rng, 14, 2));
    const MeasureResult r = gdtw(a, b, cfg);
    // One step per run: the configured start, the diffuse start and its
    // polish.
    CHECK(r.iterations <= 3);
    CHECK(r.objective_trace.size() <= 3);
    unconverged += r.converged ? 0 : 1;
  }
  CHECK(unconverged > 0);
}

TEST_CASE("soft variant at small gamma agrees with the hard one") {
  std::mt19937_64 rng(27);
  std::uniform_int_distribution<int> len(2, 5), dim(1, 3);
  HeteroMeasureConfig cfg;
  cfg.gamma = 1e-4;
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = traj(oracle::gaussian(rng, len(rng), dim(rng)));
    const auto b = traj(oracle::gaussian(rng, len(rng), dim(rng)));
    CHECK(std::abs(soft_gdtw(a, b, cfg).discrepancy - gdtw(a, b, cfg).discrepancy) < 1e-6);
  }
}

TEST_CASE("deterministic") {
  std::mt19937_64 rng(28);
  const auto a = traj(oracle::smooth_curve(rng, 30, 4));
  const auto b = traj(oracle::smooth_curve(rng, 35, 2));
  CHECK(gdtw(a, b).discrepancy == gdtw(a, b).discrepancy);
  CHECK(soft_gdtw(a, b).discrepancy == soft_gdtw(a, b).discrepancy);
}

}  // TEST_SUITE

TEST_SUITE("procrustes") {

TEST_CASE("recovers a known lift") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const Index hi = 2 + trial % 5, lo = 1 + trial % hi;
    const Matrix q0 = oracle::random_lift(rng, hi, lo);
    const Vector c0 = oracle::gaussian(rng, hi, 1);
    const Matrix y = oracle::gaussian(rng, 20, lo);
    Matrix x = y * q0.transpose();
    x.rowwise() += c0.transpose();
    std::uniform_real_distribution<double> u(0.1, 2.0);
    Vector w(20);
    for (Index k = 0; k < 20; ++k) w(k) = u(rng);
    const FeatureTransform t = fit_transform(x, y, w);
    double residual = 0.0;
    for (Index k = 0; k < 20; ++k) {
      residual += w(k) * (x.row(k).transpose() - (t.matrix * y.row(k).transpose() + t.offset)).squaredNorm();
    }
    CHECK(residual < 1e-16);
    CHECK(orthonormality_error(t.matrix) < 1e-10);
  }
}

TEST_CASE("identity fit") {
  std::mt19937_64 rng(32);
  const Matrix x = oracle::gaussian(rng, 10, 3);
  const FeatureTransform t = fit_transform(x, x, Vector::Ones(10));
  CHECK((t.matrix - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(t.offset.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("degenerate inputs") {
  std::mt19937_64 rng(33);
  const Matrix x = oracle::gaussian(rng, 10, 3);
  const Matrix flat = Matrix::Constant(10, 2, 1.5);
  try {
    fit_transform(x, flat, Vector::Ones(10));
    FAIL("expected degenerate geometry");
  } catch (const DegenerateGeometryError& e) {
    CHECK(e.rank() == 0);
  }
  Matrix line(10, 2);
  line.col(0) = oracle::gaussian(rng, 10, 1);
  line.col(1) = 2.0 * line.col(0);
  try {
    fit_transform(x, line, Vector::Ones(10));
    FAIL("expected degenerate geometry");
  } catch (const DegenerateGeometryError& e) {
    CHECK(e.rank() == 1);
  }
  CHECK_THROWS_AS(fit_transform(flat, x, Vector::Ones(10)), ShapeError);
  CHECK_THROWS_AS(fit_transform(x, x, Vector::Zero(10)), ParameterError);
}

TEST_CASE("coupled fit equals the weighted fit on a hard coupling") {
  std::mt19937_64 rng(34);
  const Matrix x = oracle::gaussian(rng, 8, 4), y = oracle::gaussian(rng, 6, 2);
  const IndexPairs path = linear_path(8, 6);
  const Matrix coupling = AlignmentPath::hard(path).coupling(8, 6);
  Matrix xr(path.size(), 4), yr(path.size(), 2);
  for (std::size_t k = 0; k < path.size(); ++k) {
    xr.row(Index(k)) = x.row(path[k].first);
    yr.row(Index(k)) = y.row(path[k].second);
  }
  const FeatureTransform a = fit_transform_coupled(x, y, coupling);
  const FeatureTransform b = fit_transform(xr, yr, Vector::Ones(Index(path.size())));
  CHECK((a.matrix - b.matrix).norm() < 1e-12);
  CHECK((a.offset - b.offset).norm() < 1e-12);
}

}  // TEST_SUITE

TEST_SUITE("dtw_gi") {

TEST_CASE("identical inputs give zero at the first iteration") {
  std::mt19937_64 rng(41);
  const auto a = traj(oracle::smooth_curve(rng, 30, 3));
  const MeasureResult r = dtw_gi(a, a);
  CHECK(r.discrepancy == 0.0);
  CHECK(r.objective_trace.front() == 0.0);
  CHECK(soft_dtw_gi(a, a).discrepancy < 1e-20);
}

TEST_CASE("rigid copies are recovered") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + trial % 4;
    const Matrix x = oracle::smooth_curve(rng, 40, d);
    const Matrix y = rigid(x, oracle::random_orthogonal(rng, d),
                           oracle::gaussian(rng, d, 1));
    const MeasureResult r = dtw_gi(traj(x), traj(y));
    CHECK(r.discrepancy < 1e-8);
    REQUIRE(r.transform.has_value());
    CHECK(orthonormality_error(r.transform->matrix) < 1e-10);
    CHECK(soft_dtw_gi(traj(x), traj(y)).discrepancy < 1e-6);
  }
}

TEST_CASE("projection is bounded by the zero-padded dtw") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = oracle::smooth_curve(rng, 30, 3);
    const Matrix y = x.leftCols(2);
    Matrix padded = Matrix::Zero(30, 3);
    padded.leftCols(2) = y;
    const double bound = dtw(pairwise_cost(x, padded)).cost;
    const MeasureResult r = dtw_gi(traj(x), traj(y));
    CHECK(r.discrepancy <= bound + 1e-12);
    // Direct recomputation under the reported lift.
    Matrix lifted = y * r.transform->matrix.transpose();
    lifted.rowwise() += r.transform->offset.transpose();
    CHECK(r.discrepancy ==
          doctest::Approx(path_cost(pairwise_cost(x, lifted).values, r.path.pairs))
              .epsilon(1e-12));
  }
}

TEST_CASE("lower-dimensional first argument is swapped") {
  std::mt19937_64 rng(44);
  const auto a = traj(oracle::smooth_curve(rng, 20, 2));
  const auto b = traj(oracle::smooth_curve(rng, 25, 4));
  const MeasureResult r = dtw_gi(a, b);
  CHECK(std::get<bool>(r.params.at("swapped")));
  CHECK(validate_path(r.path, 20, 25));
  CHECK(r.transform->matrix.rows() == 4);
  CHECK(r.transform->matrix.cols() == 2);
  const MeasureResult s = dtw_gi(b, a);
  CHECK_FALSE(std::get<bool>(s.params.at("swapped")));
  CHECK(s.discrepancy == r.discrepancy);
}

TEST_CASE("soft variant at small gamma agrees with the hard one") {
  std::mt19937_64 rng(45);
  HeteroMeasureConfig cfg;
  cfg.gamma = 1e-4;
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix x = oracle::smooth_curve(rng, 5, 3);
    const Matrix y = oracle::smooth_curve(rng, 4 + trial % 2, 2);
    const MeasureResult hard = dtw_gi(traj(x), traj(y), cfg);
    const MeasureResult soft = soft_dtw_gi(traj(x), traj(y), cfg);
    CHECK(std::abs(hard.discrepancy - soft.discrepancy) < 1e-6);
    CHECK((hard.transform->matrix - soft.transform->matrix).norm() < 1e-3);
  }
}

TEST_CASE("zero-variance side raises a geometry error") {
  std::mt19937_64 rng(46);
  const auto a = traj(oracle::smooth_curve(rng, 20, 3));
  const auto flat = traj(Matrix::Constant(20, 2, 0.5));
  CHECK_THROWS_AS(dtw_gi(a, flat), DegenerateGeometryError);
}

}  // TEST_SUITE

TEST_SUITE("ctw") {

TEST_CASE("identical inputs give zero") {
  std::mt19937_64 rng(51);
  const auto a = traj(oracle::smooth_curve(rng, 40, 3));
  CHECK(ctw(a, a).discrepancy < 1e-20);
}

TEST_CASE("linear maps are recovered") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 4;
    const Matrix x = oracle::smooth_curve(rng, 50, d);
    Matrix m = oracle::gaussian(rng, d, d);
    m.diagonal().array() += 2.0;
    const MeasureResult r = ctw(traj(x), traj(Matrix(x * m.transpose())));
    CHECK(r.discrepancy < 1e-4);
    CHECK(r.converged);
    CHECK(std::get<long>(r.params.at("shared_dim")) == d);
  }
}

TEST_CASE("zero-variance channel raises a geometry error") {
  std::mt19937_64 rng(53);
  Matrix x = oracle::smooth_curve(rng, 20, 3);
  x.col(1).setConstant(2.0);
  CHECK_THROWS_AS(ctw(traj(x), traj(oracle::smooth_curve(rng, 20, 2))),
                  DegenerateGeometryError);
}

// The two discrepancies live on different scales (squared distance gaps vs
// unit-variance projections), so each is read relative to the same measure
// on an unrelated pair of equal shape, and compared over the whole suite.
TEST_CASE("gdtw stays below ctw on the nonlinear suite") {
  double g_sum = 0.0;
  double c_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SynthSpec spec;
    spec.dim_a = 6;
    spec.dim_b = 3;
    spec.length = 60;
    spec.transform = SynthTransform::kNonlinearMlpLike;
    spec.warp = SynthWarp::kRandomMonotone;
    spec.seed = seed;
    const SyntheticPair p = generate_pair(spec);
    spec.seed = seed + 1000;
    const SyntheticPair q = generate_pair(spec);
    const double g = gdtw(p.a, p.b).discrepancy / gdtw(p.a, q.b).discrepancy;
    const double c = ctw(p.a, p.b).discrepancy / ctw(p.a, q.b).discrepancy;
    MESSAGE("seed " << seed << ": gdtw=" << g << " ctw=" << c);
    g_sum += g;
    c_sum += c;
  }
  CHECK(g_sum < c_sum);
}

}  // TEST_SUITE

TEST_SUITE("paths") {

TEST_CASE("every measure emits valid paths") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> len(8, 50), dim(1, 4);
  for (int trial = 0; trial < 12; ++trial) {
    const Index da = dim(rng);
    const Index db = trial % 2 == 0 ? da : dim(rng);
    const Index ta = len(rng), tb = len(rng);
    const auto a = traj(oracle::smooth_curve(rng, ta, da) +
                        0.05 * oracle::gaussian(rng, ta, da));
    const auto b = traj(oracle::smooth_curve(rng, tb, db) +
                        0.05 * oracle::gaussian(rng, tb, db));
    for (Measure m : kAllMeasures) {
      if (da != db && (m == Measure::kDtw || m == Measure::kSoftDtw)) continue;
      MeasureSpec spec;
      spec.measure = m;
      const MeasureResult r = score(a, b, spec);
      CAPTURE(to_string(m));
      CHECK(validate_path(r.path, ta, tb));
      CHECK(std::isfinite(r.discrepancy));
      if (!is_soft(m)) CHECK(r.discrepancy >= 0.0);
    }
  }
}

}  // TEST_SUITE
