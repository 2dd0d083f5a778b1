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

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "common.hpp"
#include "motionsim/error.hpp"
#include "motionsim/hetero.hpp"

namespace motionsim {

namespace {

// Singular values at or below this fraction of the largest are treated as
// zero when checking the cross-covariance rank.
constexpr double kRankTolerance = 1e-12;

FeatureTransform procrustes(const Vector& hi_mean, const Vector& lo_mean,
                            const Matrix& cross_cov) {
  const Index lo_dim = cross_cov.cols();
  Eigen::JacobiSVD<Matrix> svd(cross_cov,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  long rank = 0;
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) > kRankTolerance * s(0)) ++rank;
  }
  if (s.size() == 0 || s(0) <= 0.0 || rank < lo_dim) {
    throw DegenerateGeometryError(
        "cross-covariance is rank deficient: need rank " +
            std::to_string(lo_dim),
        rank);
  }
  FeatureTransform t;
  t.matrix = svd.matrixU() * svd.matrixV().transpose();
  t.offset = hi_mean - t.matrix * lo_mean;
  return t;
}

void check_dims(Index hi_dim, Index lo_dim) {
  if (lo_dim > hi_dim) {
    throw ShapeError("fit_transform lifts the lower-dimensional side: got " +
                     std::to_string(lo_dim) + " > " + std::to_string(hi_dim));
  }
}

Matrix initial_lift(Index hi_dim, Index lo_dim) {
  return Matrix::Identity(hi_dim, lo_dim);
}

Matrix apply(const FeatureTransform& t, const Matrix& lo) {
  Matrix out = lo * t.matrix.transpose();
  out.rowwise() += t.offset.transpose();
  return out;
}

struct Oriented {
  const Trajectory* hi;
  const Trajectory* lo;
  bool swapped;
};

Oriented orient(const Trajectory& a, const Trajectory& b) {
  if (a.dim() >= b.dim()) return {&a, &b, false};
  return {&b, &a, true};
}

FeatureTransform initial_transform(const Matrix& hi, const Matrix& lo) {
  FeatureTransform t;
  t.matrix = initial_lift(hi.cols(), lo.cols());
  t.offset = hi.colwise().mean().transpose() -
             t.matrix * lo.colwise().mean().transpose();
  return t;
}

void finish(MeasureResult& result, const Oriented& o, IndexPairs path,
            FeatureTransform transform) {
  result.params["swapped"] = o.swapped;
  AlignmentPath p = AlignmentPath::hard(std::move(path));
  result.path = o.swapped ? p.transposed() : std::move(p);
  result.transform = std::move(transform);
}

}  // namespace

FeatureTransform fit_transform(const Matrix& hi, const Matrix& lo,
                               const Vector& weights) {
  check_dims(hi.cols(), lo.cols());
  if (hi.rows() != lo.rows() || weights.size() != hi.rows()) {
    throw ShapeError("fit_transform needs one weight per aligned pair");
  }
  if (hi.rows() < lo.cols()) {
    throw DegenerateGeometryError(
        "fit_transform needs at least " + std::to_string(lo.cols()) +
        " aligned pairs, got " + std::to_string(hi.rows()));
  }
  if ((weights.array() < 0.0).any() || !weights.allFinite()) {
    throw ParameterError("pair weights must be finite and nonnegative");
  }
  const double total = weights.sum();
  if (!(total > 0.0)) throw ParameterError("pair weights sum to zero");

  const Vector hi_mean = hi.transpose() * weights / total;
  const Vector lo_mean = lo.transpose() * weights / total;
  const Matrix hi_c = hi.rowwise() - hi_mean.transpose();
  const Matrix lo_c = lo.rowwise() - lo_mean.transpose();
  const Matrix cross = hi_c.transpose() * weights.asDiagonal() * lo_c;
  return procrustes(hi_mean, lo_mean, cross);
}

FeatureTransform fit_transform_coupled(const Matrix& hi, const Matrix& lo,
                                       const Matrix& coupling) {
  check_dims(hi.cols(), lo.cols());
  if (coupling.rows() != hi.rows() || coupling.cols() != lo.rows()) {
    throw ShapeError("coupling must be T_hi x T_lo");
  }
  const double total = coupling.sum();
  if (!(total > 0.0)) throw ParameterError("coupling sums to zero");
  const Vector row_mass = coupling.rowwise().sum();
  const Vector col_mass = coupling.colwise().sum().transpose();
  const Vector hi_mean = hi.transpose() * row_mass / total;
  const Vector lo_mean = lo.transpose() * col_mass / total;
  const Matrix hi_c = hi.rowwise() - hi_mean.transpose();
  const Matrix lo_c = lo.rowwise() - lo_mean.transpose();
  const Matrix cross = hi_c.transpose() * coupling * lo_c;
  return procrustes(hi_mean, lo_mean, cross);
}

namespace {

// Unit-weight lift fitted on the frame pairs of `path`.
FeatureTransform fit_on_path(const Matrix& hi, const Matrix& lo,
                             const IndexPairs& path) {
  const auto count = static_cast<Index>(path.size());
  Matrix hi_rows(count, hi.cols()), lo_rows(count, lo.cols());
  for (Index k = 0; k < count; ++k) {
    hi_rows.row(k) = hi.row(path[k].first);
    lo_rows.row(k) = lo.row(path[k].second);
  }
  return fit_transform(hi_rows, lo_rows, Vector::Ones(count));
}

struct Start {
  const char* name;
  FeatureTransform transform;
};

// The centered identity lift always runs. With the diagonal_path init a
// second start fits the lift on the linear path first; it is skipped when
// that fit is degenerate.
std::vector<Start> starts(const Matrix& hi, const Matrix& lo,
                          const HeteroMeasureConfig& cfg) {
  std::vector<Start> out{{"identity", initial_transform(hi, lo)}};
  if (cfg.init == InitMode::kDiagonalPath) {
    try {
      out.push_back({"diagonal_path",
                     fit_on_path(hi, lo, linear_path(hi.rows(), lo.rows()))});
    } catch (const DegenerateGeometryError&) {
    }
  }
  return out;
}

struct Run {
  double cost = 0.0;
  IndexPairs path;
  FeatureTransform transform;
  long iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

Run hard_bcd(const Matrix& hi, const Matrix& lo, const HeteroMeasureConfig& cfg,
             FeatureTransform transform) {
  Run run;
  std::optional<HardAlignment<double>> best;
  IndexPairs previous;
  for (long it = 0; it < cfg.max_outer_iters; ++it) {
    auto aligned = dtw(pairwise_cost(hi, apply(transform, lo)), cfg.band);
    ++run.iterations;
    run.trace.push_back(aligned.cost);
    // Both block updates are exact minimizers, so the cost is nonincreasing
    // up to rounding; keep the lowest iterate.
    if (!best || aligned.cost < best->cost) {
      best = aligned;
      run.transform = transform;
    }
    if (it > 0 && aligned.path == previous) {
      run.converged = true;
      break;
    }
    if (it + 1 == cfg.max_outer_iters) break;
    transform = fit_on_path(hi, lo, aligned.path);
    previous = std::move(aligned.path);
  }
  run.cost = best->cost;
  run.path = std::move(best->path);
  return run;
}

Run soft_bcd(const Matrix& hi, const Matrix& lo, const HeteroMeasureConfig& cfg,
             FeatureTransform transform) {
  Run run;
  std::optional<double> previous;
  for (long it = 0; it < cfg.max_outer_iters; ++it) {
    const auto cost = pairwise_cost(hi, apply(transform, lo));
    const double value = soft_dtw(cost, cfg.gamma, cfg.band);
    ++run.iterations;
    run.trace.push_back(value);
    if (previous && internal::relative_change(*previous, value) < cfg.tol) {
      run.converged = true;
      break;
    }
    if (it + 1 == cfg.max_outer_iters) break;
    previous = value;
    const auto sa = soft_alignment(cost, cfg.gamma, cfg.band);
    transform = fit_transform_coupled(hi, lo, sa.expectation);
  }
  // Report on the hard scale so soft and hard variants are comparable.
  auto aligned = dtw(pairwise_cost(hi, apply(transform, lo)), cfg.band);
  run.cost = aligned.cost;
  run.path = std::move(aligned.path);
  run.transform = std::move(transform);
  return run;
}

template <typename Solver>
MeasureResult best_of_starts(Measure measure, const Trajectory& a,
                             const Trajectory& b,
                             const HeteroMeasureConfig& cfg, bool soft,
                             Solver solve) {
  const Oriented o = orient(a, b);
  const Matrix& hi = o.hi->frames();
  const Matrix& lo = o.lo->frames();

  MeasureResult result;
  result.measure = measure;
  internal::record_config(result.params, cfg, soft);

  std::optional<Run> best;
  const char* winner = "";
  for (auto& s : starts(hi, lo, cfg)) {
    Run run = solve(hi, lo, cfg, std::move(s.transform));
    if (!best || run.cost < best->cost) {
      best = std::move(run);
      winner = s.name;
    }
  }
  result.params["start"] = std::string(winner);
  result.discrepancy = best->cost;
  result.iterations = best->iterations;
  result.converged = best->converged;
  result.objective_trace = std::move(best->trace);
  finish(result, o, std::move(best->path), std::move(best->transform));
  return result;
}

}  // namespace

MeasureResult dtw_gi(const Trajectory& a, const Trajectory& b,
                     const HeteroMeasureConfig& cfg) {
  cfg.validate(false);
  return best_of_starts(Measure::kDtwGi, a, b, cfg, false, hard_bcd);
}

MeasureResult soft_dtw_gi(const Trajectory& a, const Trajectory& b,
                          const HeteroMeasureConfig& cfg) {
  cfg.validate(true);
  return best_of_starts(Measure::kSoftDtwGi, a, b, cfg, true, soft_bcd);
}

}  // namespace motionsim
