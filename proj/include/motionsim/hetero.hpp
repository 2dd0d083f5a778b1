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

#ifndef MOTIONSIM_HETERO_HPP_
#define MOTIONSIM_HETERO_HPP_

#include <cmath>

#include <Eigen/Core>

#include "motionsim/alignment.hpp"
#include "motionsim/trajectory.hpp"

namespace motionsim {

enum class SelfMetric { kEuclidean, kSqEuclidean };
enum class InitMode { kDiagonalPath, kUniform };

/// Solver knobs shared by the heterogeneous measures.
struct HeteroMeasureConfig {
  double gamma = 0.1;
  long max_outer_iters = 30;
  double tol = 1e-6;
  InitMode init = InitMode::kDiagonalPath;
  SelfMetric self_metric = SelfMetric::kEuclidean;
  double ctw_ridge = 1e-6;
  Band band;

  // Throws ParameterError on out-of-range knobs. `needs_gamma` is set for
  // the soft variants.
  void validate(bool needs_gamma) const;
};

/// T x T intra-sequence distances. Zero diagonal, symmetric.
template <typename Derived>
MatrixX<typename Derived::Scalar> self_distance(
    const Eigen::MatrixBase<Derived>& frames,
    SelfMetric metric = SelfMetric::kEuclidean) {
  using Scalar = typename Derived::Scalar;
  const Index t = frames.rows();
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(t, t);
  for (Index k = 0; k < t; ++k) {
    for (Index i = k + 1; i < t; ++i) {
      const Scalar sq = (frames.row(i) - frames.row(k)).squaredNorm();
      d(i, k) = metric == SelfMetric::kEuclidean ? std::sqrt(sq) : sq;
      d(k, i) = d(i, k);
    }
  }
  return d;
}

inline Matrix self_distance(const Trajectory& a,
                            SelfMetric metric = SelfMetric::kEuclidean) {
  return self_distance(a.frames(), metric);
}

/// sum_{(i,j) in path} sum_{(k,l) in path} (da(i,k) - db(j,l))^2.
template <typename Scalar>
Scalar gromov_objective(const MatrixX<Scalar>& da, const MatrixX<Scalar>& db,
                        const IndexPairs& path) {
  Scalar total = 0;
  for (const auto& [i, j] : path) {
    for (const auto& [k, l] : path) {
      const Scalar diff = da(i, k) - db(j, l);
      total += diff * diff;
    }
  }
  return total;
}

/// Majorize-minimize GDTW over hard alignment paths.
MeasureResult gdtw(const Trajectory& a, const Trajectory& b,
                   const HeteroMeasureConfig& cfg = {});

/// GDTW with Soft-DTW expected alignments driving the surrogate. Reports the
/// hard objective of the path extracted from the accepted soft iterate.
MeasureResult soft_gdtw(const Trajectory& a, const Trajectory& b,
                        const HeteroMeasureConfig& cfg = {});

/// Weighted orthogonal Procrustes lift of `lo` rows (D_b features) into the
/// space of `hi` rows (D_a >= D_b features): minimizes
/// sum_k w_k * ||hi_k - (Q lo_k + c)||^2 with Q^T Q = I.
FeatureTransform fit_transform(const Matrix& hi, const Matrix& lo,
                               const Vector& weights);

/// Same fit with every (i, j) pairing of hi row i and lo row j weighted by
/// coupling(i, j).
FeatureTransform fit_transform_coupled(const Matrix& hi, const Matrix& lo,
                                       const Matrix& coupling);

/// Block-coordinate descent over DTW paths and an orthonormal lift of the
/// lower-dimensional sequence.
MeasureResult dtw_gi(const Trajectory& a, const Trajectory& b,
                     const HeteroMeasureConfig& cfg = {});

MeasureResult soft_dtw_gi(const Trajectory& a, const Trajectory& b,
                          const HeteroMeasureConfig& cfg = {});

/// Canonical Time Warping: alternating DTW and ridge-regularized CCA.
MeasureResult ctw(const Trajectory& a, const Trajectory& b,
                  const HeteroMeasureConfig& cfg = {});

}  // namespace motionsim

#endif  // MOTIONSIM_HETERO_HPP_
