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

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "common.hpp"
#include "motionsim/error.hpp"
#include "motionsim/hetero.hpp"

namespace motionsim {

namespace {

Matrix standardize(const Trajectory& t) {
  const Matrix& x = t.frames();
  const Vector mean = x.colwise().mean().transpose();
  Matrix z = x.rowwise() - mean.transpose();
  for (Index c = 0; c < z.cols(); ++c) {
    const double sd = std::sqrt(z.col(c).squaredNorm() / double(z.rows()));
    const double scale = 1.0 + x.col(c).cwiseAbs().maxCoeff();
    if (!(sd > 1e-12 * scale)) {
      throw DegenerateGeometryError("trajectory '" + t.id() + "' channel " +
                                    std::to_string(c) + " has zero variance");
    }
    z.col(c) /= sd;
  }
  return z;
}

// Centers and rescales to unit total variance.
Matrix unit_variance(Matrix x) {
  x.rowwise() -= x.colwise().mean();
  const double total = x.squaredNorm() / double(x.rows());
  if (!(total > 0.0)) {
    throw DegenerateGeometryError("projected sequence collapsed to a point");
  }
  return x / std::sqrt(total);
}

Matrix inverse_sqrt(const Matrix& spd) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(spd);
  const Vector& ev = eig.eigenvalues();
  if (ev.minCoeff() <= 0.0) {
    throw DegenerateGeometryError("covariance block is singular");
  }
  return eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

struct Projections {
  Matrix a;
  Matrix b;
};

// Ridge-regularized CCA on the frame pairs of `path`.
Projections cca(const Matrix& za, const Matrix& zb, const IndexPairs& path,
                double ridge, Index shared) {
  const auto count = static_cast<Index>(path.size());
  Matrix x(count, za.cols()), y(count, zb.cols());
  for (Index k = 0; k < count; ++k) {
    x.row(k) = za.row(path[k].first);
    y.row(k) = zb.row(path[k].second);
  }
  x.rowwise() -= x.colwise().mean();
  y.rowwise() -= y.colwise().mean();
  const double inv_n = 1.0 / double(count);
  Matrix cxx = x.transpose() * x * inv_n;
  Matrix cyy = y.transpose() * y * inv_n;
  cxx.diagonal().array() += ridge;
  cyy.diagonal().array() += ridge;
  const Matrix cxy = x.transpose() * y * inv_n;
  const Matrix wx = inverse_sqrt(cxx);
  const Matrix wy = inverse_sqrt(cyy);
  Eigen::JacobiSVD<Matrix> svd(wx * cxy * wy,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {wx * svd.matrixU().leftCols(shared),
          wy * svd.matrixV().leftCols(shared)};
}

struct Run {
  HardAlignment<double> aligned;
  long iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

Run alternate(const Matrix& za, const Matrix& zb, Projections proj,
              const HeteroMeasureConfig& cfg, Index shared) {
  Run run;
  IndexPairs previous;
  for (long it = 0; it < cfg.max_outer_iters; ++it) {
    run.aligned = dtw(pairwise_cost(unit_variance(za * proj.a),
                                    unit_variance(zb * proj.b)),
                      cfg.band);
    ++run.iterations;
    run.trace.push_back(run.aligned.cost);
    if (it > 0 && run.aligned.path == previous) {
      run.converged = true;
      break;
    }
    if (it + 1 == cfg.max_outer_iters) break;
    proj = cca(za, zb, run.aligned.path, cfg.ctw_ridge, shared);
    previous = run.aligned.path;
  }
  return run;
}

}  // namespace

MeasureResult ctw(const Trajectory& a, const Trajectory& b,
                  const HeteroMeasureConfig& cfg) {
  cfg.validate(false);
  const Matrix za = standardize(a);
  const Matrix zb = standardize(b);
  const Index shared = std::min(a.dim(), b.dim());

  MeasureResult result;
  result.measure = Measure::kCtw;
  internal::record_config(result.params, cfg, false);
  result.params["ctw_ridge"] = cfg.ctw_ridge;
  result.params["shared_dim"] = static_cast<long>(shared);

  // The truncated identity always runs; the diagonal_path init adds a start
  // from CCA on the linear path. The lower final cost wins.
  Run best = alternate(za, zb,
                       {Matrix::Identity(a.dim(), shared),
                        Matrix::Identity(b.dim(), shared)},
                       cfg, shared);
  std::string winner = "identity";
  if (cfg.init == InitMode::kDiagonalPath) {
    Run run = alternate(
        za, zb,
        cca(za, zb, linear_path(a.length(), b.length()), cfg.ctw_ridge, shared),
        cfg, shared);
    if (run.aligned.cost < best.aligned.cost) {
      best = std::move(run);
      winner = "diagonal_path";
    }
  }

  result.params["start"] = winner;
  result.discrepancy = best.aligned.cost;
  result.iterations = best.iterations;
  result.converged = best.converged;
  result.objective_trace = std::move(best.trace);
  result.path = AlignmentPath::hard(std::move(best.aligned.path));
  return result;
}

}  // namespace motionsim
