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

#include <utility>
#include <vector>

#include "common.hpp"
#include "motionsim/error.hpp"
#include "motionsim/hetero.hpp"

namespace motionsim {

namespace {

// Linearization of the Gromov objective at a hard path:
// C(i, j) = sum_{(k,l) in path} (da(i,k) - db(j,l))^2.
Matrix surrogate_from_path(const Matrix& da, const Matrix& db,
                           const IndexPairs& path) {
  Matrix c = Matrix::Zero(da.rows(), db.rows());
  for (Index j = 0; j < db.rows(); ++j) {
    for (Index i = 0; i < da.rows(); ++i) {
      double sum = 0.0;
      for (const auto& [k, l] : path) {
        const double diff = da(i, k) - db(j, l);
        sum += diff * diff;
      }
      c(i, j) = sum;
    }
  }
  return c;
}

// Same linearization for a dense coupling, expanded into matrix products.
Matrix surrogate_from_coupling(const Matrix& da, const Matrix& db,
                               const Matrix& coupling) {
  const Vector left = da.cwiseAbs2() * coupling.rowwise().sum();
  const Vector right = db.cwiseAbs2() * coupling.colwise().sum().transpose();
  Matrix c = -2.0 * (da * coupling * db);
  c.colwise() += left;
  c.rowwise() += right.transpose();
  return c.cwiseMax(0.0);
}

}  // namespace

void HeteroMeasureConfig::validate(bool needs_gamma) const {
  if (max_outer_iters < 1) {
    throw ParameterError("max_outer_iters must be at least 1");
  }
  if (!(tol > 0.0)) throw ParameterError("tol must be positive");
  if (!(ctw_ridge >= 0.0)) throw ParameterError("ctw ridge must be >= 0");
  if (needs_gamma && (!(gamma > 0.0) || !std::isfinite(gamma))) {
    throw ParameterError("gamma must be a positive finite number");
  }
  if (band.radius && !(*band.radius >= 1.0)) {
    throw ParameterError("band radius must be at least 1 frame");
  }
}

namespace {

struct MmRun {
  IndexPairs path;
  double objective = 0.0;
  Matrix coupling;  // empty when the iterate is a plain path
  long iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// Majorize-minimize from `path` (or from `coupling` when one is given):
// linearize at the current iterate, solve the alignment on the surrogate,
// accept only strict decreases. gamma == 0 runs hard DTW and continues from
// paths; otherwise the soft expectation is the next coupling.
MmRun majorize_minimize(const Matrix& da, const Matrix& db, IndexPairs path,
                        Matrix coupling, double gamma,
                        const HeteroMeasureConfig& cfg) {
  MmRun run;
  run.objective = gromov_objective(da, db, path);
  run.path = std::move(path);
  run.coupling = std::move(coupling);
  run.trace.push_back(run.objective);
  for (long it = 0; it < cfg.max_outer_iters; ++it) {
    IndexPairs candidate;
    Matrix next;
    if (gamma > 0.0) {
      auto sa = soft_alignment(CostMatrix<double>::precomputed(
                                   surrogate_from_coupling(da, db, run.coupling)),
                               gamma, cfg.band);
      candidate = hard_path_from_soft(sa);
      next = std::move(sa.expectation);
    } else {
      const Matrix surrogate = run.coupling.size() > 0
                                   ? surrogate_from_coupling(da, db, run.coupling)
                                   : surrogate_from_path(da, db, run.path);
      candidate =
          dtw(CostMatrix<double>::precomputed(surrogate), cfg.band).path;
    }
    ++run.iterations;
    const double obj = gromov_objective(da, db, candidate);
    if (!(obj < run.objective)) {
      // Fixed point: the linearization reproduces no better path.
      run.converged = true;
      break;
    }
    const double change = internal::relative_change(run.objective, obj);
    run.path = std::move(candidate);
    run.coupling = std::move(next);
    run.objective = obj;
    run.trace.push_back(obj);
    if (change < cfg.tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

// Runs MM from the configured init, then again from a diffuse start: soft
// MM at a temperature equal to the mean initial surrogate entry, polished
// at the working temperature. The trace keeps only iterates that improve
// on everything accepted before them.
MeasureResult solve(Measure measure, const Trajectory& a, const Trajectory& b,
                    const HeteroMeasureConfig& cfg, bool soft) {
  cfg.validate(soft);
  const Matrix da = self_distance(a, cfg.self_metric);
  const Matrix db = self_distance(b, cfg.self_metric);
  const Index n = a.length(), m = b.length();
  const double gamma = soft ? cfg.gamma : 0.0;

  MeasureResult result;
  result.measure = measure;
  internal::record_config(result.params, cfg, soft);

  IndexPairs init;
  Matrix init_coupling;
  if (cfg.init == InitMode::kDiagonalPath) {
    init = linear_path(n, m);
    init_coupling = AlignmentPath::hard(init).coupling(n, m);
  } else {
    const Matrix uniform = Matrix::Constant(n, m, 1.0 / double(n * m));
    const auto cost = CostMatrix<double>::precomputed(
        surrogate_from_coupling(da, db, uniform));
    if (soft) {
      auto sa = soft_alignment(cost, cfg.gamma, cfg.band);
      init = hard_path_from_soft(sa);
      init_coupling = std::move(sa.expectation);
    } else {
      init = dtw(cost, cfg.band).path;
      init_coupling = AlignmentPath::hard(init).coupling(n, m);
    }
  }

  MmRun best = majorize_minimize(da, db, init,
                                 soft ? init_coupling : Matrix(), gamma, cfg);
  result.iterations = best.iterations;
  result.objective_trace = best.trace;

  const double diffuse = surrogate_from_path(da, db, init).mean();
  if (best.objective > 0.0 && diffuse > 0.0) {
    MmRun warm = majorize_minimize(da, db, init, init_coupling, diffuse, cfg);
    MmRun polish = majorize_minimize(da, db, warm.path, warm.coupling, gamma,
                                     cfg);
    result.iterations += warm.iterations + polish.iterations;
    for (double v : polish.trace) {
      if (v < result.objective_trace.back()) result.objective_trace.push_back(v);
    }
    if (polish.objective < best.objective) best = std::move(polish);
  }

  result.converged = best.converged;
  result.discrepancy = best.objective;
  result.path = AlignmentPath::hard(std::move(best.path));
  return result;
}

}  // namespace

MeasureResult gdtw(const Trajectory& a, const Trajectory& b,
                   const HeteroMeasureConfig& cfg) {
  return solve(Measure::kGdtw, a, b, cfg, false);
}

MeasureResult soft_gdtw(const Trajectory& a, const Trajectory& b,
                        const HeteroMeasureConfig& cfg) {
  return solve(Measure::kSoftGdtw, a, b, cfg, true);
}

}  // namespace motionsim
