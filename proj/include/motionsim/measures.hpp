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

#ifndef MOTIONSIM_MEASURES_HPP_
#define MOTIONSIM_MEASURES_HPP_

#include <string_view>

#include "motionsim/alignment.hpp"
#include "motionsim/hetero.hpp"
#include "motionsim/trajectory.hpp"

namespace motionsim {

/// Solver defaults. Every run echoes the resolved values into
/// MeasureResult::params.
inline constexpr double kDefaultGamma = 0.1;
inline constexpr long kDefaultMaxOuterIters = 30;
inline constexpr double kDefaultTol = 1e-6;

/// A measure plus every parameter needed to replay it.
struct MeasureSpec {
  Measure measure = Measure::kDtw;
  Metric metric = Metric::kSqEuclidean;  // dtw / soft_dtw ground metric
  HeteroMeasureConfig cfg;
};

// Builds a spec from a parameter record. Recognized keys: gamma,
// max_outer_iters (alias max_iters), tol, init, self_metric, metric, band,
// ctw_ridge. Unknown keys throw ParameterError.
MeasureSpec measure_spec_from_params(Measure measure, const Params& params);

/// Scores one pair. dtw and soft_dtw require equal feature dimensions.
MeasureResult score(const Trajectory& a, const Trajectory& b,
                    const MeasureSpec& spec);

/// DTW over a ready cost matrix, wrapped as a MeasureResult.
MeasureResult dtw_result(const CostMatrix<double>& cost, Band band = {});
MeasureResult soft_dtw_result(const CostMatrix<double>& cost, double gamma,
                              Band band = {});

std::string_view to_string(Metric m);
std::string_view to_string(InitMode m);
std::string_view to_string(SelfMetric m);
Metric parse_metric(std::string_view name);
InitMode parse_init(std::string_view name);
SelfMetric parse_self_metric(std::string_view name);

}  // namespace motionsim

#endif  // MOTIONSIM_MEASURES_HPP_
