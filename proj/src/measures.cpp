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

#include "motionsim/measures.hpp"

#include <string>
#include <utility>

#include "common.hpp"
#include "motionsim/error.hpp"

namespace motionsim {

namespace internal {

void record_config(Params& params, const HeteroMeasureConfig& cfg,
                   bool soft) {
  if (soft) params["gamma"] = cfg.gamma;
  params["max_outer_iters"] = cfg.max_outer_iters;
  params["tol"] = cfg.tol;
  params["init"] = std::string(to_string(cfg.init));
  params["self_metric"] = std::string(to_string(cfg.self_metric));
  if (cfg.band.radius) params["band"] = *cfg.band.radius;
}

}  // namespace internal

namespace {

double as_double(const std::string& key, const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* l = std::get_if<long>(&v)) return static_cast<double>(*l);
  throw ParameterError("parameter '" + key + "' must be numeric");
}

long as_long(const std::string& key, const ParamValue& v) {
  if (const auto* l = std::get_if<long>(&v)) return *l;
  if (const auto* d = std::get_if<double>(&v)) {
    if (*d == static_cast<double>(static_cast<long>(*d))) {
      return static_cast<long>(*d);
    }
  }
  throw ParameterError("parameter '" + key + "' must be an integer");
}

const std::string& as_string(const std::string& key, const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  throw ParameterError("parameter '" + key + "' must be a string");
}

}  // namespace

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::kSqEuclidean:
      return "sq_euclidean";
    case Metric::kEuclidean:
      return "euclidean";
    case Metric::kPrecomputed:
      return "precomputed";
  }
  return "?";
}

std::string_view to_string(InitMode m) {
  return m == InitMode::kDiagonalPath ? "diagonal_path" : "uniform";
}

std::string_view to_string(SelfMetric m) {
  return m == SelfMetric::kEuclidean ? "euclidean" : "sq_euclidean";
}

Metric parse_metric(std::string_view name) {
  if (name == "sq_euclidean") return Metric::kSqEuclidean;
  if (name == "euclidean") return Metric::kEuclidean;
  throw ParameterError("unknown metric '" + std::string(name) +
                       "' (valid: sq_euclidean, euclidean)");
}

InitMode parse_init(std::string_view name) {
  if (name == "diagonal_path") return InitMode::kDiagonalPath;
  if (name == "uniform") return InitMode::kUniform;
  throw ParameterError("unknown init '" + std::string(name) +
                       "' (valid: diagonal_path, uniform)");
}

SelfMetric parse_self_metric(std::string_view name) {
  if (name == "euclidean") return SelfMetric::kEuclidean;
  if (name == "sq_euclidean") return SelfMetric::kSqEuclidean;
  throw ParameterError("unknown self metric '" + std::string(name) + "'");
}

MeasureSpec measure_spec_from_params(Measure measure, const Params& params) {
  MeasureSpec spec;
  spec.measure = measure;
  for (const auto& [key, value] : params) {
    if (key == "gamma") {
      spec.cfg.gamma = as_double(key, value);
    } else if (key == "max_outer_iters" || key == "max_iters") {
      spec.cfg.max_outer_iters = as_long(key, value);
    } else if (key == "tol") {
      spec.cfg.tol = as_double(key, value);
    } else if (key == "init") {
      spec.cfg.init = parse_init(as_string(key, value));
    } else if (key == "self_metric") {
      spec.cfg.self_metric = parse_self_metric(as_string(key, value));
    } else if (key == "metric") {
      spec.metric = parse_metric(as_string(key, value));
    } else if (key == "band") {
      spec.cfg.band.radius = as_double(key, value);
    } else if (key == "ctw_ridge") {
      spec.cfg.ctw_ridge = as_double(key, value);
    } else {
      throw ParameterError("unknown parameter '" + key + "' for measure " +
                           std::string(to_string(measure)));
    }
  }
  spec.cfg.validate(is_soft(measure));
  return spec;
}

MeasureResult dtw_result(const CostMatrix<double>& cost, Band band) {
  auto aligned = dtw(cost, band);
  MeasureResult r;
  r.measure = Measure::kDtw;
  r.discrepancy = aligned.cost;
  r.path = AlignmentPath::hard(std::move(aligned.path));
  r.iterations = 1;
  r.objective_trace = {aligned.cost};
  r.params["metric"] = std::string(to_string(cost.metric));
  if (band.radius) r.params["band"] = *band.radius;
  return r;
}

MeasureResult soft_dtw_result(const CostMatrix<double>& cost, double gamma,
                              Band band) {
  MeasureResult r;
  r.measure = Measure::kSoftDtw;
  r.discrepancy = soft_dtw(cost, gamma, band);
  r.path = AlignmentPath::soft(soft_alignment(cost, gamma, band).expectation);
  r.iterations = 1;
  r.objective_trace = {r.discrepancy};
  r.params["metric"] = std::string(to_string(cost.metric));
  r.params["gamma"] = gamma;
  if (band.radius) r.params["band"] = *band.radius;
  return r;
}

MeasureResult score(const Trajectory& a, const Trajectory& b,
                    const MeasureSpec& spec) {
  switch (spec.measure) {
    case Measure::kDtw:
      spec.cfg.validate(false);
      return dtw_result(pairwise_cost(a, b, spec.metric), spec.cfg.band);
    case Measure::kSoftDtw:
      spec.cfg.validate(true);
      return soft_dtw_result(pairwise_cost(a, b, spec.metric), spec.cfg.gamma,
                             spec.cfg.band);
    case Measure::kGdtw:
      return gdtw(a, b, spec.cfg);
    case Measure::kSoftGdtw:
      return soft_gdtw(a, b, spec.cfg);
    case Measure::kDtwGi:
      return dtw_gi(a, b, spec.cfg);
    case Measure::kSoftDtwGi:
      return soft_dtw_gi(a, b, spec.cfg);
    case Measure::kCtw:
      return ctw(a, b, spec.cfg);
  }
  throw ParameterError("unknown measure");
}

}  // namespace motionsim
