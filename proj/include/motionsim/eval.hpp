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

#ifndef MOTIONSIM_EVAL_HPP_
#define MOTIONSIM_EVAL_HPP_

#include <limits>
#include <string>
#include <vector>

#include "motionsim/io.hpp"
#include "motionsim/manifest.hpp"
#include "motionsim/trajectory.hpp"

namespace motionsim {

inline constexpr int kReportSchemaVersion = 1;

struct PairScore {
  std::string pair_id;
  std::string group_label;
  Measure measure = Measure::kDtw;
  double discrepancy = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  long iterations = 0;
  double wall_time_ms = 0.0;
  std::string error;  // empty when the pair scored

  bool ok() const { return error.empty(); }
};

struct GroupScore {
  std::string group_label;
  Measure measure = Measure::kDtw;
  double mean_discrepancy = 0.0;
  double std_discrepancy = 0.0;  // sample standard deviation, 0 when n < 2
  long n = 0;
};

enum class Normalization { kRaw, kMinMaxPerMeasure };

struct ScoreReport {
  int schema_version = kReportSchemaVersion;
  Normalization normalization = Normalization::kRaw;
  std::vector<PairScore> per_pair;
  std::vector<GroupScore> per_group;
};

/// Group statistics over the successful rows, ordered by group label then
/// measure.
std::vector<GroupScore> aggregate(const std::vector<PairScore>& rows);

// Throws ParseError unless per_group matches aggregate(per_pair) to 1e-12.
void verify_aggregates(const ScoreReport& report);

struct BatchOptions {
  int workers = 1;
  // Wall time varies run to run; when off, wall_time_ms stays 0 and reports
  // are byte-identical across reruns.
  bool record_timing = false;
};

/// Scores every (pair, measure) after the manifest's preprocessing. Load
/// failures abort; preprocessing and solver failures become annotated rows.
ScoreReport run_batch(const MotionPairManifest& manifest,
                      const BatchOptions& options = {});

/// kMinMaxPerMeasure maps each measure's group means affinely onto [0, 1]
/// (rows and std follow the same map).
ScoreReport normalize_scores(const ScoreReport& report, Normalization mode);

std::string_view to_string(Normalization n);
Normalization parse_normalization(std::string_view name);

/// Tie-corrected Kendall tau-b. Returns 0 when either side is fully tied.
double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y);
/// Pearson correlation of average ranks. 0 when either side is fully tied.
double spearman_rho(const std::vector<double>& x, const std::vector<double>& y);
/// 1-based average ranks (ties share the mean rank).
std::vector<double> average_ranks(const std::vector<double>& x);

struct RankAgreement {
  Measure measure = Measure::kDtw;
  std::vector<std::string> ordering_quant;   // ascending mean discrepancy
  std::vector<std::string> ordering_survey;  // descending survey score
  double kendall_tau = 0.0;
  double spearman_rho = 0.0;
};

/// One entry per measure in the report. Survey scores average `questions`
/// (all when empty); lower discrepancy and higher rating both rank better.
std::vector<RankAgreement> rank_agreement(
    const ScoreReport& report, const SurveyTable& survey,
    const std::vector<std::string>& questions = {});

}  // namespace motionsim

#endif  // MOTIONSIM_EVAL_HPP_
