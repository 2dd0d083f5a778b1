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
#include <set>

#include "common.hpp"
#include "motionsim/error.hpp"
#include "motionsim/synth.hpp"

namespace motionsim {

std::vector<double> minmax_normalize(const std::vector<double>& values) {
  if (values.empty()) throw ParameterError("nothing to normalize");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) {
    throw DegenerateScaleError("all values are equal; min-max scale is "
                               "undefined");
  }
  std::vector<double> out;
  for (double v : values) out.push_back((v - *lo) / (*hi - *lo));
  return out;
}

std::vector<StudyLevel> noise_sweep(const SynthSpec& base,
                                    const std::vector<double>& sigmas,
                                    int pairs) {
  std::vector<StudyLevel> levels;
  for (double sigma : sigmas) {
    StudyLevel level;
    level.label = "noise=" + format_double(sigma);
    level.severity = sigma;
    for (int p = 0; p < pairs; ++p) {
      SynthSpec spec = base;
      spec.noise_sigma = sigma;
      spec.seed = base.seed + static_cast<std::uint64_t>(p);
      level.specs.push_back(spec);
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

StudySummary degradation_study(const std::vector<StudyLevel>& levels,
                               const std::vector<MeasureSpec>& measures,
                               int workers) {
  std::vector<double> severity;
  for (const auto& l : levels) severity.push_back(l.severity);
  // Validates the severity axis: all-equal levels have no order to recover.
  minmax_normalize(severity);
  if (std::set<double>(severity.begin(), severity.end()).size() !=
      severity.size()) {
    throw DegenerateScaleError("degradation levels must have distinct "
                               "severities");
  }
  if (levels.size() < 3) {
    throw ParameterError("degradation study needs at least 3 levels");
  }
  std::set<std::string> labels;
  for (const auto& l : levels) {
    if (l.specs.size() < 3) {
      throw ParameterError("level '" + l.label + "' needs at least 3 pairs");
    }
    if (!labels.insert(l.label).second) {
      throw ParameterError("duplicate level label '" + l.label + "'");
    }
  }
  if (measures.empty()) throw ParameterError("no measures to study");

  struct Job {
    const StudyLevel* level;
    const SynthSpec* spec;
    std::string pair_id;
  };
  std::vector<Job> jobs;
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (std::size_t p = 0; p < levels[l].specs.size(); ++p) {
      char id[32];
      std::snprintf(id, sizeof id, "L%03zu-P%03zu", l, p);
      jobs.push_back({&levels[l], &levels[l].specs[p], id});
    }
  }

  StudySummary summary;
  summary.levels = levels;
  auto& rows = summary.report.per_pair;
  rows.resize(jobs.size() * measures.size());
  internal::parallel_for(jobs.size(), workers, [&](std::size_t k) {
    const auto pair = generate_pair(*jobs[k].spec);
    for (std::size_t m = 0; m < measures.size(); ++m) {
      PairScore& row = rows[k * measures.size() + m];
      row.pair_id = jobs[k].pair_id;
      row.group_label = jobs[k].level->label;
      row.measure = measures[m].measure;
      try {
        const auto r = score(pair.a, pair.b, measures[m]);
        row.discrepancy = r.discrepancy;
        row.converged = r.converged;
        row.iterations = r.iterations;
      } catch (const Error& e) {
        row.error = e.what();
      }
    }
  });
  summary.report.per_group = aggregate(rows);

  for (const auto& spec : measures) {
    MeasureTrend trend;
    trend.measure = spec.measure;
    std::vector<double> sev, means;
    for (const auto& level : levels) {
      for (const auto& g : summary.report.per_group) {
        if (g.measure == spec.measure && g.group_label == level.label) {
          trend.groups.push_back(g);
          if (g.n > 0) {
            sev.push_back(level.severity);
            means.push_back(g.mean_discrepancy);
          }
        }
      }
    }
    trend.kendall_tau = sev.size() >= 2 ? kendall_tau_b(sev, means) : 0.0;
    summary.trends.push_back(std::move(trend));
  }
  return summary;
}

}  // namespace motionsim
