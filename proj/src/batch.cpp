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
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

#include "common.hpp"
#include "motionsim/error.hpp"
#include "motionsim/eval.hpp"

namespace motionsim {

namespace {

auto group_key(const std::string& label, Measure m) {
  return std::make_tuple(label, static_cast<int>(m));
}

struct PairInputs {
  std::optional<Trajectory> a;
  std::optional<Trajectory> b;
};

void score_pair(const MotionPairManifest& manifest, const ManifestEntry& entry,
                const PairInputs& raw, const BatchOptions& options,
                PairScore* rows) {
  std::optional<std::pair<Trajectory, Trajectory>> prepared;
  std::string prep_error;
  try {
    prepared = apply_pipeline(*raw.a, *raw.b, manifest.preprocessing);
  } catch (const Error& e) {
    prep_error = std::string("preprocessing: ") + e.what();
  }
  for (std::size_t k = 0; k < manifest.measures.size(); ++k) {
    PairScore& row = rows[k];
    row.pair_id = entry.pair_id;
    row.group_label = entry.group_label;
    row.measure = manifest.measures[k].measure;
    if (!prepared) {
      row.error = prep_error;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      const MeasureResult r =
          score(prepared->first, prepared->second, manifest.measures[k]);
      row.discrepancy = r.discrepancy;
      row.converged = r.converged;
      row.iterations = r.iterations;
    } catch (const Error& e) {
      row.error = e.what();
    }
    if (options.record_timing) {
      row.wall_time_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    }
  }
}

}  // namespace

std::vector<GroupScore> aggregate(const std::vector<PairScore>& rows) {
  std::map<std::tuple<std::string, int>, std::vector<double>> buckets;
  for (const auto& r : rows) {
    auto& bucket = buckets[group_key(r.group_label, r.measure)];
    if (r.ok()) bucket.push_back(r.discrepancy);
  }
  std::vector<GroupScore> out;
  for (const auto& [key, values] : buckets) {
    GroupScore g;
    g.group_label = std::get<0>(key);
    g.measure = static_cast<Measure>(std::get<1>(key));
    g.n = static_cast<long>(values.size());
    if (g.n > 0) {
      double sum = 0.0;
      for (double v : values) sum += v;
      g.mean_discrepancy = sum / double(g.n);
    } else {
      g.mean_discrepancy = std::numeric_limits<double>::quiet_NaN();
    }
    if (g.n > 1) {
      double ss = 0.0;
      for (double v : values) {
        ss += (v - g.mean_discrepancy) * (v - g.mean_discrepancy);
      }
      g.std_discrepancy = std::sqrt(ss / double(g.n - 1));
    }
    out.push_back(g);
  }
  return out;
}

void verify_aggregates(const ScoreReport& report) {
  const auto expected = aggregate(report.per_pair);
  if (expected.size() != report.per_group.size()) {
    throw ParseError("report per_group does not match per_pair rows");
  }
  const auto close = [](double x, double y) {
    if (std::isnan(x) || std::isnan(y)) return std::isnan(x) && std::isnan(y);
    return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y));
  };
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const auto& e = expected[k];
    const auto& g = report.per_group[k];
    if (e.group_label != g.group_label || e.measure != g.measure ||
        e.n != g.n || !close(g.mean_discrepancy, e.mean_discrepancy) ||
        !close(g.std_discrepancy, e.std_discrepancy)) {
      throw ParseError("report group " + g.group_label + "/" +
                       std::string(to_string(g.measure)) +
                       " disagrees with its per_pair rows");
    }
  }
}

ScoreReport run_batch(const MotionPairManifest& manifest,
                      const BatchOptions& options) {
  manifest.validate();
  if (options.workers < 1) throw ParameterError("workers must be >= 1");

  // Rows are ordered by pair id, so process entries in that order.
  std::vector<const ManifestEntry*> entries;
  for (const auto& e : manifest.entries) entries.push_back(&e);
  std::sort(entries.begin(), entries.end(),
            [](const auto* x, const auto* y) { return x->pair_id < y->pair_id; });

  std::vector<PairInputs> inputs(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    inputs[k].a = load_trajectory(entries[k]->path_a);
    inputs[k].b = load_trajectory(entries[k]->path_b);
  }

  const std::size_t per_pair = manifest.measures.size();
  ScoreReport report;
  report.per_pair.resize(entries.size() * per_pair);

  internal::parallel_for(entries.size(), options.workers, [&](std::size_t k) {
    score_pair(manifest, *entries[k], inputs[k], options,
               report.per_pair.data() + k * per_pair);
  });

  report.per_group = aggregate(report.per_pair);
  return report;
}

std::string_view to_string(Normalization n) {
  return n == Normalization::kRaw ? "raw" : "minmax_per_measure";
}

Normalization parse_normalization(std::string_view name) {
  if (name == "raw") return Normalization::kRaw;
  if (name == "minmax_per_measure" || name == "minmax") {
    return Normalization::kMinMaxPerMeasure;
  }
  throw ParameterError("unknown normalization '" + std::string(name) +
                       "' (valid: raw, minmax_per_measure)");
}

ScoreReport normalize_scores(const ScoreReport& report, Normalization mode) {
  if (mode == Normalization::kRaw) return report;
  if (report.normalization != Normalization::kRaw) {
    throw ParameterError("report is already normalized");
  }
  ScoreReport out = report;
  out.normalization = mode;

  std::map<Measure, std::pair<double, double>> ranges;
  std::map<Measure, int> groups;
  for (const auto& g : report.per_group) {
    if (g.n == 0) continue;
    auto [it, fresh] = ranges.try_emplace(
        g.measure, g.mean_discrepancy, g.mean_discrepancy);
    if (!fresh) {
      it->second.first = std::min(it->second.first, g.mean_discrepancy);
      it->second.second = std::max(it->second.second, g.mean_discrepancy);
    }
    ++groups[g.measure];
  }
  for (const auto& [m, count] : groups) {
    if (count < 2) {
      throw ParameterError("min-max normalization of " +
                           std::string(to_string(m)) + " needs >= 2 groups");
    }
    const auto [lo, hi] = ranges[m];
    if (!(hi > lo)) {
      throw DegenerateScaleError("all group means of " +
                                 std::string(to_string(m)) +
                                 " are equal; min-max scale is undefined");
    }
  }

  for (auto& g : out.per_group) {
    if (g.n == 0) continue;
    const auto [lo, hi] = ranges[g.measure];
    g.mean_discrepancy = (g.mean_discrepancy - lo) / (hi - lo);
    g.std_discrepancy /= (hi - lo);
  }
  for (auto& r : out.per_pair) {
    if (!r.ok() || !ranges.count(r.measure)) continue;
    const auto [lo, hi] = ranges[r.measure];
    r.discrepancy = (r.discrepancy - lo) / (hi - lo);
  }
  return out;
}

}  // namespace motionsim
