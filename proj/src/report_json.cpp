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

#include "motionsim/report_json.hpp"

#include <cmath>

#include "motionsim/error.hpp"
#include "motionsim/io.hpp"
#include "motionsim/manifest.hpp"

namespace motionsim {

namespace {

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json number_or_null(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json parse(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

template <typename T>
T field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(where + ": missing field '" + key + "'");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ParseError(where + ": field '" + key + "' has the wrong type");
  }
}

Measure measure_field(const Json& obj, const std::string& where) {
  const auto name = field<std::string>(obj, "measure", where);
  const auto m = parse_measure(name);
  if (!m) throw ParseError(where + ": unknown measure '" + name + "'");
  return *m;
}

Json group_json(const GroupScore& g) {
  Json j;
  j["group_label"] = g.group_label;
  j["measure"] = to_string(g.measure);
  j["mean_discrepancy"] = number_or_null(g.mean_discrepancy);
  j["std_discrepancy"] = g.std_discrepancy;
  j["n"] = g.n;
  return j;
}

}  // namespace

Json to_json(const Params& params) {
  Json out = Json::object();
  for (const auto& [key, value] : params) {
    std::visit([&](const auto& v) { out[key] = v; }, value);
  }
  return out;
}

Json to_json(const MeasureResult& r) {
  Json j;
  j["measure"] = to_string(r.measure);
  j["discrepancy"] = r.discrepancy;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["params"] = to_json(r.params);
  j["objective_trace"] = r.objective_trace;
  Json path;
  path["mode"] = r.path.mode == PathMode::kHard ? "hard" : "soft";
  if (r.path.mode == PathMode::kHard) {
    Json pairs = Json::array();
    for (const auto& [i, jj] : r.path.pairs) pairs.push_back({i, jj});
    path["pairs"] = std::move(pairs);
  } else {
    path["weights"] = matrix_json(r.path.weights);
  }
  j["path"] = std::move(path);
  if (r.transform) {
    Json t;
    t["kind"] = "orthonormal_linear_plus_translation";
    t["matrix"] = matrix_json(r.transform->matrix);
    t["offset"] = vector_json(r.transform->offset);
    j["transform"] = std::move(t);
  }
  return j;
}

Json to_json(const ScoreReport& report) {
  Json j;
  j["schema_version"] = report.schema_version;
  j["normalization"] = to_string(report.normalization);
  Json rows = Json::array();
  for (const auto& r : report.per_pair) {
    Json row;
    row["pair_id"] = r.pair_id;
    row["group_label"] = r.group_label;
    row["measure"] = to_string(r.measure);
    row["discrepancy"] = number_or_null(r.discrepancy);
    row["converged"] = r.converged;
    row["iterations"] = r.iterations;
    row["wall_time_ms"] = r.wall_time_ms;
    if (!r.ok()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  j["per_pair"] = std::move(rows);
  Json groups = Json::array();
  for (const auto& g : report.per_group) groups.push_back(group_json(g));
  j["per_group"] = std::move(groups);
  return j;
}

Json to_json(const std::vector<RankAgreement>& agreements) {
  Json out = Json::array();
  for (const auto& a : agreements) {
    Json j;
    j["measure"] = to_string(a.measure);
    j["kendall_tau"] = a.kendall_tau;
    j["spearman_rho"] = a.spearman_rho;
    j["ordering_quant"] = a.ordering_quant;
    j["ordering_survey"] = a.ordering_survey;
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const SynthSpec& spec) {
  Json j;
  j["base"] = to_string(spec.base);
  j["dim_a"] = spec.dim_a;
  j["dim_b"] = spec.dim_b;
  j["length"] = spec.length;
  j["transform"] = to_string(spec.transform);
  j["warp"] = to_string(spec.warp);
  j["noise_sigma"] = spec.noise_sigma;
  j["seed"] = spec.seed;
  j["sample_rate_hz"] = spec.sample_rate_hz;
  return j;
}

Json to_json(const GroundTruth& truth) {
  Json j;
  j["linear"] = matrix_json(truth.linear);
  j["translation"] = vector_json(truth.translation);
  if (truth.hidden_weights.size() > 0) {
    j["hidden_weights"] = matrix_json(truth.hidden_weights);
    j["hidden_bias"] = vector_json(truth.hidden_bias);
    j["readout"] = matrix_json(truth.readout);
  }
  j["warp"] = truth.warp;
  return j;
}

Json to_json(const StudySummary& summary) {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  Json levels = Json::array();
  for (const auto& l : summary.levels) {
    Json level;
    level["label"] = l.label;
    level["severity"] = l.severity;
    level["pairs"] = l.specs.size();
    levels.push_back(std::move(level));
  }
  j["levels"] = std::move(levels);
  Json trends = Json::array();
  for (const auto& t : summary.trends) {
    Json trend;
    trend["measure"] = to_string(t.measure);
    trend["kendall_tau"] = t.kendall_tau;
    Json groups = Json::array();
    for (const auto& g : t.groups) groups.push_back(group_json(g));
    trend["groups"] = std::move(groups);
    trends.push_back(std::move(trend));
  }
  j["measures"] = std::move(trends);
  j["report"] = to_json(summary.report);
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

ScoreReport report_from_json(const std::string& text) {
  const Json doc = parse(text, "score report");
  ScoreReport report;
  report.schema_version = field<int>(doc, "schema_version", "score report");
  if (report.schema_version != kReportSchemaVersion) {
    throw ParseError("unsupported report schema_version " +
                     std::to_string(report.schema_version));
  }
  if (doc.contains("normalization")) {
    report.normalization = parse_normalization(
        field<std::string>(doc, "normalization", "score report"));
  }
  for (const auto& row : field<Json>(doc, "per_pair", "score report")) {
    PairScore r;
    r.pair_id = field<std::string>(row, "pair_id", "per_pair row");
    r.group_label = field<std::string>(row, "group_label", "per_pair row");
    r.measure = measure_field(row, "per_pair row");
    r.discrepancy = row.at("discrepancy").is_null()
                        ? std::numeric_limits<double>::quiet_NaN()
                        : field<double>(row, "discrepancy", "per_pair row");
    r.converged = field<bool>(row, "converged", "per_pair row");
    r.iterations = field<long>(row, "iterations", "per_pair row");
    r.wall_time_ms = field<double>(row, "wall_time_ms", "per_pair row");
    if (row.contains("error")) {
      r.error = field<std::string>(row, "error", "per_pair row");
    }
    report.per_pair.push_back(std::move(r));
  }
  for (const auto& g : field<Json>(doc, "per_group", "score report")) {
    GroupScore s;
    s.group_label = field<std::string>(g, "group_label", "per_group row");
    s.measure = measure_field(g, "per_group row");
    s.mean_discrepancy =
        g.at("mean_discrepancy").is_null()
            ? std::numeric_limits<double>::quiet_NaN()
            : field<double>(g, "mean_discrepancy", "per_group row");
    s.std_discrepancy = field<double>(g, "std_discrepancy", "per_group row");
    s.n = field<long>(g, "n", "per_group row");
    report.per_group.push_back(std::move(s));
  }
  if (report.normalization == Normalization::kRaw) verify_aggregates(report);
  return report;
}

ScoreReport load_report(const std::filesystem::path& path) {
  return report_from_json(read_file(path));
}

SynthSpec synth_spec_from_doc(const Json& doc) {
  if (!doc.is_object()) throw ParseError("synth spec must be a JSON object");
  const std::string where = "synth spec";
  SynthSpec s;
  for (const auto& [key, value] : doc.items()) {
    if (key == "base") {
      s.base = parse_synth_base(field<std::string>(doc, "base", where));
    } else if (key == "dim_a") {
      s.dim_a = field<Index>(doc, "dim_a", where);
    } else if (key == "dim_b") {
      s.dim_b = field<Index>(doc, "dim_b", where);
    } else if (key == "length" || key == "T") {
      s.length = value.get<Index>();
    } else if (key == "transform") {
      s.transform =
          parse_synth_transform(field<std::string>(doc, "transform", where));
    } else if (key == "warp") {
      s.warp = parse_synth_warp(field<std::string>(doc, "warp", where));
    } else if (key == "noise_sigma") {
      s.noise_sigma = field<double>(doc, "noise_sigma", where);
    } else if (key == "seed") {
      s.seed = field<std::uint64_t>(doc, "seed", where);
    } else if (key == "sample_rate_hz") {
      s.sample_rate_hz = field<double>(doc, "sample_rate_hz", where);
    } else {
      throw ParseError(where + ": unknown field '" + key + "'");
    }
  }
  s.validate();
  return s;
}

SynthSpec synth_spec_from_json(const std::string& text) {
  return synth_spec_from_doc(parse(text, "synth spec"));
}

StudyPlan study_plan_from_json(const std::string& text) {
  const Json doc = parse(text, "study plan");
  const std::string where = "study plan";
  const SynthSpec base =
      synth_spec_from_doc(field<Json>(doc, "template", where));
  const auto sigmas = field<std::vector<double>>(doc, "noise_levels", where);
  const int pairs = field<int>(doc, "pairs_per_level", where);

  StudyPlan plan;
  plan.levels = noise_sweep(base, sigmas, pairs);
  plan.measures =
      parse_measure_list(field<Json>(doc, "measures", where).dump());
  return plan;
}

}  // namespace motionsim
