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

#ifndef MOTIONSIM_REPORT_JSON_HPP_
#define MOTIONSIM_REPORT_JSON_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "motionsim/eval.hpp"
#include "motionsim/synth.hpp"

namespace motionsim {

using Json = nlohmann::ordered_json;

// Field order is fixed and doubles use the shortest round-trip form, so
// equal values always serialize to equal bytes.
Json to_json(const Params& params);
Json to_json(const MeasureResult& result);
Json to_json(const ScoreReport& report);
Json to_json(const std::vector<RankAgreement>& agreements);
Json to_json(const SynthSpec& spec);
Json to_json(const GroundTruth& truth);
Json to_json(const StudySummary& summary);

std::string dump(const Json& doc);  // two-space indent, trailing newline

/// Parses a ScoreReport and checks its aggregates against its rows.
ScoreReport report_from_json(const std::string& text);
ScoreReport load_report(const std::filesystem::path& path);

/// Fields default to SynthSpec's defaults when absent.
SynthSpec synth_spec_from_json(const std::string& text);
SynthSpec synth_spec_from_doc(const Json& doc);

struct StudyPlan {
  std::vector<StudyLevel> levels;
  std::vector<MeasureSpec> measures;
};

/// {"template": <synth spec>, "noise_levels": [...], "pairs_per_level": n,
///  "measures": [...]}; measures use the manifest syntax.
StudyPlan study_plan_from_json(const std::string& text);

}  // namespace motionsim

#endif  // MOTIONSIM_REPORT_JSON_HPP_
