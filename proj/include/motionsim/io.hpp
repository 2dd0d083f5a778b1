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

#ifndef MOTIONSIM_IO_HPP_
#define MOTIONSIM_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "motionsim/trajectory.hpp"

namespace motionsim {

enum class TrajectoryFormat { kCsv, kJsonl };

// Picks the format from the file extension (.jsonl / .ndjson vs anything
// else).
TrajectoryFormat format_from_extension(const std::filesystem::path& path);

struct LoadOptions {
  // When set, irregularly sampled input is accepted and linearly resampled
  // onto a uniform grid at this rate. Otherwise a coefficient of variation of
  // the time steps above 0.01 is rejected.
  std::optional<double> resample_hz;
  // Trajectory id; defaults to the file stem.
  std::string id;
};

inline constexpr double kMaxSamplingCv = 0.01;

Trajectory load_trajectory(const std::filesystem::path& path,
                           TrajectoryFormat format,
                           const LoadOptions& options = {});
Trajectory load_trajectory(const std::filesystem::path& path,
                           const LoadOptions& options = {});

// Stream variants; `source` names the input in error messages.
Trajectory read_trajectory_csv(std::istream& in, const std::string& source,
                               const LoadOptions& options = {});
Trajectory read_trajectory_jsonl(std::istream& in, const std::string& source,
                                 const LoadOptions& options = {});

/// CSV with header t,f0,...,f{D-1} (or the stored feature names); values at
/// 17 significant digits so a reload reproduces frames bit-exactly.
void write_trajectory_csv(std::ostream& out, const Trajectory& t);
void save_trajectory_csv(const std::filesystem::path& path,
                         const Trajectory& t);
void write_trajectory_jsonl(std::ostream& out, const Trajectory& t);

/// `i,j` rows for hard paths, `i,j,weight` rows (positive weights only) for
/// soft ones.
void write_path_csv(std::ostream& out, const AlignmentPath& path);
void save_path_csv(const std::filesystem::path& path, const AlignmentPath& p);

struct SurveyRow {
  std::string model;
  std::string question;
  double mean_rating;
};

/// Per-(model, question) mean ratings on a 1-5 scale.
class SurveyTable {
 public:
  explicit SurveyTable(std::vector<SurveyRow> rows);

  const std::vector<SurveyRow>& rows() const { return rows_; }
  // Question ids in first-seen order.
  const std::vector<std::string>& questions() const { return questions_; }
  bool has_model(const std::string& model) const;
  std::optional<double> rating(const std::string& model,
                               const std::string& question) const;
  // Mean over `questions` (all questions when empty). Throws JoinError if
  // the model or any requested question is missing.
  double model_score(const std::string& model,
                     const std::vector<std::string>& questions = {}) const;

 private:
  std::vector<SurveyRow> rows_;
  std::vector<std::string> questions_;
};

SurveyTable read_survey_csv(std::istream& in, const std::string& source);
SurveyTable load_survey(const std::filesystem::path& path);

// Shared helpers for text formats.
std::string format_double(double v);  // %.17g
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& data);

}  // namespace motionsim

#endif  // MOTIONSIM_IO_HPP_
