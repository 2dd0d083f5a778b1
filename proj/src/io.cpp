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

#include "motionsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "interp.hpp"
#include "motionsim/error.hpp"

namespace motionsim {

namespace internal {

Index uniform_grid_size(double t0, double t_end, double hz) {
  return static_cast<Index>(std::floor((t_end - t0) * hz + 1e-9)) + 1;
}

Matrix interpolate_uniform(const std::vector<double>& times,
                           const Matrix& frames, double t0, double hz,
                           Index count) {
  Matrix out(count, frames.cols());
  std::size_t seg = 0;
  const std::size_t last = times.size() - 1;
  for (Index k = 0; k < count; ++k) {
    const double q = t0 + static_cast<double>(k) / hz;
    while (seg + 1 < last && times[seg + 1] <= q) ++seg;
    const double span = times[seg + 1] - times[seg];
    double frac = (q - times[seg]) / span;
    frac = std::clamp(frac, 0.0, 1.0);
    out.row(k) = (1.0 - frac) * frames.row(static_cast<Index>(seg)) +
                 frac * frames.row(static_cast<Index>(seg + 1));
  }
  return out;
}

}  // namespace internal

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view token, const std::string& source,
                    std::size_t line) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      token.empty()) {
    throw ParseError(source + ": malformed number '" + std::string(token) +
                         "'",
                     line);
  }
  if (!std::isfinite(value)) {
    throw ParseError(source + ": non-finite value", line);
  }
  return value;
}

struct Samples {
  std::vector<double> times;
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lines;
};

// Checks ordering and sampling regularity, then builds the trajectory.
Trajectory assemble(Samples s, std::vector<std::string> names,
                    const std::string& source, const LoadOptions& options,
                    const std::string& default_id) {
  if (s.rows.size() < 2) {
    throw ShapeError(source + ": need at least 2 frames, got " +
                     std::to_string(s.rows.size()));
  }
  for (std::size_t k = 1; k < s.times.size(); ++k) {
    if (!(s.times[k] > s.times[k - 1])) {
      throw OrderingError(source + ": time is not strictly increasing (line " +
                          std::to_string(s.lines[k]) + ")");
    }
  }
  const auto t_count = static_cast<Index>(s.rows.size());
  const auto d = static_cast<Index>(s.rows.front().size());
  Matrix frames(t_count, d);
  for (Index i = 0; i < t_count; ++i) {
    for (Index j = 0; j < d; ++j) frames(i, j) = s.rows[i][j];
  }

  std::vector<double> dt(s.times.size() - 1);
  for (std::size_t k = 0; k + 1 < s.times.size(); ++k) {
    dt[k] = s.times[k + 1] - s.times[k];
  }
  const double mean = std::accumulate(dt.begin(), dt.end(), 0.0) / dt.size();
  double var = 0.0;
  for (double x : dt) var += (x - mean) * (x - mean);
  const double cv = std::sqrt(var / dt.size()) / mean;

  const std::string id = options.id.empty() ? default_id : options.id;
  if (options.resample_hz) {
    const double hz = *options.resample_hz;
    if (!(hz > 0.0)) throw ParameterError("resample rate must be positive");
    const Index count =
        internal::uniform_grid_size(s.times.front(), s.times.back(), hz);
    Matrix grid = internal::interpolate_uniform(s.times, frames,
                                                s.times.front(), hz, count);
    return Trajectory(id, hz, std::move(grid), std::move(names),
                      s.times.front());
  }
  if (cv > kMaxSamplingCv) {
    throw SamplingError(source + ": irregular sampling (time step cv " +
                        format_double(cv) + " > 0.01)");
  }
  std::nth_element(dt.begin(), dt.begin() + dt.size() / 2, dt.end());
  double median = dt[dt.size() / 2];
  if (dt.size() % 2 == 0) {
    const double lower = *std::max_element(dt.begin(), dt.begin() + dt.size() / 2);
    median = 0.5 * (median + lower);
  }
  return Trajectory(id, 1.0 / median, std::move(frames), std::move(names),
                    s.times.front());
}

bool default_names(const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] != "f" + std::to_string(k)) return false;
  }
  return true;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << data;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

TrajectoryFormat format_from_extension(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".ndjson") ? TrajectoryFormat::kJsonl
                                               : TrajectoryFormat::kCsv;
}

Trajectory read_trajectory_csv(std::istream& in, const std::string& source,
                               const LoadOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> names;
  Samples s;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto cells = split(view, ',');
    if (names.empty()) {
      if (trim(cells[0]) != "t") {
        throw ParseError(source + ": header must start with 't'", line_no);
      }
      if (cells.size() < 2) {
        throw ParseError(source + ": header has no feature columns", line_no);
      }
      for (std::size_t k = 1; k < cells.size(); ++k) {
        names.emplace_back(trim(cells[k]));
      }
      continue;
    }
    if (cells.size() != names.size() + 1) {
      throw ShapeError(source + ": expected " +
                       std::to_string(names.size()) + " features, got " +
                       std::to_string(cells.size() - 1) + " (line " +
                       std::to_string(line_no) + ")");
    }
    s.times.push_back(parse_number(cells[0], source, line_no));
    std::vector<double> row(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
      row[k] = parse_number(cells[k + 1], source, line_no);
    }
    s.rows.push_back(std::move(row));
    s.lines.push_back(line_no);
  }
  if (names.empty()) throw ParseError(source + ": empty file", 0);
  if (default_names(names)) names.clear();
  return assemble(std::move(s), std::move(names), source, options, source);
}

Trajectory read_trajectory_jsonl(std::istream& in, const std::string& source,
                                 const LoadOptions& options) {
  std::string line;
  std::size_t line_no = 0;
  Samples s;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source + ": invalid JSON", line_no);
    }
    if (!obj.is_object() || !obj.contains("t") || !obj["t"].is_number() ||
        !obj.contains("features") || !obj["features"].is_array()) {
      throw ParseError(source + ": expected {\"t\": number, \"features\": [..]}",
                       line_no);
    }
    std::vector<double> row;
    for (const auto& v : obj["features"]) {
      if (!v.is_number()) {
        throw ParseError(source + ": non-numeric feature", line_no);
      }
      row.push_back(v.get<double>());
    }
    if (!s.rows.empty() && row.size() != s.rows.front().size()) {
      throw ShapeError(source + ": expected " +
                       std::to_string(s.rows.front().size()) +
                       " features, got " + std::to_string(row.size()) +
                       " (line " + std::to_string(line_no) + ")");
    }
    if (row.empty()) throw ShapeError(source + ": frame without features");
    s.times.push_back(obj["t"].get<double>());
    s.rows.push_back(std::move(row));
    s.lines.push_back(line_no);
  }
  return assemble(std::move(s), {}, source, options, source);
}

Trajectory load_trajectory(const std::filesystem::path& path,
                           TrajectoryFormat format,
                           const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  LoadOptions opts = options;
  if (opts.id.empty()) opts.id = path.stem().string();
  return format == TrajectoryFormat::kJsonl
             ? read_trajectory_jsonl(in, path.string(), opts)
             : read_trajectory_csv(in, path.string(), opts);
}

Trajectory load_trajectory(const std::filesystem::path& path,
                           const LoadOptions& options) {
  return load_trajectory(path, format_from_extension(path), options);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << 't';
  for (Index j = 0; j < t.dim(); ++j) {
    out << ',';
    if (t.feature_names().empty()) {
      out << 'f' << j;
    } else {
      out << t.feature_names()[j];
    }
  }
  out << '\n';
  for (Index i = 0; i < t.length(); ++i) {
    out << format_double(t.time_at(i));
    for (Index j = 0; j < t.dim(); ++j) {
      out << ',' << format_double(t.frames()(i, j));
    }
    out << '\n';
  }
}

void save_trajectory_csv(const std::filesystem::path& path,
                         const Trajectory& t) {
  std::ostringstream ss;
  write_trajectory_csv(ss, t);
  write_file(path, ss.str());
}

void write_trajectory_jsonl(std::ostream& out, const Trajectory& t) {
  for (Index i = 0; i < t.length(); ++i) {
    out << "{\"t\": " << format_double(t.time_at(i)) << ", \"features\": [";
    for (Index j = 0; j < t.dim(); ++j) {
      if (j > 0) out << ", ";
      out << format_double(t.frames()(i, j));
    }
    out << "]}\n";
  }
}

void write_path_csv(std::ostream& out, const AlignmentPath& path) {
  if (path.mode == PathMode::kHard) {
    out << "i,j\n";
    for (const auto& [i, j] : path.pairs) out << i << ',' << j << '\n';
    return;
  }
  out << "i,j,weight\n";
  for (Index i = 0; i < path.weights.rows(); ++i) {
    for (Index j = 0; j < path.weights.cols(); ++j) {
      if (path.weights(i, j) > 0.0) {
        out << i << ',' << j << ',' << format_double(path.weights(i, j))
            << '\n';
      }
    }
  }
}

void save_path_csv(const std::filesystem::path& path, const AlignmentPath& p) {
  std::ostringstream ss;
  write_path_csv(ss, p);
  write_file(path, ss.str());
}

SurveyTable::SurveyTable(std::vector<SurveyRow> rows) : rows_(std::move(rows)) {
  std::map<std::pair<std::string, std::string>, bool> seen;
  for (const auto& r : rows_) {
    if (!(r.mean_rating >= 1.0 && r.mean_rating <= 5.0)) {
      throw ParameterError("survey rating for " + r.model + "/" + r.question +
                           " outside [1, 5]");
    }
    if (!seen.emplace(std::pair{r.model, r.question}, true).second) {
      throw ParameterError("duplicate survey entry " + r.model + "/" +
                           r.question);
    }
    if (std::find(questions_.begin(), questions_.end(), r.question) ==
        questions_.end()) {
      questions_.push_back(r.question);
    }
  }
}

bool SurveyTable::has_model(const std::string& model) const {
  return std::any_of(rows_.begin(), rows_.end(),
                     [&](const SurveyRow& r) { return r.model == model; });
}

std::optional<double> SurveyTable::rating(const std::string& model,
                                          const std::string& question) const {
  for (const auto& r : rows_) {
    if (r.model == model && r.question == question) return r.mean_rating;
  }
  return std::nullopt;
}

double SurveyTable::model_score(const std::string& model,
                                const std::vector<std::string>& questions)
    const {
  if (!has_model(model)) {
    throw JoinError("survey has no model '" + model + "'");
  }
  const auto& qs = questions.empty() ? questions_ : questions;
  double sum = 0.0;
  for (const auto& q : qs) {
    const auto r = rating(model, q);
    if (!r) {
      throw JoinError("survey has no rating for " + model + "/" + q);
    }
    sum += *r;
  }
  return sum / static_cast<double>(qs.size());
}

SurveyTable read_survey_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<SurveyRow> rows;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto cells = split(view, ',');
    if (!header) {
      if (cells.size() != 3 || trim(cells[0]) != "model" ||
          trim(cells[1]) != "question" || trim(cells[2]) != "mean_rating") {
        throw ParseError(source + ": header must be model,question,mean_rating",
                         line_no);
      }
      header = true;
      continue;
    }
    if (cells.size() != 3) {
      throw ParseError(source + ": expected 3 columns", line_no);
    }
    rows.push_back({std::string(trim(cells[0])), std::string(trim(cells[1])),
                    parse_number(cells[2], source, line_no)});
  }
  if (!header) throw ParseError(source + ": empty survey file", 0);
  return SurveyTable(std::move(rows));
}

SurveyTable load_survey(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_survey_csv(in, path.string());
}

}  // namespace motionsim
