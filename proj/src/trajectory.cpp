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

#include "motionsim/trajectory.hpp"

#include <cmath>
#include <cstdlib>

#include "motionsim/error.hpp"

namespace motionsim {

Trajectory::Trajectory(std::string id, double sample_rate_hz, Matrix frames,
                       std::vector<std::string> feature_names,
                       double start_time)
    : id_(std::move(id)),
      sample_rate_hz_(sample_rate_hz),
      start_time_(start_time),
      frames_(std::move(frames)),
      feature_names_(std::move(feature_names)) {
  if (!(sample_rate_hz_ > 0.0) || !std::isfinite(sample_rate_hz_)) {
    throw ParameterError("trajectory '" + id_ +
                         "': sample rate must be positive");
  }
  if (!std::isfinite(start_time_)) {
    throw ParameterError("trajectory '" + id_ + "': start time not finite");
  }
  if (frames_.rows() < 2) {
    throw ShapeError("trajectory '" + id_ + "' needs at least 2 frames, got " +
                     std::to_string(frames_.rows()));
  }
  if (frames_.cols() < 1) {
    throw ShapeError("trajectory '" + id_ + "' has no features");
  }
  if (!frames_.allFinite()) {
    throw ParameterError("trajectory '" + id_ + "' contains NaN or Inf");
  }
  if (!feature_names_.empty() &&
      static_cast<Index>(feature_names_.size()) != frames_.cols()) {
    throw ShapeError("trajectory '" + id_ + "': " +
                     std::to_string(feature_names_.size()) +
                     " feature names for " + std::to_string(frames_.cols()) +
                     " columns");
  }
}

Trajectory Trajectory::with_frames(Matrix frames, std::string id_suffix) const {
  std::vector<std::string> names;
  if (frames.cols() == dim()) names = feature_names_;
  return Trajectory(id_ + id_suffix, sample_rate_hz_, std::move(frames),
                    std::move(names), start_time_);
}

AlignmentPath AlignmentPath::transposed() const {
  AlignmentPath out;
  out.mode = mode;
  out.pairs.reserve(pairs.size());
  for (const auto& [i, j] : pairs) out.pairs.emplace_back(j, i);
  if (weights.size() > 0) out.weights = weights.transpose();
  return out;
}

Matrix AlignmentPath::coupling(Index rows, Index cols) const {
  Matrix p = Matrix::Zero(rows, cols);
  for (const auto& [i, j] : pairs) p(i, j) = 1.0;
  return p;
}

bool AlignmentPath::operator==(const AlignmentPath& other) const {
  return mode == other.mode && pairs == other.pairs &&
         weights.rows() == other.weights.rows() &&
         weights.cols() == other.weights.cols() && weights == other.weights;
}

bool validate_path(const AlignmentPath& path, Index len_a, Index len_b) {
  if (len_a < 1 || len_b < 1) return false;
  if (path.mode == PathMode::kSoft) {
    const Matrix& w = path.weights;
    if (w.rows() != len_a || w.cols() != len_b) return false;
    if (!w.allFinite() || (w.array() < 0.0).any()) return false;
    const auto positive = (w.array() > 0.0);
    return positive.rowwise().any().all() && positive.colwise().any().all();
  }
  const auto& p = path.pairs;
  if (p.empty()) return false;
  if (p.front() != std::pair<Index, Index>{0, 0}) return false;
  if (p.back() != std::pair<Index, Index>{len_a - 1, len_b - 1}) return false;
  for (std::size_t k = 1; k < p.size(); ++k) {
    const Index di = p[k].first - p[k - 1].first;
    const Index dj = p[k].second - p[k - 1].second;
    if (di < 0 || dj < 0 || di > 1 || dj > 1 || di + dj == 0) return false;
  }
  return true;
}

std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::kDtw:
      return "dtw";
    case Measure::kSoftDtw:
      return "soft_dtw";
    case Measure::kGdtw:
      return "gdtw";
    case Measure::kSoftGdtw:
      return "soft_gdtw";
    case Measure::kDtwGi:
      return "dtw_gi";
    case Measure::kSoftDtwGi:
      return "soft_dtw_gi";
    case Measure::kCtw:
      return "ctw";
  }
  std::abort();
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (Measure m : kAllMeasures) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string measure_names() {
  std::string out;
  for (Measure m : kAllMeasures) {
    if (!out.empty()) out += ", ";
    out += to_string(m);
  }
  return out;
}

bool is_soft(Measure m) {
  return m == Measure::kSoftDtw || m == Measure::kSoftGdtw ||
         m == Measure::kSoftDtwGi;
}

}  // namespace motionsim
