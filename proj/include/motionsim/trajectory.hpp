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

#ifndef MOTIONSIM_TRAJECTORY_HPP_
#define MOTIONSIM_TRAJECTORY_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace motionsim {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// A uniformly sampled multivariate time series: T frames (rows) of D
/// features (columns). Immutable once constructed.
class Trajectory {
 public:
  /// Validates T >= 2, D >= 1, finite values and name count.
  Trajectory(std::string id, double sample_rate_hz, Matrix frames,
             std::vector<std::string> feature_names = {},
             double start_time = 0.0);

  const std::string& id() const { return id_; }
  double sample_rate_hz() const { return sample_rate_hz_; }
  double start_time() const { return start_time_; }
  const Matrix& frames() const { return frames_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }

  Index length() const { return frames_.rows(); }
  Index dim() const { return frames_.cols(); }
  double time_at(Index i) const {
    return start_time_ + static_cast<double>(i) / sample_rate_hz_;
  }

  // Same metadata, new frames (T may change, names are kept only if D is).
  Trajectory with_frames(Matrix frames, std::string id_suffix = {}) const;

 private:
  std::string id_;
  double sample_rate_hz_;
  double start_time_;
  Matrix frames_;
  std::vector<std::string> feature_names_;
};

enum class PathMode { kHard, kSoft };

/// Monotone correspondence between two index sets. Hard paths hold the
/// ordered (i, j) list; soft paths hold a T_a x T_b weight matrix.
struct AlignmentPath {
  PathMode mode = PathMode::kHard;
  std::vector<std::pair<Index, Index>> pairs;
  Matrix weights;

  static AlignmentPath hard(std::vector<std::pair<Index, Index>> pairs) {
    return {PathMode::kHard, std::move(pairs), Matrix()};
  }
  static AlignmentPath soft(Matrix weights) {
    return {PathMode::kSoft, {}, std::move(weights)};
  }

  AlignmentPath transposed() const;
  // 0/1 coupling matrix of a hard path.
  Matrix coupling(Index rows, Index cols) const;

  bool operator==(const AlignmentPath& other) const;
};

bool validate_path(const AlignmentPath& path, Index len_a, Index len_b);

enum class Measure { kDtw, kSoftDtw, kGdtw, kSoftGdtw, kDtwGi, kSoftDtwGi, kCtw };

inline constexpr Measure kAllMeasures[] = {
    Measure::kDtw,  Measure::kSoftDtw,   Measure::kGdtw, Measure::kSoftGdtw,
    Measure::kDtwGi, Measure::kSoftDtwGi, Measure::kCtw};

std::string_view to_string(Measure m);
std::optional<Measure> parse_measure(std::string_view name);
// Comma separated list of every valid measure name.
std::string measure_names();
bool is_soft(Measure m);

/// Orthonormal-column lift plus translation: x ~ matrix * y + offset.
struct FeatureTransform {
  Matrix matrix;
  Vector offset;
};

using ParamValue = std::variant<double, long, bool, std::string>;
using Params = std::map<std::string, ParamValue>;

struct MeasureResult {
  Measure measure = Measure::kDtw;
  double discrepancy = 0.0;
  AlignmentPath path;
  long iterations = 0;
  bool converged = true;
  Params params;
  // Objective value of every accepted iterate, in order.
  std::vector<double> objective_trace;
  std::optional<FeatureTransform> transform;
};

}  // namespace motionsim

#endif  // MOTIONSIM_TRAJECTORY_HPP_
