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

#ifndef MOTIONSIM_PREPROCESS_HPP_
#define MOTIONSIM_PREPROCESS_HPP_

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "motionsim/trajectory.hpp"

namespace motionsim {

/// Layout of a human keypoint trajectory: keypoint k occupies columns
/// [k * dims_per_keypoint, (k + 1) * dims_per_keypoint).
struct KeypointSchema {
  std::vector<std::string> keypoint_names;
  Index dims_per_keypoint = 3;
  std::vector<std::pair<Index, Index>> mirror_pairs;
  // Coordinate within each keypoint block whose sign flips under mirroring.
  Index mirror_axis = 0;

  void validate() const;
  Index feature_dim() const {
    return static_cast<Index>(keypoint_names.size()) * dims_per_keypoint;
  }
  Index index_of(const std::string& name) const;  // SchemaError if absent
};

/// Robot joints whose sign flips under a horizontal reflection.
struct RobotMirrorSpec {
  std::vector<Index> negate_channels;

  void validate(Index robot_dim) const;
};

/// The ten upper-body keypoints used by default: shoulders, elbows, wrists,
/// palms and fingers on both sides.
std::vector<std::string> default_upper_body_keep();

Trajectory select_keypoints(const Trajectory& a, const KeypointSchema& schema,
                            const std::vector<std::string>& keep);

std::pair<Trajectory, Trajectory> mirror_pair(const Trajectory& human,
                                              const Trajectory& robot,
                                              const KeypointSchema& schema,
                                              const RobotMirrorSpec& rspec);

/// Linear interpolation onto the uniform grid at `target_hz` spanning the
/// trajectory's time range.
Trajectory resample(const Trajectory& a, double target_hz);

/// Per-frame speed ||dx/dt|| (central differences, one-sided at the ends),
/// divided by its maximum. A motionless input yields zeros.
Trajectory gradient_magnitude(const Trajectory& a);

struct AlignOptions {
  double gamma = 0.1;
  // Weight of the dimension-normalized raw-feature cost. Only used when both
  // trajectories have the same feature dimension.
  double raw_weight = 1.0;
};

struct AlignedPair {
  Trajectory human;
  Trajectory robot;  // re-timed onto the human timeline (T_h frames)
  AlignmentPath path;
};

/// Soft-DTW time alignment driven by gradient-magnitude profiles. Robot
/// frames mapped to the same human index are averaged.
AlignedPair align_pair(const Trajectory& human, const Trajectory& robot,
                       const AlignOptions& options = {});

struct ResampleStep {
  double target_hz = 10.0;
};
struct SelectKeypointsStep {
  KeypointSchema schema;
  std::vector<std::string> keep;
};
struct MirrorStep {
  KeypointSchema schema;
  RobotMirrorSpec robot;
};
struct AlignStep {
  AlignOptions options;
};

using PreprocessStep =
    std::variant<ResampleStep, SelectKeypointsStep, MirrorStep, AlignStep>;

std::string step_name(const PreprocessStep& step);

/// Applies `steps` in order to a (human, robot) pair. Keypoint selection
/// touches the human side only.
std::pair<Trajectory, Trajectory> apply_pipeline(
    Trajectory human, Trajectory robot,
    const std::vector<PreprocessStep>& steps);

}  // namespace motionsim

#endif  // MOTIONSIM_PREPROCESS_HPP_
