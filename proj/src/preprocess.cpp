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

#include "motionsim/preprocess.hpp"

#include <algorithm>
#include <set>

#include "interp.hpp"
#include "motionsim/alignment.hpp"
#include "motionsim/error.hpp"

namespace motionsim {

void KeypointSchema::validate() const {
  if (keypoint_names.empty()) throw SchemaError("schema has no keypoints");
  if (dims_per_keypoint != 2 && dims_per_keypoint != 3) {
    throw SchemaError("dims_per_keypoint must be 2 or 3");
  }
  std::set<std::string> names(keypoint_names.begin(), keypoint_names.end());
  if (names.size() != keypoint_names.size()) {
    throw SchemaError("duplicate keypoint names in schema");
  }
  const auto count = static_cast<Index>(keypoint_names.size());
  std::set<Index> used;
  for (const auto& [l, r] : mirror_pairs) {
    if (l < 0 || r < 0 || l >= count || r >= count || l == r) {
      throw SchemaError("mirror pair (" + std::to_string(l) + ", " +
                        std::to_string(r) + ") out of range");
    }
    if (!used.insert(l).second || !used.insert(r).second) {
      throw SchemaError("mirror pairs overlap");
    }
  }
  if (mirror_axis < 0 || mirror_axis >= dims_per_keypoint) {
    throw SchemaError("mirror_axis outside the keypoint block");
  }
}

Index KeypointSchema::index_of(const std::string& name) const {
  const auto it = std::find(keypoint_names.begin(), keypoint_names.end(), name);
  if (it == keypoint_names.end()) {
    throw SchemaError("unknown keypoint '" + name + "'");
  }
  return static_cast<Index>(it - keypoint_names.begin());
}

void RobotMirrorSpec::validate(Index robot_dim) const {
  std::set<Index> seen;
  for (Index c : negate_channels) {
    if (c < 0 || c >= robot_dim) {
      throw SchemaError("robot channel " + std::to_string(c) +
                        " out of range");
    }
    if (!seen.insert(c).second) {
      throw SchemaError("robot channel " + std::to_string(c) + " repeated");
    }
  }
}

std::vector<std::string> default_upper_body_keep() {
  return {"left_shoulder", "right_shoulder", "left_elbow", "right_elbow",
          "left_wrist",    "right_wrist",    "left_palm",  "right_palm",
          "left_finger",   "right_finger"};
}

namespace {

void check_layout(const Trajectory& a, const KeypointSchema& schema) {
  schema.validate();
  if (a.dim() != schema.feature_dim()) {
    throw ShapeError("trajectory '" + a.id() + "' has " +
                     std::to_string(a.dim()) + " features, schema expects " +
                     std::to_string(schema.feature_dim()));
  }
}

}  // namespace

Trajectory select_keypoints(const Trajectory& a, const KeypointSchema& schema,
                            const std::vector<std::string>& keep) {
  check_layout(a, schema);
  const Index dims = schema.dims_per_keypoint;
  std::vector<Index> blocks;
  for (const auto& name : keep) blocks.push_back(schema.index_of(name));
  if (blocks.empty()) throw SchemaError("keep list is empty");

  Matrix out(a.length(), static_cast<Index>(blocks.size()) * dims);
  std::vector<std::string> names;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    out.middleCols(static_cast<Index>(k) * dims, dims) =
        a.frames().middleCols(blocks[k] * dims, dims);
    if (!a.feature_names().empty()) {
      for (Index c = 0; c < dims; ++c) {
        names.push_back(a.feature_names()[blocks[k] * dims + c]);
      }
    }
  }
  return Trajectory(a.id() + ".selected", a.sample_rate_hz(), std::move(out),
                    std::move(names), a.start_time());
}

std::pair<Trajectory, Trajectory> mirror_pair(const Trajectory& human,
                                              const Trajectory& robot,
                                              const KeypointSchema& schema,
                                              const RobotMirrorSpec& rspec) {
  check_layout(human, schema);
  rspec.validate(robot.dim());
  const Index dims = schema.dims_per_keypoint;

  Matrix h = human.frames();
  for (const auto& [l, r] : schema.mirror_pairs) {
    const Matrix left = h.middleCols(l * dims, dims);
    h.middleCols(l * dims, dims) = h.middleCols(r * dims, dims);
    h.middleCols(r * dims, dims) = left;
  }
  const auto count = static_cast<Index>(schema.keypoint_names.size());
  for (Index k = 0; k < count; ++k) {
    h.col(k * dims + schema.mirror_axis) *= -1.0;
  }

  Matrix r = robot.frames();
  for (Index c : rspec.negate_channels) {
    r.col(c) *= -1.0;
  }
  return {human.with_frames(std::move(h), ".mirrored"),
          robot.with_frames(std::move(r), ".mirrored")};
}

Trajectory resample(const Trajectory& a, double target_hz) {
  if (!(target_hz > 0.0) || !std::isfinite(target_hz)) {
    throw ParameterError("target rate must be positive");
  }
  std::vector<double> times(static_cast<std::size_t>(a.length()));
  for (Index i = 0; i < a.length(); ++i) times[i] = a.time_at(i);
  const Index count = internal::uniform_grid_size(
      a.start_time(), a.time_at(a.length() - 1), target_hz);
  if (count < 2) {
    throw ShapeError("trajectory '" + a.id() +
                     "' is too short to resample at the requested rate");
  }
  Matrix grid = internal::interpolate_uniform(times, a.frames(),
                                              a.start_time(), target_hz, count);
  return Trajectory(a.id(), target_hz, std::move(grid), a.feature_names(),
                    a.start_time());
}

Trajectory gradient_magnitude(const Trajectory& a) {
  const Matrix& x = a.frames();
  const Index t = a.length();
  const double rate = a.sample_rate_hz();
  Matrix speed(t, 1);
  for (Index i = 0; i < t; ++i) {
    if (i == 0) {
      speed(i, 0) = (x.row(1) - x.row(0)).norm() * rate;
    } else if (i == t - 1) {
      speed(i, 0) = (x.row(t - 1) - x.row(t - 2)).norm() * rate;
    } else {
      speed(i, 0) = 0.5 * (x.row(i + 1) - x.row(i - 1)).norm() * rate;
    }
  }
  const double peak = speed.maxCoeff();
  if (peak > 0.0) speed /= peak;
  return Trajectory(a.id() + ".gradmag", rate, std::move(speed), {},
                    a.start_time());
}

AlignedPair align_pair(const Trajectory& human, const Trajectory& robot,
                       const AlignOptions& options) {
  if (!(options.raw_weight >= 0.0)) {
    throw ParameterError("raw feature weight must be nonnegative");
  }
  const Matrix gh = gradient_magnitude(human).frames();
  const Matrix gr = gradient_magnitude(robot).frames();
  auto cost = pairwise_cost(gh, gr);
  if (human.dim() == robot.dim() && options.raw_weight > 0.0) {
    cost.values += options.raw_weight / static_cast<double>(human.dim()) *
                   pairwise_cost(human, robot).values;
  }
  const auto sa = soft_alignment(cost, options.gamma);
  IndexPairs path = hard_path_from_soft(sa);

  Matrix retimed = Matrix::Zero(human.length(), robot.dim());
  Vector counts = Vector::Zero(human.length());
  for (const auto& [i, j] : path) {
    retimed.row(i) += robot.frames().row(j);
    counts(i) += 1.0;
  }
  for (Index i = 0; i < human.length(); ++i) retimed.row(i) /= counts(i);

  Trajectory aligned(robot.id() + ".aligned", human.sample_rate_hz(),
                     std::move(retimed), robot.feature_names(),
                     human.start_time());
  return {human, std::move(aligned), AlignmentPath::hard(std::move(path))};
}

std::string step_name(const PreprocessStep& step) {
  struct Visitor {
    std::string operator()(const ResampleStep&) const { return "resample"; }
    std::string operator()(const SelectKeypointsStep&) const {
      return "select_keypoints";
    }
    std::string operator()(const MirrorStep&) const { return "mirror"; }
    std::string operator()(const AlignStep&) const { return "align"; }
  };
  return std::visit(Visitor{}, step);
}

std::pair<Trajectory, Trajectory> apply_pipeline(
    Trajectory human, Trajectory robot,
    const std::vector<PreprocessStep>& steps) {
  for (const auto& step : steps) {
    if (const auto* s = std::get_if<ResampleStep>(&step)) {
      human = resample(human, s->target_hz);
      robot = resample(robot, s->target_hz);
    } else if (const auto* s = std::get_if<SelectKeypointsStep>(&step)) {
      human = select_keypoints(human, s->schema, s->keep);
    } else if (const auto* s = std::get_if<MirrorStep>(&step)) {
      auto [h, r] = mirror_pair(human, robot, s->schema, s->robot);
      human = std::move(h);
      robot = std::move(r);
    } else if (const auto* s = std::get_if<AlignStep>(&step)) {
      auto aligned = align_pair(human, robot, s->options);
      robot = std::move(aligned.robot);
    }
  }
  return {std::move(human), std::move(robot)};
}

}  // namespace motionsim
