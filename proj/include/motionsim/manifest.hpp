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

#ifndef MOTIONSIM_MANIFEST_HPP_
#define MOTIONSIM_MANIFEST_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "motionsim/measures.hpp"
#include "motionsim/preprocess.hpp"

namespace motionsim {

struct ManifestEntry {
  std::string pair_id;
  std::filesystem::path path_a;  // human / higher-dimensional side
  std::filesystem::path path_b;  // robot side
  std::string group_label;
};

/// A batch scoring job: which pairs, which measures, which preprocessing.
struct MotionPairManifest {
  std::vector<ManifestEntry> entries;
  std::vector<MeasureSpec> measures;
  std::vector<PreprocessStep> preprocessing;

  // Unique pair ids, unique measure names, at least one of each.
  void validate() const;
};

/// Parses a manifest document. Relative file references resolve against
/// `base_dir`; every referenced file must exist (IoError names the first
/// missing one).
MotionPairManifest parse_manifest(const std::string& json_text,
                                  const std::filesystem::path& base_dir);
MotionPairManifest load_manifest(const std::filesystem::path& path);

/// JSON array of measure names or {"measure": name, "params": {...}}.
std::vector<MeasureSpec> parse_measure_list(const std::string& json_text);

KeypointSchema parse_keypoint_schema(const std::string& json_text);
KeypointSchema load_keypoint_schema(const std::filesystem::path& path);
RobotMirrorSpec parse_robot_mirror_spec(const std::string& json_text);

}  // namespace motionsim

#endif  // MOTIONSIM_MANIFEST_HPP_
