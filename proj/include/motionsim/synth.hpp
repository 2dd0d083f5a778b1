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

#ifndef MOTIONSIM_SYNTH_HPP_
#define MOTIONSIM_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "motionsim/eval.hpp"
#include "motionsim/measures.hpp"
#include "motionsim/trajectory.hpp"

namespace motionsim {

enum class SynthBase { kSinusoidMix, kLissajous, kPiecewiseRamp };
enum class SynthTransform {
  kNone,
  kRotation,
  kRotationTranslation,
  kNonlinearMlpLike
};
enum class SynthWarp { kNone, kUniform, kRandomMonotone };

/// Recipe for a synthetic (a, b) pair. The same spec always yields a
/// bit-identical pair.
struct SynthSpec {
  SynthBase base = SynthBase::kSinusoidMix;
  Index dim_a = 3;
  Index dim_b = 3;
  Index length = 100;
  SynthTransform transform = SynthTransform::kNone;
  SynthWarp warp = SynthWarp::kNone;
  double noise_sigma = 0.0;
  std::uint64_t seed = 0;
  double sample_rate_hz = 10.0;

  void validate() const;
};

struct GroundTruth {
  // b = linear a + translation for the rigid transforms. The nonlinear
  // transform adds readout tanh(hidden_weights a + hidden_bias).
  Matrix linear;
  Vector translation;
  Matrix hidden_weights;
  Vector hidden_bias;
  Matrix readout;
  // Source time of b frame k, in a-frame units.
  std::vector<double> warp;
};

struct SyntheticPair {
  Trajectory a;
  Trajectory b;
  GroundTruth truth;
};

/// Both sides derive from a latent curve of dimension min(dim_a, dim_b):
/// a embeds it orthonormally (zero-padding for the identity transform), b
/// applies the transform and an orthonormal lift. The nonlinear transform
/// is a residual tanh bend of the latent curve. Noise draws use their own
/// stream so specs that differ only in noise_sigma share everything else.
SyntheticPair generate_pair(const SynthSpec& spec);

std::string_view to_string(SynthBase v);
std::string_view to_string(SynthTransform v);
std::string_view to_string(SynthWarp v);
SynthBase parse_synth_base(std::string_view s);
SynthTransform parse_synth_transform(std::string_view s);
SynthWarp parse_synth_warp(std::string_view s);

/// One degradation level: a label, its severity, and the pairs generated at
/// that severity.
struct StudyLevel {
  std::string label;
  double severity = 0.0;
  std::vector<SynthSpec> specs;
};

struct MeasureTrend {
  Measure measure = Measure::kDtw;
  // Kendall tau-b between severity and group mean discrepancy.
  double kendall_tau = 0.0;
  std::vector<GroupScore> groups;  // in level order
};

struct StudySummary {
  std::vector<StudyLevel> levels;
  std::vector<MeasureTrend> trends;
  ScoreReport report;  // per-pair scores, group labels = level labels
};

/// Scores every level's pairs with every measure and reports how well each
/// measure's group means track the known severity order. Needs >= 3 levels
/// with distinct severities and >= 3 pairs per level.
StudySummary degradation_study(const std::vector<StudyLevel>& levels,
                               const std::vector<MeasureSpec>& measures,
                               int workers = 1);

/// Noise sweep: for each sigma, `pairs` specs cloned from `base` with seeds
/// base.seed + p.
std::vector<StudyLevel> noise_sweep(const SynthSpec& base,
                                    const std::vector<double>& sigmas,
                                    int pairs);

// Min-max normalization of a value list; DegenerateScaleError when all
// values coincide.
std::vector<double> minmax_normalize(const std::vector<double>& values);

}  // namespace motionsim

#endif  // MOTIONSIM_SYNTH_HPP_
