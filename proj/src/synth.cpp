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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/QR>

#include "motionsim/error.hpp"
#include "motionsim/synth.hpp"

namespace motionsim {

namespace {

// Separate stream for additive noise.
constexpr std::uint64_t kNoiseStream = 0x9E3779B97F4A7C15ULL;

Matrix gaussian(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> n01;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = n01(rng);
  }
  return m;
}

Matrix random_orthogonal(std::mt19937_64& rng, Index dim) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(rng, dim, dim));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    if (r(k, k) < 0.0) q.col(k) *= -1.0;
  }
  return q;
}

Matrix base_curve(const SynthSpec& spec, Index dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index t = spec.length;
  const double two_pi = 2.0 * std::numbers::pi;
  Matrix x(t, dim);
  switch (spec.base) {
    case SynthBase::kSinusoidMix:
      for (Index c = 0; c < dim; ++c) {
        double freq[3], amp[3], phase[3];
        for (int k = 0; k < 3; ++k) {
          freq[k] = 0.5 + 2.0 * unit(rng);
          amp[k] = 0.3 + 0.7 * unit(rng);
          phase[k] = two_pi * unit(rng);
        }
        for (Index i = 0; i < t; ++i) {
          const double s = double(i) / double(t - 1);
          double v = 0.0;
          for (int k = 0; k < 3; ++k) {
            v += amp[k] * std::sin(two_pi * freq[k] * s + phase[k]);
          }
          x(i, c) = v;
        }
      }
      break;
    case SynthBase::kLissajous:
      for (Index c = 0; c < dim; ++c) {
        const double freq = double(c + 1) + 0.5 * unit(rng);
        const double phase = two_pi * unit(rng);
        for (Index i = 0; i < t; ++i) {
          const double s = double(i) / double(t - 1);
          x(i, c) = std::sin(two_pi * freq * s + phase);
        }
      }
      break;
    case SynthBase::kPiecewiseRamp: {
      constexpr int kKnots = 6;
      for (Index c = 0; c < dim; ++c) {
        double knots[kKnots];
        for (double& k : knots) k = 2.0 * unit(rng) - 1.0;
        for (Index i = 0; i < t; ++i) {
          const double pos = double(i) / double(t - 1) * (kKnots - 1);
          const int seg = std::min(int(pos), kKnots - 2);
          const double frac = pos - seg;
          x(i, c) = (1.0 - frac) * knots[seg] + frac * knots[seg + 1];
        }
      }
      break;
    }
  }
  return x;
}

std::vector<double> warp_map(const SynthSpec& spec, std::mt19937_64& rng) {
  const Index t = spec.length;
  std::vector<double> w;
  switch (spec.warp) {
    case SynthWarp::kNone:
      for (Index k = 0; k < t; ++k) w.push_back(double(k));
      break;
    case SynthWarp::kUniform: {
      const auto tb = static_cast<Index>(std::lround(1.5 * double(t)));
      for (Index k = 0; k < tb; ++k) {
        w.push_back(double(k) * double(t - 1) / double(tb - 1));
      }
      break;
    }
    case SynthWarp::kRandomMonotone: {
      std::normal_distribution<double> step(0.0, 0.5);
      std::vector<double> cum{0.0};
      for (Index k = 1; k < t; ++k) cum.push_back(cum.back() + std::exp(step(rng)));
      for (double c : cum) w.push_back(c / cum.back() * double(t - 1));
      w.back() = double(t - 1);
      break;
    }
  }
  return w;
}

Matrix apply_warp(const Matrix& x, const std::vector<double>& w) {
  Matrix out(static_cast<Index>(w.size()), x.cols());
  const Index last = x.rows() - 1;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Index seg = std::min(static_cast<Index>(std::floor(w[k])), last - 1);
    const double frac = w[k] - double(seg);
    out.row(static_cast<Index>(k)) =
        (1.0 - frac) * x.row(seg) + frac * x.row(seg + 1);
  }
  return out;
}

}  // namespace

void SynthSpec::validate() const {
  if (dim_a < 1 || dim_b < 1) throw ParameterError("synth dims must be >= 1");
  if (length < 3) throw ParameterError("synth length must be >= 3");
  if (!(noise_sigma >= 0.0)) throw ParameterError("noise_sigma must be >= 0");
  if (!(sample_rate_hz > 0.0)) {
    throw ParameterError("sample rate must be positive");
  }
}

SyntheticPair generate_pair(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  GroundTruth truth;

  // Both sides derive from a latent curve of dimension min(dim_a, dim_b).
  // a embeds it isometrically; b applies the transform and a lift into
  // dim_b. The identity transform zero-pads instead of embedding.
  const Index latent_dim = std::min(spec.dim_a, spec.dim_b);
  const Matrix latent = base_curve(spec, latent_dim, rng);
  Matrix embed = Matrix::Identity(spec.dim_a, latent_dim);
  Matrix lift = Matrix::Identity(spec.dim_b, latent_dim);
  truth.translation = Vector::Zero(spec.dim_b);
  if (spec.transform != SynthTransform::kNone) {
    if (latent_dim < spec.dim_a) {
      embed = random_orthogonal(rng, spec.dim_a).leftCols(latent_dim);
    }
    lift = random_orthogonal(rng, spec.dim_b).leftCols(latent_dim);
  }
  if (spec.transform == SynthTransform::kRotationTranslation) {
    truth.translation = gaussian(rng, spec.dim_b, 1);
  }
  Matrix a = latent * embed.transpose();
  Matrix bent = latent;
  if (spec.transform == SynthTransform::kNonlinearMlpLike) {
    // Residual bend y + V tanh(W y + c), V scaled so the bend is a fixed
    // fraction of the latent spread.
    constexpr Index kHidden = 8;
    constexpr double kBend = 0.1;
    const Matrix w = gaussian(rng, kHidden, latent_dim) /
                     std::sqrt(double(latent_dim));
    truth.hidden_bias = 0.5 * gaussian(rng, kHidden, 1);
    Matrix v = gaussian(rng, latent_dim, kHidden);
    Matrix hidden = latent * w.transpose();
    hidden.rowwise() += truth.hidden_bias.transpose();
    const Matrix bend = hidden.array().tanh().matrix() * v.transpose();
    const double spread = (latent.rowwise() - latent.colwise().mean()).norm();
    const double bend_spread = (bend.rowwise() - bend.colwise().mean()).norm();
    if (bend_spread > 0.0) v *= kBend * spread / bend_spread;
    bent += hidden.array().tanh().matrix() * v.transpose();
    truth.hidden_weights = w * embed.transpose();
    truth.readout = lift * v;
  }
  Matrix b = bent * lift.transpose();
  b.rowwise() += truth.translation.transpose();
  // b = linear * a (+ readout * tanh(hidden_weights * a + hidden_bias))
  //     + translation.
  truth.linear = lift * embed.transpose();

  truth.warp = warp_map(spec, rng);
  if (spec.warp != SynthWarp::kNone) b = apply_warp(b, truth.warp);

  if (spec.noise_sigma > 0.0) {
    std::mt19937_64 noise_rng(spec.seed ^ kNoiseStream);
    b += spec.noise_sigma * gaussian(noise_rng, b.rows(), b.cols());
  }

  const std::string tag = std::to_string(spec.seed);
  return {Trajectory("synth-a-" + tag, spec.sample_rate_hz, std::move(a)),
          Trajectory("synth-b-" + tag, spec.sample_rate_hz, std::move(b)),
          std::move(truth)};
}

std::string_view to_string(SynthBase v) {
  switch (v) {
    case SynthBase::kSinusoidMix:
      return "sinusoid_mix";
    case SynthBase::kLissajous:
      return "lissajous";
    case SynthBase::kPiecewiseRamp:
      return "piecewise_ramp";
  }
  return "?";
}

std::string_view to_string(SynthTransform v) {
  switch (v) {
    case SynthTransform::kNone:
      return "none";
    case SynthTransform::kRotation:
      return "rotation";
    case SynthTransform::kRotationTranslation:
      return "rotation_translation";
    case SynthTransform::kNonlinearMlpLike:
      return "nonlinear_mlp_like";
  }
  return "?";
}

std::string_view to_string(SynthWarp v) {
  switch (v) {
    case SynthWarp::kNone:
      return "none";
    case SynthWarp::kUniform:
      return "uniform";
    case SynthWarp::kRandomMonotone:
      return "random_monotone";
  }
  return "?";
}

SynthBase parse_synth_base(std::string_view s) {
  for (auto v : {SynthBase::kSinusoidMix, SynthBase::kLissajous,
                 SynthBase::kPiecewiseRamp}) {
    if (to_string(v) == s) return v;
  }
  throw ParameterError("unknown synth base '" + std::string(s) + "'");
}

SynthTransform parse_synth_transform(std::string_view s) {
  for (auto v : {SynthTransform::kNone, SynthTransform::kRotation,
                 SynthTransform::kRotationTranslation,
                 SynthTransform::kNonlinearMlpLike}) {
    if (to_string(v) == s) return v;
  }
  throw ParameterError("unknown synth transform '" + std::string(s) + "'");
}

SynthWarp parse_synth_warp(std::string_view s) {
  for (auto v :
       {SynthWarp::kNone, SynthWarp::kUniform, SynthWarp::kRandomMonotone}) {
    if (to_string(v) == s) return v;
  }
  throw ParameterError("unknown synth warp '" + std::string(s) + "'");
}

}  // namespace motionsim
