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

#ifndef MOTIONSIM_ALIGNMENT_HPP_
#define MOTIONSIM_ALIGNMENT_HPP_

// Homogeneous-dimension alignment kernels: frame cost matrices, DTW,
// Soft-DTW and its expected alignment. Everything here is templated on the
// scalar type and works on any Eigen dense expression.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "motionsim/error.hpp"
#include "motionsim/trajectory.hpp"

namespace motionsim {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IndexPairs = std::vector<std::pair<Index, Index>>;

enum class Metric { kSqEuclidean, kEuclidean, kPrecomputed };

/// T_a x T_b matrix of nonnegative frame-to-frame costs.
template <typename Scalar>
struct CostMatrix {
  MatrixX<Scalar> values;
  Metric metric = Metric::kSqEuclidean;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }

  static CostMatrix precomputed(MatrixX<Scalar> values) {
    if (values.size() == 0) throw ShapeError("empty cost matrix");
    if (!values.allFinite() || (values.array() < Scalar(0)).any()) {
      throw ParameterError("cost entries must be finite and nonnegative");
    }
    return {std::move(values), Metric::kPrecomputed};
  }

  CostMatrix transposed() const { return {values.transpose(), metric}; }
};

template <typename Scalar>
struct SoftAlignment {
  MatrixX<Scalar> expectation;
  Scalar gamma;
};

template <typename Scalar>
struct HardAlignment {
  Scalar cost;
  IndexPairs path;
};

/// Optional Sakoe-Chiba style band. A cell (i, j) is admissible when its
/// distance to the straight line from (0, 0) to (T_a-1, T_b-1), measured in
/// frames of the longer sequence, is at most `radius`.
struct Band {
  std::optional<double> radius;

  bool admits(Index i, Index j, Index rows, Index cols) const {
    if (!radius) return true;
    const double lhs = std::abs(static_cast<double>(i) * (cols - 1) -
                                static_cast<double>(j) * (rows - 1));
    const double longest = static_cast<double>(std::max(rows, cols) - 1);
    return lhs <= *radius * std::max(longest, 1.0) + 1e-9;
  }
};

namespace detail {

inline void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("gamma must be a positive finite number");
  }
}

inline void check_band(const Band& band) {
  if (band.radius && !(*band.radius >= 1.0)) {
    throw ParameterError("band radius must be at least 1 frame");
  }
}

template <typename Scalar>
Scalar infinity() {
  return std::numeric_limits<Scalar>::infinity();
}

// softmin_gamma(x, y, z) = -gamma * log(sum exp(-x_k / gamma)), evaluated
// after shifting by the largest exponent.
template <typename Scalar>
Scalar softmin3(Scalar x, Scalar y, Scalar z, Scalar gamma) {
  const Scalar ax = -x / gamma, ay = -y / gamma, az = -z / gamma;
  const Scalar top = std::max({ax, ay, az});
  if (top == -infinity<Scalar>()) return infinity<Scalar>();
  const Scalar sum =
      std::exp(ax - top) + std::exp(ay - top) + std::exp(az - top);
  return -gamma * (std::log(sum) + top);
}

}  // namespace detail

/// values(i, j) = distance between frame i of `a` and frame j of `b`.
template <typename DerivedA, typename DerivedB>
CostMatrix<typename DerivedA::Scalar> pairwise_cost(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
    Metric metric = Metric::kSqEuclidean) {
  using Scalar = typename DerivedA::Scalar;
  if (metric == Metric::kPrecomputed) {
    throw ParameterError(
        "precomputed costs are built with CostMatrix::precomputed");
  }
  if (a.cols() != b.cols()) {
    throw ShapeError("feature dimension mismatch: " + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.cols()));
  }
  MatrixX<Scalar> c(a.rows(), b.rows());
  for (Index j = 0; j < b.rows(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      const Scalar sq = (a.row(i) - b.row(j)).squaredNorm();
      c(i, j) = metric == Metric::kEuclidean ? std::sqrt(sq) : sq;
    }
  }
  return {std::move(c), metric};
}

inline CostMatrix<double> pairwise_cost(const Trajectory& a,
                                        const Trajectory& b,
                                        Metric metric = Metric::kSqEuclidean) {
  return pairwise_cost(a.frames(), b.frames(), metric);
}

/// Summed cost along a hard path.
template <typename Scalar>
Scalar path_cost(const MatrixX<Scalar>& cost, const IndexPairs& path) {
  Scalar total = 0;
  for (const auto& [i, j] : path) total += cost(i, j);
  return total;
}

/// Classic DTW with R(i,j) = c(i,j) + min(R(i-1,j-1), R(i-1,j), R(i,j-1)).
/// Ties prefer the diagonal, then the vertical (i-1, j), then the horizontal
/// predecessor, so the returned path is fully determined by the input.
template <typename Scalar>
HardAlignment<Scalar> dtw(const CostMatrix<Scalar>& cost, Band band = {}) {
  detail::check_band(band);
  const auto& c = cost.values;
  const Index n = c.rows(), m = c.cols();
  if (n == 0 || m == 0) throw ShapeError("empty cost matrix");
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();

  MatrixX<Scalar> acc(n, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (!band.admits(i, j, n, m)) {
        acc(i, j) = inf;
        continue;
      }
      if (i == 0 && j == 0) {
        acc(i, j) = c(0, 0);
        continue;
      }
      Scalar best = inf;
      if (i > 0 && j > 0) best = acc(i - 1, j - 1);
      if (i > 0 && acc(i - 1, j) < best) best = acc(i - 1, j);
      if (j > 0 && acc(i, j - 1) < best) best = acc(i, j - 1);
      acc(i, j) = c(i, j) + best;
    }
  }

  IndexPairs path;
  path.reserve(static_cast<std::size_t>(n + m));
  Index i = n - 1, j = m - 1;
  path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const Scalar diag = acc(i - 1, j - 1);
      const Scalar up = acc(i - 1, j);
      const Scalar left = acc(i, j - 1);
      if (diag <= up && diag <= left) {
        --i;
        --j;
      } else if (up <= left) {
        --i;
      } else {
        --j;
      }
    }
    path.emplace_back(i, j);
  }
  std::reverse(path.begin(), path.end());
  return {acc(n - 1, m - 1), std::move(path)};
}

namespace detail {

// (T_a + 1) x (T_b + 1) soft accumulated-cost table; row/column 0 is the
// +inf border with R(0, 0) = 0.
template <typename Scalar>
MatrixX<Scalar> soft_forward(const MatrixX<Scalar>& c, Scalar gamma,
                             const Band& band) {
  const Index n = c.rows(), m = c.cols();
  const Scalar inf = infinity<Scalar>();
  MatrixX<Scalar> r = MatrixX<Scalar>::Constant(n + 1, m + 1, inf);
  r(0, 0) = 0;
  for (Index j = 1; j <= m; ++j) {
    for (Index i = 1; i <= n; ++i) {
      if (!band.admits(i - 1, j - 1, n, m)) continue;
      r(i, j) = c(i - 1, j - 1) +
                softmin3(r(i - 1, j - 1), r(i - 1, j), r(i, j - 1), gamma);
    }
  }
  return r;
}

}  // namespace detail

/// Soft-DTW value. Not clamped: may be negative for small costs.
template <typename Scalar>
Scalar soft_dtw(const CostMatrix<Scalar>& cost, Scalar gamma, Band band = {}) {
  detail::check_gamma(static_cast<double>(gamma));
  detail::check_band(band);
  if (cost.values.size() == 0) throw ShapeError("empty cost matrix");
  const auto r = detail::soft_forward(cost.values, gamma, band);
  return r(cost.rows(), cost.cols());
}

/// Expected alignment: the derivative of the Soft-DTW value with respect to
/// each cost entry, from the backward recursion over the soft table.
template <typename Scalar>
SoftAlignment<Scalar> soft_alignment(const CostMatrix<Scalar>& cost,
                                     Scalar gamma, Band band = {}) {
  detail::check_gamma(static_cast<double>(gamma));
  detail::check_band(band);
  const auto& c = cost.values;
  const Index n = c.rows(), m = c.cols();
  if (n == 0 || m == 0) throw ShapeError("empty cost matrix");
  const Scalar inf = detail::infinity<Scalar>();

  // Pad to (n + 2) x (m + 2); the extra last row/column is the -inf sink.
  MatrixX<Scalar> r = MatrixX<Scalar>::Constant(n + 2, m + 2, -inf);
  r.topLeftCorner(n + 1, m + 1) = detail::soft_forward(c, gamma, band);
  r(n + 1, m + 1) = r(n, m);
  MatrixX<Scalar> d = MatrixX<Scalar>::Zero(n + 2, m + 2);
  d.block(1, 1, n, m) = c;
  MatrixX<Scalar> e = MatrixX<Scalar>::Zero(n + 2, m + 2);
  e(n + 1, m + 1) = 1;

  for (Index j = m; j >= 1; --j) {
    for (Index i = n; i >= 1; --i) {
      if (r(i, j) == inf) {
        r(i, j) = -inf;
        continue;
      }
      const Scalar here = r(i, j);
      const Scalar a = std::exp((r(i + 1, j) - here - d(i + 1, j)) / gamma);
      const Scalar b = std::exp((r(i, j + 1) - here - d(i, j + 1)) / gamma);
      const Scalar g =
          std::exp((r(i + 1, j + 1) - here - d(i + 1, j + 1)) / gamma);
      e(i, j) = e(i + 1, j) * a + e(i, j + 1) * b + e(i + 1, j + 1) * g;
    }
  }

  MatrixX<Scalar> out = e.block(1, 1, n, m).cwiseMax(Scalar(0)).cwiseMin(
      Scalar(1));
  // Every path visits both corners.
  out(0, 0) = 1;
  out(n - 1, m - 1) = 1;
  return {std::move(out), gamma};
}

/// Greedy walk from (0, 0) to the far corner following the largest
/// expectation among the diagonal, vertical and horizontal successors.
template <typename Scalar>
IndexPairs hard_path_from_soft(const SoftAlignment<Scalar>& sa) {
  const auto& e = sa.expectation;
  const Index n = e.rows(), m = e.cols();
  IndexPairs path;
  path.reserve(static_cast<std::size_t>(n + m));
  Index i = 0, j = 0;
  path.emplace_back(i, j);
  while (i < n - 1 || j < m - 1) {
    if (i == n - 1) {
      ++j;
    } else if (j == m - 1) {
      ++i;
    } else {
      const Scalar diag = e(i + 1, j + 1);
      const Scalar down = e(i + 1, j);
      const Scalar right = e(i, j + 1);
      if (diag >= down && diag >= right) {
        ++i;
        ++j;
      } else if (down >= right) {
        ++i;
      } else {
        ++j;
      }
    }
    path.emplace_back(i, j);
  }
  return path;
}

/// Monotone unit-step path hugging the straight line between the corners;
/// the pure diagonal when both lengths agree.
inline IndexPairs linear_path(Index n, Index m) {
  IndexPairs path;
  path.reserve(static_cast<std::size_t>(n + m));
  Index i = 0, j = 0;
  path.emplace_back(i, j);
  const auto off = [&](Index ii, Index jj) {
    return std::abs(ii * (m - 1) - jj * (n - 1));
  };
  while (i < n - 1 || j < m - 1) {
    if (i == n - 1) {
      ++j;
    } else if (j == m - 1) {
      ++i;
    } else {
      const Index diag = off(i + 1, j + 1);
      const Index down = off(i + 1, j);
      const Index right = off(i, j + 1);
      if (diag <= down && diag <= right) {
        ++i;
        ++j;
      } else if (down <= right) {
        ++i;
      } else {
        ++j;
      }
    }
    path.emplace_back(i, j);
  }
  return path;
}

}  // namespace motionsim

#endif  // MOTIONSIM_ALIGNMENT_HPP_
