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

#ifndef MOTIONSIM_SRC_COMMON_HPP_
#define MOTIONSIM_SRC_COMMON_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <thread>
#include <vector>

#include "motionsim/hetero.hpp"

namespace motionsim::internal {

// Records the resolved solver configuration into `params`.
void record_config(Params& params, const HeteroMeasureConfig& cfg,
                   bool soft);

inline double relative_change(double previous, double current) {
  const double delta = std::abs(previous - current);
  if (delta == 0.0) return 0.0;
  const double scale = std::abs(previous);
  return scale > 0.0 ? delta / scale : delta;
}

// Runs fn(k) for k in [0, count) on up to `workers` threads. Each index is
// visited exactly once; callers write into preallocated slots.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  const auto loop = [&] {
    for (std::size_t k = next++; k < count; k = next++) fn(k);
  };
  const auto threads =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)),
                            count);
  if (threads <= 1) {
    loop();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(loop);
}

}  // namespace motionsim::internal

#endif  // MOTIONSIM_SRC_COMMON_HPP_
