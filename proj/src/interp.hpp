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

#ifndef MOTIONSIM_SRC_INTERP_HPP_
#define MOTIONSIM_SRC_INTERP_HPP_

#include <vector>

#include "motionsim/trajectory.hpp"

namespace motionsim::internal {

// Number of points of the grid t0, t0 + 1/hz, ... not exceeding t_end.
Index uniform_grid_size(double t0, double t_end, double hz);

// Linear interpolation of `frames` sampled at strictly increasing `times`
// onto t0 + k / hz, k = 0..count-1.
Matrix interpolate_uniform(const std::vector<double>& times,
                           const Matrix& frames, double t0, double hz,
                           Index count);

}  // namespace motionsim::internal

#endif  // MOTIONSIM_SRC_INTERP_HPP_
