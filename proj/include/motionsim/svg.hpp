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

#ifndef MOTIONSIM_SVG_HPP_
#define MOTIONSIM_SVG_HPP_

#include <string>

#include "motionsim/eval.hpp"

namespace motionsim {

/// Grouped bar chart of per-group mean discrepancies: one cluster per group
/// label, one bar per measure, error bars at +/- one standard deviation.
std::string render_bar_chart(const ScoreReport& report,
                             const std::string& title = "");

}  // namespace motionsim

#endif  // MOTIONSIM_SVG_HPP_
