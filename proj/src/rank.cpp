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
#include <numeric>
#include <set>

#include "motionsim/error.hpp"
#include "motionsim/eval.hpp"

namespace motionsim {

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

std::vector<std::string> order_by(const std::vector<std::string>& labels,
                                  const std::vector<double>& keys,
                                  bool ascending) {
  std::vector<std::size_t> idx(labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) {
    return ascending ? keys[p] < keys[q] : keys[p] > keys[q];
  });
  std::vector<std::string> out;
  for (std::size_t k : idx) out.push_back(labels[k]);
  return out;
}

}  // namespace

double kendall_tau_b(const std::vector<double>& x,
                     const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("rank vectors differ in length");
  const std::size_t n = x.size();
  long concordant = 0, discordant = 0, tied_x = 0, tied_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int sx = sign(x[i] - x[j]);
      const int sy = sign(y[i] - y[j]);
      if (sx == 0) ++tied_x;
      if (sy == 0) ++tied_y;
      if (sx * sy > 0) ++concordant;
      if (sx * sy < 0) ++discordant;
    }
  }
  const double pairs = double(n) * double(n - 1) / 2.0;
  const double denom = std::sqrt((pairs - tied_x) * (pairs - tied_y));
  if (!(denom > 0.0)) return 0.0;
  return double(concordant - discordant) / denom;
}

std::vector<double> average_ranks(const std::vector<double>& x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t p, std::size_t q) { return x[p] < x[q]; });
  std::vector<double> ranks(x.size());
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t stop = start + 1;
    while (stop < idx.size() && x[idx[stop]] == x[idx[start]]) ++stop;
    const double rank = 0.5 * double(start + 1 + stop);
    for (std::size_t k = start; k < stop; ++k) ranks[idx[k]] = rank;
    start = stop;
  }
  return ranks;
}

double spearman_rho(const std::vector<double>& x,
                    const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("rank vectors differ in length");
  if (x.empty()) return 0.0;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mean = 0.5 * double(x.size() + 1);
  double num = 0.0, dx = 0.0, dy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    num += (rx[k] - mean) * (ry[k] - mean);
    dx += (rx[k] - mean) * (rx[k] - mean);
    dy += (ry[k] - mean) * (ry[k] - mean);
  }
  if (!(dx > 0.0 && dy > 0.0)) return 0.0;
  return num / std::sqrt(dx * dy);
}

std::vector<RankAgreement> rank_agreement(
    const ScoreReport& report, const SurveyTable& survey,
    const std::vector<std::string>& questions) {
  std::set<Measure> measures;
  for (const auto& g : report.per_group) measures.insert(g.measure);

  std::vector<RankAgreement> out;
  for (Measure m : measures) {
    std::vector<std::string> labels;
    std::vector<double> quant, rating;
    for (const auto& g : report.per_group) {
      if (g.measure != m || g.n == 0) continue;
      labels.push_back(g.group_label);
      quant.push_back(g.mean_discrepancy);
      rating.push_back(survey.model_score(g.group_label, questions));
    }
    if (labels.size() < 2) {
      throw ParameterError("rank agreement for " + std::string(to_string(m)) +
                           " needs at least 2 scored groups");
    }
    std::vector<double> goodness(quant.size());
    std::transform(quant.begin(), quant.end(), goodness.begin(),
                   [](double v) { return -v; });

    RankAgreement ra;
    ra.measure = m;
    ra.ordering_quant = order_by(labels, quant, true);
    ra.ordering_survey = order_by(labels, rating, false);
    ra.kendall_tau = kendall_tau_b(rating, goodness);
    ra.spearman_rho = spearman_rho(rating, goodness);
    out.push_back(std::move(ra));
  }
  return out;
}

}  // namespace motionsim
