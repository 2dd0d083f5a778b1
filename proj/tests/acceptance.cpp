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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "motionsim/alignment.hpp"
#include "motionsim/error.hpp"
#include "motionsim/eval.hpp"
#include "motionsim/hetero.hpp"
#include "motionsim/io.hpp"
#include "motionsim/manifest.hpp"
#include "motionsim/preprocess.hpp"
#include "motionsim/report_json.hpp"
#include "motionsim/synth.hpp"
#include "oracles.hpp"

using namespace motionsim;
using oracle::traj;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool nonincreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (v[k] > v[k - 1]) return false;
  }
  return true;
}

double orthonormality_error(const Matrix& q) {
  return (q.transpose() * q - Matrix::Identity(q.cols(), q.cols()))
      .cwiseAbs()
      .maxCoeff();
}

Outcome dtw_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> len(1, 6), dim(1, 3), val(-3, 3);
  int exact = 0, real = 0;
  Outcome out;
  for (int trial = 0; trial < 2000; ++trial) {
    const Index ta = std::max(2, len(rng)), tb = std::max(2, len(rng));
    const Index d = dim(rng);
    Matrix a(ta, d), b(tb, d);
    if (trial % 2 == 0) {
      for (Index k = 0; k < a.size(); ++k) a.data()[k] = val(rng);
      for (Index k = 0; k < b.size(); ++k) b.data()[k] = val(rng);
    } else {
      a = oracle::gaussian(rng, ta, d);
      b = oracle::gaussian(rng, tb, d);
    }
    const auto cost = pairwise_cost(a, b);
    const auto al = dtw(cost);
    const double brute = oracle::brute_dtw(cost.values);
    if (trial % 2 == 0) {
      out.require(al.cost == brute, "integer-cost mismatch");
      ++exact;
    } else {
      out.require(std::abs(al.cost - brute) <= 1e-12, "real-cost mismatch");
      ++real;
    }
    out.require(validate_path(AlignmentPath::hard(al.path), ta, tb),
                "invalid path");
  }
  out.detail = std::to_string(exact) + " integer + " + std::to_string(real) +
               " real pairs" + (out.ok ? "" : ": " + out.detail);
  return out;
}

Outcome soft_gradient() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  double worst = 0.0;
  for (double gamma : {0.1, 1.0}) {
    for (int trial = 0; trial < 50; ++trial) {
      Matrix c(5, 5);
      for (Index k = 0; k < c.size(); ++k) c.data()[k] = u(rng);
      const Matrix e =
          soft_alignment(CostMatrix<double>::precomputed(c), gamma).expectation;
      const double h = 1e-6;
      for (Index i = 0; i < 5; ++i) {
        for (Index j = 0; j < 5; ++j) {
          Matrix up = c, down = c;
          up(i, j) += h;
          down(i, j) -= h;
          const double fd =
              (soft_dtw(CostMatrix<double>::precomputed(up), gamma) -
               soft_dtw(CostMatrix<double>::precomputed(down), gamma)) /
              (2 * h);
          worst = std::max(worst, std::abs(fd - e(i, j)));
        }
      }
    }
  }
  Outcome out;
  out.require(worst < 1e-4, "");
  out.detail = "max abs error " + fmt("%.2e", worst);
  return out;
}

Outcome gdtw_isometry() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<int> len(2, 60), dim(1, 6);
  double worst = 0.0;
  Outcome out;
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = dim(rng);
    const Matrix a = oracle::smooth_curve(rng, len(rng), d);
    Matrix moved = a * oracle::random_orthogonal(rng, d).transpose();
    moved.rowwise() += oracle::gaussian(rng, 1, d).row(0) * 3.0;
    const double self = gdtw(traj(a), traj(a)).discrepancy;
    const double iso = gdtw(traj(a), traj(moved)).discrepancy;
    out.require(self == 0.0, "gdtw(a, a) != 0");
    worst = std::max(worst, std::abs(iso - self));
  }
  out.require(worst < 1e-8, "isometry gap too large");
  out.detail = "100 trajectories, max gap " + fmt("%.2e", worst) +
               (out.ok ? "" : ": " + out.detail);
  return out;
}

Outcome gdtw_sandwich() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> len(2, 5), dim(1, 3);
  Outcome out;
  int n = 0;
  for (int trial = 0; trial < 300; ++trial, ++n) {
    const Matrix a = oracle::gaussian(rng, len(rng), dim(rng));
    const Matrix b = oracle::gaussian(rng, len(rng), dim(rng));
    const MeasureResult r = gdtw(traj(a), traj(b));
    const double brute =
        oracle::brute_gromov(oracle::distances(a), oracle::distances(b));
    const double init = oracle::quadratic_objective(
        oracle::distances(a), oracle::distances(b),
        linear_path(a.rows(), b.rows()));
    out.require(brute <= r.discrepancy + 1e-9, "below the brute-force optimum");
    out.require(r.discrepancy <= init + 1e-9, "above the init-path objective");
    out.require(std::abs(r.objective_trace.front() - init) <= 1e-9 * (1 + init),
                "trace does not start at the init path");
    out.require(nonincreasing(r.objective_trace), "trace increases");
  }
  out.detail = std::to_string(n) + " instances" +
               (out.ok ? "" : ": " + out.detail);
  return out;
}

Outcome dtw_gi_recovery() {
  std::mt19937_64 rng(1005);
  Outcome out;
  double worst = 0.0, ortho = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const Index da = 3 + trial % 4;
    const Index db = 1 + trial % (da - 1);
    const Matrix q = oracle::random_lift(rng, da, db);
    const Vector c = oracle::gaussian(rng, da, 1);
    // a lies on the affine subspace c + range(Q), so b = Q^T (a - c) keeps
    // every bit of a.
    Matrix a = oracle::smooth_curve(rng, 20 + trial, db) * q.transpose();
    a.rowwise() += c.transpose();
    const Matrix b = (a.rowwise() - c.transpose()) * q;
    const MeasureResult r = dtw_gi(traj(a), traj(b));
    worst = std::max(worst, r.discrepancy);
    out.require(r.transform.has_value(), "no transform");
    ortho = std::max(ortho, orthonormality_error(r.transform->matrix));
  }
  out.require(worst < 1e-6, "discrepancy too large");
  out.require(ortho < 1e-10, "transform not orthonormal");
  out.detail = "40 pairs, max discrepancy " + fmt("%.2e", worst) +
               ", orthonormality " + fmt("%.2e", ortho);
  return out;
}

// Tiny random pairs often leave the lift undetermined (rank-deficient
// cross-covariance); there both variants must raise the same error.
Outcome soft_hard_consistency() {
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<int> len(2, 5), dim(1, 3);
  HeteroMeasureConfig cfg;
  cfg.gamma = 1e-4;
  double g_gap = 0.0, gi_gap = 0.0, t_gap = 0.0;
  int fitted = 0, undetermined = 0;
  Outcome out;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = traj(oracle::gaussian(rng, len(rng), dim(rng)));
    const auto b = traj(oracle::gaussian(rng, len(rng), dim(rng)));
    g_gap = std::max(g_gap, std::abs(soft_gdtw(a, b, cfg).discrepancy -
                                     gdtw(a, b, cfg).discrepancy));
    std::optional<MeasureResult> hard, soft;
    try {
      hard = dtw_gi(a, b, cfg);
    } catch (const DegenerateGeometryError&) {
    }
    try {
      soft = soft_dtw_gi(a, b, cfg);
    } catch (const DegenerateGeometryError&) {
    }
    out.require(hard.has_value() == soft.has_value(),
                "only one variant found the lift degenerate");
    if (!hard || !soft) {
      ++undetermined;
      continue;
    }
    ++fitted;
    gi_gap = std::max(gi_gap, std::abs(hard->discrepancy - soft->discrepancy));
    t_gap = std::max(t_gap,
                     (hard->transform->matrix - soft->transform->matrix).norm());
  }
  out.require(g_gap < 1e-6, "gdtw objective gap");
  out.require(gi_gap < 1e-6, "dtw_gi objective gap");
  out.require(t_gap < 1e-3, "dtw_gi transform gap");
  out.detail = "300 instances, gdtw gap " + fmt("%.2e", g_gap) +
               ", dtw_gi gap " + fmt("%.2e", gi_gap) + ", transform gap " +
               fmt("%.2e", t_gap) + " (" + std::to_string(fitted) +
               " fitted, " + std::to_string(undetermined) +
               " degenerate in both)" + (out.ok ? "" : ": " + out.detail);
  return out;
}

Outcome ctw_recovery() {
  std::mt19937_64 rng(1007);
  Outcome out;
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 1 + trial % 5;
    const Matrix a = oracle::smooth_curve(rng, 40 + trial, d);
    Matrix m = oracle::gaussian(rng, d, d);
    m.diagonal().array() += 2.0;
    const MeasureResult r = ctw(traj(a), traj(Matrix(a * m.transpose())));
    out.require(r.converged, "did not converge");
    worst = std::max(worst, r.discrepancy);
  }
  out.require(worst < 1e-4, "discrepancy too large");
  Matrix flat = oracle::smooth_curve(rng, 30, 3);
  flat.col(2).setConstant(1.5);
  bool raised = false;
  try {
    ctw(traj(flat), traj(oracle::smooth_curve(rng, 30, 2)));
  } catch (const DegenerateGeometryError&) {
    raised = true;
  }
  out.require(raised, "zero-variance channel accepted");
  out.detail = "30 maps, max discrepancy " + fmt("%.2e", worst) +
               (raised ? ", zero variance rejected" : "");
  return out;
}

Outcome quality_separation() {
  SynthSpec base;
  base.dim_a = 30;
  base.dim_b = 5;
  base.length = 60;
  base.transform = SynthTransform::kNonlinearMlpLike;
  base.warp = SynthWarp::kRandomMonotone;
  base.seed = 0;
  MeasureSpec g, c;
  g.measure = Measure::kGdtw;
  c.measure = Measure::kCtw;
  const StudySummary s =
      degradation_study(noise_sweep(base, {0.0, 0.05, 0.1, 0.2}, 5), {g, c});
  const double tg = s.trends[0].kendall_tau, tc = s.trends[1].kendall_tau;
  Outcome out;
  out.require(tg == 1.0 && tg >= tc, "");
  out.detail = "tau(gdtw) = " + fmt("%.3f", tg) + ", tau(ctw) = " +
               fmt("%.3f", tc);
  return out;
}

int run_cli(const std::string& args, std::string* out) {
  const fs::path file = fs::temp_directory_path() / "motionsim_accept_out.txt";
  const std::string cmd = "'" MOTIONSIM_CLI "' " + args + " >'" +
                          file.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  *out = fs::exists(file) ? read_file(file) : "";
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome rank_arithmetic() {
  const fs::path dir = fs::temp_directory_path() / "motionsim_accept_rank";
  fs::create_directories(dir);
  write_file(dir / "survey.csv",
             "model,question,mean_rating\nDancer,avg,3.63\nMLP-2,avg,2.92\n"
             "MLP-1,avg,2.77\nIBC-1,avg,2.46\nIBC-2,avg,2.44\n");
  const std::vector<std::string> models = {"Dancer", "MLP-2", "MLP-1",
                                           "IBC-1", "IBC-2"};
  auto tau_for = [&](bool reversed) {
    ScoreReport rep;
    for (std::size_t k = 0; k < models.size(); ++k) {
      PairScore r;
      r.pair_id = models[k];
      r.group_label = models[k];
      r.measure = Measure::kGdtw;
      r.discrepancy = reversed ? 5.0 - k : 1.0 + k;
      r.converged = true;
      rep.per_pair.push_back(r);
    }
    rep.per_group = aggregate(rep.per_pair);
    write_file(dir / "report.json", dump(to_json(rep)));
    std::string text;
    const int code = run_cli("rank '" + (dir / "report.json").string() +
                                 "' --survey '" +
                                 (dir / "survey.csv").string() + "' --json",
                             &text);
    if (code != 0) return std::nan("");
    return Json::parse(text)[0]["kendall_tau"].get<double>();
  };
  const double forward = tau_for(false), backward = tau_for(true);
  Outcome out;
  out.require(forward == 1.0 && backward == -1.0, "");
  out.detail = "tau = " + fmt("%.3f", forward) + ", reversed tau = " +
               fmt("%.3f", backward);
  return out;
}

Outcome pipeline_invariants() {
  std::mt19937_64 rng(1010);
  Outcome out;

  KeypointSchema schema;
  schema.keypoint_names = default_upper_body_keep();
  schema.dims_per_keypoint = 3;
  for (Index k = 0; k < 5; ++k) schema.mirror_pairs.emplace_back(2 * k, 2 * k + 1);
  const RobotMirrorSpec robot{{0, 3}};
  for (int trial = 0; trial < 50; ++trial) {
    const Trajectory h = traj(oracle::gaussian(rng, 15, 30));
    const Trajectory r = traj(oracle::gaussian(rng, 15, 5));
    const auto [h1, r1] = mirror_pair(h, r, schema, robot);
    const auto [h2, r2] = mirror_pair(h1, r1, schema, robot);
    out.require(h2.frames() == h.frames() && r2.frames() == r.frames(),
                "mirror is not an involution");
  }

  double warp_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = oracle::smooth_curve(rng, 30, 3);
    Matrix doubled(60, 3);
    for (Index i = 0; i < 60; ++i) doubled.row(i) = h.row(i / 2);
    const AlignedPair al = align_pair(traj(h), traj(doubled, "r", 20.0));
    warp_err = std::max(warp_err, (al.robot.frames() - h).cwiseAbs().maxCoeff());
    out.require(validate_path(al.path, 30, 60), "invalid alignment path");
  }
  out.require(warp_err < 1e-6, "uniform warp not recovered");

  const fs::path dir = fs::temp_directory_path() / "motionsim_accept_batch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string entries;
  for (int k = 0; k < 6; ++k) {
    SynthSpec spec;
    spec.dim_a = 6;
    spec.dim_b = 3;
    spec.length = 30;
    spec.transform = SynthTransform::kRotationTranslation;
    spec.warp = SynthWarp::kRandomMonotone;
    spec.noise_sigma = 0.05;
    spec.seed = static_cast<std::uint64_t>(k);
    const SyntheticPair p = generate_pair(spec);
    const std::string id = "p" + std::to_string(k);
    save_trajectory_csv(dir / (id + "a.csv"), p.a);
    save_trajectory_csv(dir / (id + "b.csv"), p.b);
    if (k) entries += ",";
    entries += "{\"pair_id\": \"" + id + "\", \"path_a\": \"" + id +
               "a.csv\", \"path_b\": \"" + id + "b.csv\", \"group_label\": \"" +
               (k % 2 ? "x" : "y") + "\"}";
  }
  const MotionPairManifest m = parse_manifest(
      "{\"entries\": [" + entries +
          "], \"measures\": [\"gdtw\", \"soft_gdtw\", \"dtw_gi\", "
          "\"soft_dtw_gi\", \"ctw\"], \"preprocessing\": [{\"op\": \"align\"}]}",
      dir);
  const std::string ref = dump(to_json(run_batch(m, {1, false})));
  bool identical = true;
  for (int workers : {1, 2, 4, 8}) {
    identical = identical && dump(to_json(run_batch(m, {workers, false}))) == ref;
  }
  out.require(identical, "batch output depends on worker count");
  out.detail = "mirror involution exact, warp error " + fmt("%.2e", warp_err) +
               ", batch identical across 1/2/4/8 workers" +
               (out.ok ? "" : ": " + out.detail);
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "dtw oracle equivalence", 10, dtw_oracle},
      {2, "soft-dtw gradient check", 5, soft_gradient},
      {3, "gdtw isometry invariance", 30, gdtw_isometry},
      {4, "gdtw small-instance sandwich", 60, gdtw_sandwich},
      {5, "dtw-gi transform recovery", 30, dtw_gi_recovery},
      {6, "soft/hard consistency", 60, soft_hard_consistency},
      {7, "ctw linear-map recovery", 60, ctw_recovery},
      {8, "measure-quality separation", 120, quality_separation},
      {9, "rank-agreement arithmetic", 30, rank_arithmetic},
      {10, "pipeline invariants", 60, pipeline_invariants},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %2d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
