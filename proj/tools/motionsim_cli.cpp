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

// motionsim command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 solver did not
// converge (only with --strict).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "motionsim/error.hpp"
#include "motionsim/eval.hpp"
#include "motionsim/io.hpp"
#include "motionsim/manifest.hpp"
#include "motionsim/measures.hpp"
#include "motionsim/preprocess.hpp"
#include "motionsim/report_json.hpp"
#include "motionsim/svg.hpp"
#include "motionsim/synth.hpp"

namespace fs = std::filesystem;
using namespace motionsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNotConverged = 3;

// Flag errors detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

void print_verbose(bool verbose, const Json& record) {
  if (verbose) std::cerr << "resolved parameters: " << record.dump() << "\n";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());
}

int workers_default() {
  const char* env = std::getenv("MOTIONSIM_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) {
    throw UsageError("MOTIONSIM_WORKERS must be a positive integer, got '" +
                     std::string(env) + "'");
  }
  return int(v);
}

// ---------------------------------------------------------------- score

struct ScoreArgs {
  std::string a, b, measure;
  std::optional<double> gamma, tol, resample_hz, ridge;
  std::optional<long> max_iters, band;
  std::string metric, init, self_metric;
  bool json = false, strict = false, verbose = false;
};

int run_score(const ScoreArgs& args) {
  const auto measure = parse_measure(args.measure);
  if (!measure) {
    throw UsageError("unknown measure '" + args.measure +
                     "'; valid measures: " + measure_names());
  }
  Params params;
  if (args.gamma) params["gamma"] = *args.gamma;
  if (args.max_iters) params["max_outer_iters"] = *args.max_iters;
  if (args.tol) params["tol"] = *args.tol;
  if (args.band) params["band"] = *args.band;
  if (args.ridge) params["ctw_ridge"] = *args.ridge;
  if (!args.metric.empty()) params["metric"] = args.metric;
  if (!args.init.empty()) params["init"] = args.init;
  if (!args.self_metric.empty()) params["self_metric"] = args.self_metric;
  MeasureSpec spec;
  try {
    spec = measure_spec_from_params(*measure, params);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }

  LoadOptions load;
  load.resample_hz = args.resample_hz;
  const Trajectory a = load_trajectory(args.a, load);
  const Trajectory b = load_trajectory(args.b, load);
  const MeasureResult result = score(a, b, spec);
  print_verbose(args.verbose, to_json(result.params));

  if (args.json) {
    std::cout << dump(to_json(result));
  } else {
    std::cout << sci(result.discrepancy) << "\n";
  }
  if (args.strict && !result.converged) {
    std::cerr << "error: " << to_string(result.measure)
              << " did not converge (" << result.iterations
              << " iterations run)\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- batch

struct BatchArgs {
  std::string manifest, out;
  std::optional<int> workers;
  bool timing = false, verbose = false;
};

void print_summary(const ScoreReport& report) {
  std::printf("%-24s %-12s %4s %14s %14s\n", "group", "measure", "n", "mean",
              "std");
  for (const auto& g : report.per_group) {
    std::printf("%-24s %-12s %4ld %14s %14s\n", g.group_label.c_str(),
                std::string(to_string(g.measure)).c_str(), g.n,
                sci(g.mean_discrepancy).c_str(),
                sci(g.std_discrepancy).c_str());
  }
  long failed = 0;
  for (const auto& r : report.per_pair) failed += r.ok() ? 0 : 1;
  if (failed > 0) std::printf("%ld row(s) failed; see report\n", failed);
}

int run_batch_cmd(const BatchArgs& args) {
  BatchOptions options;
  options.workers = args.workers ? *args.workers : workers_default();
  if (options.workers < 1) throw UsageError("--workers must be >= 1");
  options.record_timing = args.timing;
  const MotionPairManifest manifest = load_manifest(args.manifest);
  print_verbose(args.verbose, Json{{"manifest", args.manifest},
                                   {"out", args.out},
                                   {"workers", options.workers},
                                   {"pairs", manifest.entries.size()},
                                   {"measures", manifest.measures.size()}});
  const ScoreReport report = run_batch(manifest, options);
  write_file(args.out, dump(to_json(report)));
  print_summary(report);
  return kExitOk;
}

// ----------------------------------------------------------------- rank

struct RankArgs {
  std::string report, survey;
  std::vector<std::string> questions;
  bool json = false, verbose = false;
};

int run_rank(const RankArgs& args) {
  const ScoreReport report = load_report(args.report);
  const SurveyTable survey = load_survey(args.survey);
  print_verbose(args.verbose, Json{{"report", args.report},
                                   {"survey", args.survey},
                                   {"questions", args.questions}});
  const auto agreements = rank_agreement(report, survey, args.questions);
  if (args.json) {
    std::cout << dump(to_json(agreements));
    return kExitOk;
  }
  for (const auto& r : agreements) {
    std::printf("%-12s tau=%s rho=%s\n",
                std::string(to_string(r.measure)).c_str(),
                fixed(r.kendall_tau).c_str(), fixed(r.spearman_rho).c_str());
    std::printf("  quant:  %s\n", join(r.ordering_quant, " > ").c_str());
    std::printf("  survey: %s\n", join(r.ordering_survey, " > ").c_str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------- align

struct AlignArgs {
  std::string human, robot, out_dir;
  double gamma = AlignOptions{}.gamma;
  double raw_weight = AlignOptions{}.raw_weight;
  std::optional<double> resample_hz;
  bool verbose = false;
};

int run_align(const AlignArgs& args) {
  if (!(args.gamma > 0.0)) throw UsageError("--gamma must be > 0");
  if (!(args.raw_weight >= 0.0)) throw UsageError("--raw-weight must be >= 0");
  LoadOptions load;
  load.resample_hz = args.resample_hz;
  const Trajectory human = load_trajectory(args.human, load);
  const Trajectory robot = load_trajectory(args.robot, load);
  AlignOptions options;
  options.gamma = args.gamma;
  options.raw_weight = args.raw_weight;
  print_verbose(args.verbose, Json{{"gamma", options.gamma},
                                   {"raw_weight", options.raw_weight}});
  const AlignedPair aligned = align_pair(human, robot, options);
  const fs::path dir(args.out_dir);
  ensure_dir(dir);
  save_trajectory_csv(dir / "human_aligned.csv", aligned.human);
  save_trajectory_csv(dir / "robot_aligned.csv", aligned.robot);
  save_path_csv(dir / "path.csv", aligned.path);
  std::printf("aligned %ld human frames with %ld robot frames (%zu path "
              "steps)\n",
              long(human.length()), long(robot.length()),
              aligned.path.pairs.size());
  return kExitOk;
}

// ---------------------------------------------------------------- synth

struct SynthArgs {
  std::string spec, out_dir;
  bool verbose = false;
};

int run_synth(const SynthArgs& args) {
  const SynthSpec spec = synth_spec_from_json(read_file(args.spec));
  print_verbose(args.verbose, to_json(spec));
  const SyntheticPair pair = generate_pair(spec);
  const fs::path dir(args.out_dir);
  ensure_dir(dir);
  save_trajectory_csv(dir / "a.csv", pair.a);
  save_trajectory_csv(dir / "b.csv", pair.b);
  Json truth;
  truth["spec"] = to_json(spec);
  truth["ground_truth"] = to_json(pair.truth);
  write_file(dir / "ground_truth.json", dump(truth));
  std::printf("wrote a.csv (%ldx%ld), b.csv (%ldx%ld), ground_truth.json\n",
              long(pair.a.length()), long(pair.a.dim()),
              long(pair.b.length()), long(pair.b.dim()));
  return kExitOk;
}

// ---------------------------------------------------------------- study

struct StudyArgs {
  std::string spec, out, svg;
  std::optional<int> workers;
  bool verbose = false;
};

int run_study(const StudyArgs& args) {
  const int workers = args.workers ? *args.workers : workers_default();
  if (workers < 1) throw UsageError("--workers must be >= 1");
  const StudyPlan plan = study_plan_from_json(read_file(args.spec));
  print_verbose(args.verbose, Json{{"levels", plan.levels.size()},
                                   {"measures", plan.measures.size()},
                                   {"workers", workers}});
  const StudySummary summary =
      degradation_study(plan.levels, plan.measures, workers);
  write_file(args.out, dump(to_json(summary)));
  if (!args.svg.empty()) {
    write_file(args.svg, render_bar_chart(summary.report, "degradation study"));
  }
  for (const auto& t : summary.trends) {
    std::printf("%-12s tau(severity, discrepancy)=%s\n",
                std::string(to_string(t.measure)).c_str(),
                fixed(t.kendall_tau).c_str());
  }
  return kExitOk;
}

// ----------------------------------------------------------------- plot

struct PlotArgs {
  std::string report, svg, normalize = "raw", title;
  bool verbose = false;
};

int run_plot(const PlotArgs& args) {
  Normalization mode;
  try {
    mode = parse_normalization(args.normalize);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  print_verbose(args.verbose, Json{{"report", args.report},
                                   {"normalize", to_string(mode)}});
  const ScoreReport report =
      normalize_scores(load_report(args.report), mode);
  write_file(args.svg, render_bar_chart(report, args.title));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity measures for heterogeneous motion trajectories"};
  app.require_subcommand(1, 1);

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "Score one trajectory pair");
  score->add_option("--a", score_args.a, "First trajectory")->required();
  score->add_option("--b", score_args.b, "Second trajectory")->required();
  score->add_option("--measure", score_args.measure, measure_names())
      ->required();
  score->add_option("--gamma", score_args.gamma, "Soft-min temperature");
  score->add_option("--max-iters", score_args.max_iters,
                    "Outer iteration cap");
  score->add_option("--tol", score_args.tol, "Relative stopping tolerance");
  score->add_option("--band", score_args.band, "Sakoe-Chiba radius");
  score->add_option("--metric", score_args.metric,
                    "Ground metric for dtw/soft_dtw");
  score->add_option("--init", score_args.init,
                    "diagonal_path or uniform");
  score->add_option("--self-metric", score_args.self_metric,
                    "euclidean or sq_euclidean");
  score->add_option("--ctw-ridge", score_args.ridge, "CCA ridge");
  score->add_option("--resample", score_args.resample_hz,
                    "Resample both inputs to this rate (Hz)");
  score->add_flag("--json", score_args.json, "Print the full result as JSON");
  score->add_flag("--strict", score_args.strict,
                  "Exit 3 when the solver does not converge");
  score->add_flag("--verbose", score_args.verbose, "Echo resolved parameters");

  BatchArgs batch_args;
  auto* batch = app.add_subcommand("batch", "Score every pair in a manifest");
  batch->add_option("manifest", batch_args.manifest, "Manifest JSON")->required();
  batch->add_option("--out", batch_args.out, "Report path")->required();
  batch->add_option("--workers", batch_args.workers,
                    "Worker threads (default $MOTIONSIM_WORKERS or 1)");
  batch->add_flag("--timing", batch_args.timing, "Record wall_time_ms");
  batch->add_flag("--verbose", batch_args.verbose, "Echo resolved parameters");

  RankArgs rank_args;
  auto* rank = app.add_subcommand("rank", "Rank agreement with a survey");
  rank->add_option("report", rank_args.report, "Score report JSON")->required();
  rank->add_option("--survey", rank_args.survey, "Survey CSV")->required();
  rank->add_option("--questions", rank_args.questions,
                   "Comma separated question ids")
      ->delimiter(',');
  rank->add_flag("--json", rank_args.json, "Print JSON");
  rank->add_flag("--verbose", rank_args.verbose, "Echo resolved parameters");

  AlignArgs align_args;
  auto* align = app.add_subcommand("align", "Time-align a human/robot pair");
  align->add_option("--human", align_args.human, "Human trajectory")->required();
  align->add_option("--robot", align_args.robot, "Robot trajectory")->required();
  align->add_option("--out-dir", align_args.out_dir, "Output directory")
      ->required();
  align->add_option("--gamma", align_args.gamma, "Soft-DTW temperature");
  align->add_option("--raw-weight", align_args.raw_weight,
                    "Raw feature cost weight (equal dimensions only)");
  align->add_option("--resample", align_args.resample_hz,
                    "Accept irregular input, resample to this rate");
  align->add_flag("--verbose", align_args.verbose, "Echo resolved parameters");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic pair");
  synth->add_option("--spec", synth_args.spec, "Synth spec JSON")->required();
  synth->add_option("--out-dir", synth_args.out_dir, "Output directory")
      ->required();
  synth->add_flag("--verbose", synth_args.verbose, "Echo resolved parameters");

  StudyArgs study_args;
  auto* study = app.add_subcommand("study", "Run a degradation study");
  study->add_option("--spec", study_args.spec, "Study plan JSON")->required();
  study->add_option("--out", study_args.out, "Summary JSON path")->required();
  study->add_option("--svg", study_args.svg, "Optional bar chart path");
  study->add_option("--workers", study_args.workers, "Worker threads");
  study->add_flag("--verbose", study_args.verbose, "Echo resolved parameters");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Bar chart of a score report");
  plot->add_option("report", plot_args.report, "Score report JSON")->required();
  plot->add_option("--svg", plot_args.svg, "Output SVG path")->required();
  plot->add_option("--normalize", plot_args.normalize,
                   "raw or minmax_per_measure");
  plot->add_option("--title", plot_args.title, "Chart title");
  plot->add_flag("--verbose", plot_args.verbose, "Echo resolved parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*score) return run_score(score_args);
    if (*batch) return run_batch_cmd(batch_args);
    if (*rank) return run_rank(rank_args);
    if (*align) return run_align(align_args);
    if (*synth) return run_synth(synth_args);
    if (*study) return run_study(study_args);
    if (*plot) return run_plot(plot_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
