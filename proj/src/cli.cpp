#include "enkcf/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enkcf/config.hpp"
#include "enkcf/evaluation.hpp"
#include "enkcf/image_io.hpp"

namespace enkcf {
namespace fs = std::filesystem;
namespace {

struct Options {
  std::string config_path;
  std::string dataset;
  std::vector<std::string> sequences;
  std::string out_dir = "results";
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool overlay = false;
  bool low_fps_mode = false;
  bool strict_paper = false;
  bool no_timing = false;
  std::optional<std::string> cn_table;
};

void add_config_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--config", o.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  cmd.add_option("--seed", o.seed, "random seed (default 42)");
  cmd.add_flag("--low-fps-mode", o.low_fps_mode,
               "run the large-area filter every frame and disable the particle filter");
  cmd.add_flag("--strict-paper", o.strict_paper, "disable re-centering on scale frames");
  cmd.add_option("--cn-table", o.cn_table, "color-naming table (32768 rows x 11 columns)");
}

void add_run_options(CLI::App& cmd, Options& o) {
  add_config_options(cmd, o);
  cmd.add_option("--dataset", o.dataset, "dataset directory or a single sequence directory")
      ->required();
  cmd.add_option("--seq", o.sequences, "sequence name; repeat or comma separate for several")
      ->delimiter(',');
  cmd.add_option("--out", o.out_dir, "output directory")->capture_default_str();
  cmd.add_flag("--overlay", o.overlay, "write frames with the predicted box drawn");
  cmd.add_flag("--no-timing", o.no_timing, "record zero seconds so outputs are reproducible");
}

RunSettings resolve_settings(const Options& o) {
  RunSettings s = o.config_path.empty() ? RunSettings{} : load_config(o.config_path);
  if (o.seed) s.seed = *o.seed;
  if (o.cn_table) s.cn_table = *o.cn_table;
  if (o.low_fps_mode) {
    s.scheduler.every_frame_large = true;
    s.scheduler.pf_enabled = false;
  }
  if (o.strict_paper) s.scheduler.recenter_on_scale = false;
  s.scheduler.validate();
  return s;
}

bool needs_color_names(const SchedulerConfig& c) {
  return c.params_large.features.set == FeatureSet::fhog_color ||
         c.params_small.features.set == FeatureSet::fhog_color ||
         c.params_scale.features.set == FeatureSet::fhog_color;
}

std::shared_ptr<const ColorNamingTable> load_table(const RunSettings& s) {
  if (!needs_color_names(s.scheduler)) return nullptr;
  if (s.cn_table.empty()) {
    throw FormatError(
        "a color-naming table is required by the configured features; pass --cn-table or set "
        "cn_table");
  }
  return std::make_shared<const ColorNamingTable>(ColorNamingTable::load(s.cn_table));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path.string());
  f << text;
  if (!f) throw FormatError("cannot write " + path.string());
}

bool is_sequence_dir(const fs::path& dir) { return fs::is_directory(dir / "img"); }

std::vector<fs::path> find_sequences(const Options& o) {
  const fs::path root(o.dataset);
  if (!fs::is_directory(root)) throw FormatError("dataset directory not found: " + o.dataset);
  std::vector<fs::path> dirs;
  if (is_sequence_dir(root)) {
    dirs.push_back(root);
  } else {
    for (const auto& entry : fs::directory_iterator(root)) {
      if (entry.is_directory() && is_sequence_dir(entry.path())) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
  }
  if (!o.sequences.empty()) {
    std::vector<fs::path> picked;
    for (const auto& name : o.sequences) {
      auto it = std::find_if(dirs.begin(), dirs.end(),
                             [&](const fs::path& d) { return d.filename() == name; });
      if (it == dirs.end()) throw FormatError("sequence not found in dataset: " + name);
      picked.push_back(*it);
    }
    dirs = std::move(picked);
  }
  return dirs;
}

struct SequenceOutcome {
  std::string name;
  std::optional<MetricCurves> curves;
  std::string error;
  std::string log;
};

SequenceOutcome process_sequence(const fs::path& dir, const RunSettings& settings,
                                 const std::shared_ptr<const ColorNamingTable>& table,
                                 const Options& o, Execution exec, bool with_metrics) {
  SequenceOutcome outcome;
  outcome.name = dir.filename().string();
  try {
    const Sequence seq = load_sequence(dir);
    outcome.name = seq.name;
    const fs::path out_dir(o.out_dir);
    RunOptions run_options;
    run_options.timing = !o.no_timing;
    run_options.exec = exec;
    if (o.overlay) {
      const fs::path overlay_dir = out_dir / (seq.name + "_overlay");
      fs::create_directories(overlay_dir);
      run_options.on_frame = [overlay_dir](std::size_t i, const Image& frame, const Box& box) {
        Image copy = frame;
        draw_box(copy, box, 255, 0, 0);
        char name[32];
        std::snprintf(name, sizeof name, "%05zu.png", i + 1);
        write_image(overlay_dir / name, copy);
      };
    }
    TrackRun run = run_sequence(seq, settings.scheduler, table, settings.seed, read_image, run_options);
    run.config_digest = config_digest(settings);
    write_text(out_dir / (seq.name + "_results.csv"), results_csv(run));

    std::ostringstream log;
    log << seq.name << ": " << run.predictions.size() << " frames";
    if (with_metrics) {
      const MetricCurves curves = compute_curves(run, seq);
      write_text(out_dir / (seq.name + "_precision.csv"), precision_csv(curves));
      write_text(out_dir / (seq.name + "_success.csv"), success_csv(curves));
      log << ", precision@20 " << curves.precision_at_20 << ", auc " << curves.auc;
      outcome.curves = curves;
    }
    if (!o.no_timing) {
      double seconds = 0;
      for (double s : run.per_frame_seconds) seconds += s;
      log << ", tracker " << seconds << " s, decode " << run.decode_seconds << " s";
    }
    outcome.log = log.str();
  } catch (const std::exception& e) {
    outcome.error = outcome.name + ": " + e.what();
  }
  return outcome;
}

int cmd_track(const Options& o, std::ostream& out, std::ostream& err) {
  const RunSettings settings = resolve_settings(o);
  const auto table = load_table(settings);
  const auto dirs = find_sequences(o);
  if (dirs.size() != 1) {
    throw FormatError("track needs exactly one sequence; use --seq to pick one (found " +
                      std::to_string(dirs.size()) + ")");
  }
  fs::create_directories(o.out_dir);
  const SequenceOutcome r =
      process_sequence(dirs.front(), settings, table, o, Execution::parallel, false);
  if (!r.error.empty()) {
    err << "error: " << r.error << '\n';
    return 1;
  }
  out << r.log << '\n';
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const RunSettings settings = resolve_settings(o);
  const auto table = load_table(settings);
  const auto dirs = find_sequences(o);
  if (dirs.empty()) throw FormatError("no sequences found in " + o.dataset);
  fs::create_directories(o.out_dir);

  const int count = static_cast<int>(dirs.size());
  std::vector<SequenceOutcome> outcomes(dirs.size());
  const int jobs = std::max(1, std::min(o.jobs, count));
  // Sequences fan out across workers; each tracker then runs serially.
  const Execution exec = jobs > 1 ? Execution::serial : Execution::parallel;
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) if (jobs > 1)
  for (int i = 0; i < count; ++i) {
    outcomes[i] = process_sequence(dirs[i], settings, table, o, exec, true);
  }

  std::vector<SummaryRow> rows;
  std::vector<MetricCurves> curves;
  bool all_ok = true;
  for (const auto& r : outcomes) {
    if (!r.error.empty()) {
      err << "error: " << r.error << '\n';
      all_ok = false;
      continue;
    }
    out << r.log << '\n';
    rows.push_back({r.name, *r.curves});
    curves.push_back(*r.curves);
  }
  if (!curves.empty()) {
    const MetricCurves total = aggregate(curves);
    rows.push_back({"aggregate", total});
    write_text(fs::path(o.out_dir) / "summary.csv", summary_csv(rows));
    write_text(fs::path(o.out_dir) / "aggregate_precision.csv", precision_csv(total));
    write_text(fs::path(o.out_dir) / "aggregate_success.csv", success_csv(total));
    out << "aggregate: " << curves.size() << " sequences, precision@20 " << total.precision_at_20
        << ", auc " << total.auc;
    if (!o.no_timing) out << ", fps " << total.fps;
    out << '\n';
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correlation-filter ensemble tracker and benchmark harness", "enkcf"};
  app.require_subcommand(1);
  Options track_opts, eval_opts, dump_opts;

  auto* track = app.add_subcommand("track", "track one sequence and write its predictions");
  add_run_options(*track, track_opts);
  auto* eval = app.add_subcommand("eval", "evaluate every sequence of a dataset directory");
  add_run_options(*eval, eval_opts);
  eval->add_option("--jobs", eval_opts.jobs, "sequences evaluated in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  auto* dump = app.add_subcommand("config-dump", "print the effective configuration");
  add_config_options(*dump, dump_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*track) return cmd_track(track_opts, out, err);
    if (*eval) return cmd_eval(eval_opts, out, err);
    out << dump_config(resolve_settings(dump_opts));
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace enkcf
