#include "enkcf/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace enkcf {
namespace fs = std::filesystem;

bool Box::valid() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(width) && std::isfinite(height) &&
         width > 0 && height > 0;
}

Box parse_box(std::string_view line) {
  double v[4] = {};
  int count = 0;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ',' || *p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    if (count == 4) throw FormatError("ground truth line has more than 4 fields: " + std::string(line));
    auto [next, ec] = std::from_chars(p, end, v[count]);
    if (ec != std::errc{}) throw FormatError("bad ground truth value in line: " + std::string(line));
    ++count;
    p = next;
  }
  if (count != 4) throw FormatError("ground truth line needs 4 fields: " + std::string(line));
  return {v[0], v[1], v[2], v[3]};
}

std::vector<Box> parse_ground_truth(std::string_view text) {
  std::vector<Box> boxes;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    boxes.push_back(parse_box(line));
  }
  return boxes;
}

Sequence load_sequence(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError("sequence directory not found: " + dir.string());
  Sequence seq;
  seq.name = dir.filename().string();
  if (seq.name.empty()) seq.name = dir.parent_path().filename().string();

  fs::path gt_path = dir / "groundtruth_rect.txt";
  if (!fs::exists(gt_path) && fs::exists(dir / "groundtruth.txt")) gt_path = dir / "groundtruth.txt";
  if (!fs::exists(gt_path)) {
    throw FormatError("sequence " + seq.name + ": missing groundtruth_rect.txt");
  }
  std::ifstream in(gt_path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  seq.ground_truth = parse_ground_truth(buffer.str());

  const fs::path img_dir = dir / "img";
  if (!fs::is_directory(img_dir)) throw FormatError("sequence " + seq.name + ": missing img/ folder");
  for (const auto& entry : fs::directory_iterator(img_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".jpg" || ext == ".jpeg" || ext == ".png" || ext == ".bmp") {
      seq.frames.push_back(entry.path());
    }
  }
  std::sort(seq.frames.begin(), seq.frames.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (seq.frames.empty()) throw FormatError("sequence " + seq.name + ": no frames in img/");
  if (seq.frames.size() != seq.ground_truth.size()) {
    throw FormatError("sequence " + seq.name + ": " + std::to_string(seq.frames.size()) +
                      " frames but " + std::to_string(seq.ground_truth.size()) +
                      " ground-truth boxes");
  }
  return seq;
}

double center_error(const Box& prediction, const Box& truth) {
  const Point a = prediction.center();
  const Point b = truth.center();
  return std::hypot(a.x - b.x, a.y - b.y);
}

double overlap_iou(const Box& prediction, const Box& truth) {
  const double ix = std::max(0.0, std::min(prediction.x + prediction.width, truth.x + truth.width) -
                                      std::max(prediction.x, truth.x));
  const double iy = std::max(0.0, std::min(prediction.y + prediction.height, truth.y + truth.height) -
                                      std::max(prediction.y, truth.y));
  const double inter = ix * iy;
  const double uni = prediction.width * prediction.height + truth.width * truth.height - inter;
  if (!(uni > 0.0)) return 0.0;
  return inter / uni;
}

MetricCurves compute_curves(const TrackRun& run, const Sequence& sequence) {
  if (run.predictions.size() != sequence.ground_truth.size()) {
    throw DimensionError("compute_curves: " + std::to_string(run.predictions.size()) +
                         " predictions for " + std::to_string(sequence.ground_truth.size()) +
                         " ground-truth boxes");
  }
  std::vector<double> errors;
  std::vector<double> overlaps;
  for (std::size_t i = 0; i < run.predictions.size(); ++i) {
    const Box& gt = sequence.ground_truth[i];
    if (!gt.valid()) continue;
    errors.push_back(center_error(run.predictions[i], gt));
    overlaps.push_back(overlap_iou(run.predictions[i], gt));
  }
  if (errors.empty()) throw std::invalid_argument("compute_curves: no frame has valid ground truth");

  MetricCurves m;
  const double n = static_cast<double>(errors.size());
  for (int t = 0; t < kPrecisionSamples; ++t) {
    m.precision[t] = std::count_if(errors.begin(), errors.end(), [t](double e) { return e <= t; }) / n;
  }
  double area = 0.0;
  for (int i = 0; i < kSuccessSamples; ++i) {
    const double theta = success_threshold(i);
    m.success[i] =
        std::count_if(overlaps.begin(), overlaps.end(), [theta](double o) { return o > theta; }) / n;
    area += m.success[i];
  }
  m.precision_at_20 = m.precision[20];
  m.auc = area / kSuccessSamples;
  m.frames = run.predictions.size();
  for (double s : run.per_frame_seconds) m.seconds += s;
  m.fps = m.seconds > 0 ? m.frames / m.seconds : 0.0;
  return m;
}

MetricCurves aggregate(std::span<const MetricCurves> runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate: no runs");
  MetricCurves m;
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    for (int t = 0; t < kPrecisionSamples; ++t) m.precision[t] += r.precision[t] / n;
    for (int i = 0; i < kSuccessSamples; ++i) m.success[i] += r.success[i] / n;
    m.precision_at_20 += r.precision_at_20 / n;
    m.auc += r.auc / n;
    m.frames += r.frames;
    m.seconds += r.seconds;
  }
  m.fps = m.seconds > 0 ? m.frames / m.seconds : 0.0;
  return m;
}

TrackRun run_sequence(const Sequence& sequence, const SchedulerConfig& config,
                      std::shared_ptr<const ColorNamingTable> table, std::uint64_t seed,
                      const FrameLoader& load_frame, const RunOptions& options) {
  if (sequence.frames.empty() || sequence.ground_truth.empty()) {
    throw std::invalid_argument("run_sequence: empty sequence " + sequence.name);
  }
  const Box& start = sequence.start_box();
  if (!start.valid()) throw std::invalid_argument("run_sequence: first ground-truth box is invalid");

  using Clock = std::chrono::steady_clock;
  TrackRun run;
  run.sequence = sequence.name;
  run.predictions.reserve(sequence.frames.size());
  run.per_frame_seconds.reserve(sequence.frames.size());
  auto elapsed = [&](Clock::time_point t0) {
    return options.timing ? std::chrono::duration<double>(Clock::now() - t0).count() : 0.0;
  };

  auto t0 = Clock::now();
  Image frame = load_frame(sequence.frames.front());
  run.decode_seconds += elapsed(t0);
  t0 = Clock::now();
  Tracker tracker = Tracker::init(frame, start.to_roi(), config, table, seed, options.exec);
  run.per_frame_seconds.push_back(elapsed(t0));
  run.predictions.push_back(start);
  if (options.on_frame) options.on_frame(0, frame, start);

  for (std::size_t i = 1; i < sequence.frames.size(); ++i) {
    t0 = Clock::now();
    frame = load_frame(sequence.frames[i]);
    run.decode_seconds += elapsed(t0);
    t0 = Clock::now();
    const TargetState state = tracker.step(frame);
    run.per_frame_seconds.push_back(elapsed(t0));
    run.predictions.push_back(Box::from_roi(state.box()));
    if (options.on_frame) options.on_frame(i, frame, run.predictions.back());
  }
  return run;
}

namespace {

void append_line(std::string& out, const char* format, auto... args) {
  char buf[256];
  const int n = std::snprintf(buf, sizeof buf, format, args...);
  out.append(buf, static_cast<std::size_t>(std::max(0, n)));
}

}  // namespace

std::string results_csv(const TrackRun& run) {
  std::string out = "frame_index,pred_x,pred_y,pred_w,pred_h,seconds\n";
  for (std::size_t i = 0; i < run.predictions.size(); ++i) {
    const Box& b = run.predictions[i];
    const double s = i < run.per_frame_seconds.size() ? run.per_frame_seconds[i] : 0.0;
    append_line(out, "%zu,%.3f,%.3f,%.3f,%.3f,%.6f\n", i, b.x, b.y, b.width, b.height, s);
  }
  return out;
}

std::string precision_csv(const MetricCurves& curves) {
  std::string out = "threshold,precision\n";
  for (int t = 0; t < kPrecisionSamples; ++t) append_line(out, "%d,%.6f\n", t, curves.precision[t]);
  return out;
}

std::string success_csv(const MetricCurves& curves) {
  std::string out = "threshold,success\n";
  for (int i = 0; i < kSuccessSamples; ++i) {
    append_line(out, "%.2f,%.6f\n", success_threshold(i), curves.success[i]);
  }
  return out;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "sequence,precision_at_20,auc,fps\n";
  for (const auto& r : rows) {
    append_line(out, "%s,%.6f,%.6f,%.2f\n", r.name.c_str(), r.curves.precision_at_20,
                r.curves.auc, r.curves.fps);
  }
  return out;
}

}  // namespace enkcf
