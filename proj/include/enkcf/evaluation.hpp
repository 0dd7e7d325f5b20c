#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enkcf/image.hpp"
#include "enkcf/tracker.hpp"

namespace enkcf {

/// Axis-aligned box given by its top-left corner and size, as in benchmark
/// ground-truth files.
struct Box {
  double x = 0;
  double y = 0;
  double width = 0;
  double height = 0;

  /// Finite with positive area. Invalid boxes mark frames without a usable
  /// annotation (e.g. full occlusion).
  bool valid() const;
  Point center() const { return {x + width / 2.0, y + height / 2.0}; }
  Roi to_roi() const { return {x + width / 2.0, y + height / 2.0, width, height}; }
  static Box from_roi(const Roi& roi) {
    return {roi.center_x - roi.width / 2.0, roi.center_y - roi.height / 2.0, roi.width,
            roi.height};
  }
  bool operator==(const Box&) const = default;
};

struct Sequence {
  std::string name;
  std::vector<std::filesystem::path> frames;
  std::vector<Box> ground_truth;

  const Box& start_box() const { return ground_truth.front(); }
};

struct TrackRun {
  std::string sequence;
  std::vector<Box> predictions;
  std::vector<double> per_frame_seconds;
  std::string config_digest;
  /// Time spent decoding frames, kept out of per_frame_seconds.
  double decode_seconds = 0;
};

inline constexpr int kPrecisionSamples = 51;  // 0..50 px
inline constexpr int kSuccessSamples = 21;    // overlap 0..1, step 0.05

struct MetricCurves {
  std::array<double, kPrecisionSamples> precision{};
  std::array<double, kSuccessSamples> success{};
  double precision_at_20 = 0;
  double auc = 0;
  double fps = 0;
  /// Frames tracked and tracker seconds, kept for dataset-level fps.
  std::size_t frames = 0;
  double seconds = 0;
};

/// Overlap threshold of success sample i.
inline double success_threshold(int i) { return i / 20.0; }

/// One "x,y,w,h" line; commas, tabs and spaces all separate fields.
Box parse_box(std::string_view line);
std::vector<Box> parse_ground_truth(std::string_view text);

/// Reads an OTB-style directory: an img/ folder of frames (sorted by file
/// name) and groundtruth_rect.txt.
Sequence load_sequence(const std::filesystem::path& dir);

double center_error(const Box& prediction, const Box& truth);
/// Intersection over union; 0 when the union is empty.
double overlap_iou(const Box& prediction, const Box& truth);

/// Precision at centre-error thresholds 0..50 px, success at overlap
/// thresholds 0..1 (fraction with IoU strictly above the threshold), AUC as
/// the mean success sample, fps over the recorded tracker time. Frames with
/// invalid ground truth are skipped.
MetricCurves compute_curves(const TrackRun& run, const Sequence& sequence);

/// Unweighted mean of per-sequence curves; fps is total frames over total
/// seconds.
MetricCurves aggregate(std::span<const MetricCurves> runs);

using FrameLoader = std::function<Image(const std::filesystem::path&)>;

struct RunOptions {
  /// When false, per-frame seconds are recorded as 0 so output files are
  /// reproducible byte for byte.
  bool timing = true;
  Execution exec = Execution::parallel;
  /// Called after every frame with the frame index, the decoded frame and
  /// the predicted box.
  std::function<void(std::size_t, const Image&, const Box&)> on_frame;
};

/// One-pass evaluation: initialise on the first ground-truth box, then
/// track every remaining frame without re-initialisation. Timing covers the
/// tracker only, not frame decoding.
TrackRun run_sequence(const Sequence& sequence, const SchedulerConfig& config,
                      std::shared_ptr<const ColorNamingTable> table, std::uint64_t seed,
                      const FrameLoader& load_frame, const RunOptions& options = {});

std::string results_csv(const TrackRun& run);
std::string precision_csv(const MetricCurves& curves);
std::string success_csv(const MetricCurves& curves);

struct SummaryRow {
  std::string name;
  MetricCurves curves;
};
std::string summary_csv(std::span<const SummaryRow> rows);

}  // namespace enkcf
