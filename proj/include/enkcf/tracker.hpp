#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "enkcf/features.hpp"
#include "enkcf/image.hpp"
#include "enkcf/kcf.hpp"
#include "enkcf/parallel.hpp"
#include "enkcf/particle_filter.hpp"

namespace enkcf {

/// The three filters of the ensemble.
enum class FilterKind { large_translation, small_translation, scale };

std::string_view to_string(FilterKind kind);

/// Filter deployed on frame `frame_counter` (>= 1) of a cycle of n frames:
/// the scale filter when fc % n == 0, the large-area translation filter when
/// 0 < fc % n <= n / 2 (real division), the small-area one otherwise.
FilterKind select_filter(int frame_counter, int n);

struct TargetState {
  double center_x = 0;
  double center_y = 0;
  double base_width = 0;
  double base_height = 0;
  double scale = 1.0;

  double width() const { return base_width * scale; }
  double height() const { return base_height * scale; }
  Roi box() const { return {center_x, center_y, width(), height()}; }
};

struct SchedulerConfig {
  /// Frames per deployment cycle.
  int n = 5;
  /// Candidate scale factors; 0.952381 is 1/1.05 at the precision the
  /// configuration file carries.
  std::vector<double> scale_pool{1.05, 1.0, 0.952381};
  /// Minimum PSR of the winning scale response for the scale model to learn.
  double t_rs = 4.0;

  FilterParams params_large{.kernel_bandwidth = 0.7,
                            .learning_rate = 0.020,
                            .padding = 2.0,
                            .features = {FeatureSet::fhog_color, true, 4}};
  FilterParams params_small{.kernel_bandwidth = 0.6,
                            .learning_rate = 0.020,
                            .padding = 1.5,
                            .features = {FeatureSet::fhog, true, 4}};
  FilterParams params_scale{.kernel_bandwidth = 0.9,
                            .learning_rate = 0.010,
                            .padding = 0.0,
                            .features = {FeatureSet::fhog_color, false, 4}};

  /// Longer template side in pixels for the translation and scale filters.
  int translation_template = 128;
  int scale_template = 64;
  int psr_exclusion = 11;

  bool pf_enabled = true;
  /// Low-frame-rate mode: the large-area filter runs on every frame, the
  /// scale filter keeps its schedule and the particle filter is off.
  bool every_frame_large = false;
  /// Re-centre on the winning scale response's peak on scale frames.
  bool recenter_on_scale = true;

  std::size_t particles = 1000;
  double noise_pos = 3.0;
  double noise_vel = 1.0;
  int pf_window = 5;
  /// Exponent applied to the window sums before normalisation; 1 uses them
  /// as weights directly.
  double pf_sharpness = 10.0;
  /// Resample when N_eff < resample_fraction * particles.
  double resample_fraction = 0.5;

  /// Uniform [-a, a] pixel noise added to every filter translation
  /// estimate (and to the response position the particle filter weighs). Zero in normal operation; used in robustness experiments.
  double translation_noise = 0.0;

  void validate() const;
  bool operator==(const SchedulerConfig&) const = default;
};

/// What the last step() did, for diagnostics and tests.
struct StepReport {
  FilterKind kind = FilterKind::scale;
  /// Number of correlation-filter detections run this frame.
  int detections = 0;
  bool large_translation_ran = false;
  bool scale_ran = false;
  Point prior;
  /// Centre proposed by the correlation filter (after any injected noise).
  Point filter_center;
  double psr = 0.0;
  double scale_factor = 1.0;
  bool scale_model_updated = false;
};

struct ScaleEstimate {
  double factor = 1.0;
  std::size_t index = 0;
  ResponseMap response;
  double psr = 0.0;
  /// Frame region the winning response covers.
  Roi roi;
};

/// Ensemble of three kernelized correlation filters run in a fixed
/// round-robin, smoothed by a constant-velocity particle filter.
///
/// One instance tracks one target and must not be stepped concurrently;
/// distinct instances are independent.
class Tracker {
 public:
  /// Trains all three filters on the first frame. `table` may be null when
  /// no filter asks for color names or the frame is grayscale (color
  /// features are then dropped).
  static Tracker init(const Image& frame, const Roi& box, const SchedulerConfig& config,
                      std::shared_ptr<const ColorNamingTable> table, std::uint64_t seed,
                      Execution exec = Execution::parallel);

  /// Tracks one frame and returns the new target state.
  TargetState step(const Image& frame);

  /// Scores every scale-pool candidate around the current centre and
  /// returns the one with the highest PSR (ties: closest to 1, then
  /// earliest in the pool).
  ScaleEstimate estimate_scale(const Image& frame) const;

  const TargetState& state() const { return state_; }
  int frame_counter() const { return fc_; }
  const StepReport& last_step() const { return report_; }
  const SchedulerConfig& config() const { return config_; }
  const FilterModel& model(FilterKind kind) const;
  /// Null when the particle filter is disabled.
  const ParticleSet* particles() const { return particles_ ? &*particles_ : nullptr; }

  /// Template size in pixels used by a filter.
  std::pair<int, int> template_size(FilterKind kind) const;

  /// Frame region a filter looks at for a given centre and scale factor.
  Roi roi_for(FilterKind kind, Point center, double scale) const;

  /// Features of the filter's region around `center` at `scale`.
  FeatureMap features_at(const Image& frame, FilterKind kind, Point center, double scale) const;

 private:
  struct Slot {
    FilterParams params;
    int template_width = 0;
    int template_height = 0;
    FilterModel model;
  };

  Tracker() = default;
  Slot& slot(FilterKind kind);
  const Slot& slot(FilterKind kind) const;
  Point shift_to_pixels(const ResponseMap& response, const Roi& roi, const Slot& s) const;
  Point draw_noise();
  Point translate(const Image& frame, FilterKind kind, Point prior, bool use_pf);
  Point rescale(const Image& frame, Point prior, bool use_pf, bool recenter);
  ScaleEstimate estimate_scale_at(const Image& frame, Point center) const;
  Point observe(const ResponseMap& response, const Roi& roi, Point filter_center, bool use_pf);

  SchedulerConfig config_;
  std::shared_ptr<const ColorNamingTable> table_;
  Execution exec_ = Execution::parallel;
  int frame_width_ = 0;
  int frame_height_ = 0;
  int frame_channels_ = 0;
  int fc_ = 0;
  TargetState state_;
  Slot large_;
  Slot small_;
  Slot scale_;
  std::optional<ParticleSet> particles_;
  std::mt19937_64 noise_rng_;
  StepReport report_;
};

}  // namespace enkcf
