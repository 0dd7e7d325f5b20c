#include "enkcf/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace enkcf {

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::large_translation:
      return "L";
    case FilterKind::small_translation:
      return "S";
    case FilterKind::scale:
      return "Scale";
  }
  return "?";
}

FilterKind select_filter(int frame_counter, int n) {
  if (frame_counter < 1) throw std::invalid_argument("select_filter: frame counter must be >= 1");
  if (n < 2) throw std::invalid_argument("select_filter: cycle length must be >= 2");
  const int phase = frame_counter % n;
  if (phase == 0) return FilterKind::scale;
  if (phase <= n / 2.0) return FilterKind::large_translation;
  return FilterKind::small_translation;
}

void SchedulerConfig::validate() const {
  if (n < 2) throw std::invalid_argument("n must be >= 2");
  if (scale_pool.empty()) throw std::invalid_argument("scale_pool must not be empty");
  if (std::find(scale_pool.begin(), scale_pool.end(), 1.0) == scale_pool.end()) {
    throw std::invalid_argument("scale_pool must contain 1.0");
  }
  for (double s : scale_pool) {
    if (!(s > 0.0)) throw std::invalid_argument("scale_pool entries must be positive");
  }
  if (!(t_rs > 0.0)) throw std::invalid_argument("t_rs must be positive");
  params_large.validate();
  params_small.validate();
  params_scale.validate();
  if (translation_template < 16 || scale_template < 16) {
    throw std::invalid_argument("template sizes must be at least 16 pixels");
  }
  if (psr_exclusion < 1 || psr_exclusion % 2 == 0) {
    throw std::invalid_argument("psr_exclusion must be odd and >= 1");
  }
  if (particles == 0) throw std::invalid_argument("particles must be >= 1");
  if (noise_pos < 0 || noise_vel < 0) throw std::invalid_argument("process noise must be >= 0");
  if (pf_window < 1) throw std::invalid_argument("pf_window must be >= 1");
  if (!(pf_sharpness > 0.0)) throw std::invalid_argument("pf_sharpness must be positive");
  if (!(resample_fraction >= 0.0 && resample_fraction <= 1.0)) {
    throw std::invalid_argument("resample_fraction must lie in [0, 1]");
  }
  if (!(translation_noise >= 0.0)) throw std::invalid_argument("translation_noise must be >= 0");
}

namespace {

constexpr int kMinTemplateCells = 4;

int template_side(double roi_side, double ratio, int cell) {
  const long cells = std::lround(roi_side * ratio / cell);
  return cell * static_cast<int>(std::max<long>(kMinTemplateCells, cells));
}

// Shrinks the PSR exclusion window so that some sidelobe always remains.
int fit_exclusion(int exclusion, const RealPlane& response) {
  const int limit = std::max(response.width(), response.height()) - 1;
  if (exclusion <= limit) return exclusion;
  return std::max(1, limit % 2 == 1 ? limit : limit - 1);
}

}  // namespace

Tracker Tracker::init(const Image& frame, const Roi& box, const SchedulerConfig& config,
                      std::shared_ptr<const ColorNamingTable> table, std::uint64_t seed,
                      Execution exec) {
  config.validate();
  if (frame.empty()) throw DimensionError("init: empty frame");
  if (!(box.width >= 1.0 && box.height >= 1.0) || !std::isfinite(box.center_x) ||
      !std::isfinite(box.center_y)) {
    throw std::invalid_argument("init: degenerate bounding box");
  }
  const double left = box.center_x - box.width / 2, right = box.center_x + box.width / 2;
  const double top = box.center_y - box.height / 2, bottom = box.center_y + box.height / 2;
  if (right <= 0 || bottom <= 0 || left >= frame.width() || top >= frame.height()) {
    throw std::invalid_argument("init: bounding box does not overlap the frame");
  }

  Tracker t;
  t.config_ = config;
  t.exec_ = exec;
  t.frame_width_ = frame.width();
  t.frame_height_ = frame.height();
  t.frame_channels_ = frame.channels();
  t.state_ = {box.center_x, box.center_y, box.width, box.height, 1.0};
  t.noise_rng_.seed(seed ^ 0x9e3779b97f4a7c15ULL);

  const bool color = frame.is_color();
  struct Setup {
    Slot* slot;
    const FilterParams* params;
    int longer_side;
  };
  const Setup setups[] = {{&t.large_, &config.params_large, config.translation_template},
                          {&t.small_, &config.params_small, config.translation_template},
                          {&t.scale_, &config.params_scale, config.scale_template}};
  for (const auto& s : setups) {
    Slot& slot = *s.slot;
    slot.params = *s.params;
    if (!color) slot.params.features.set = FeatureSet::fhog;
    if (slot.params.features.set == FeatureSet::fhog_color && !table) {
      throw std::invalid_argument("a color naming table is required for fhog+cn features");
    }
    const double roi_w = box.width * (1.0 + slot.params.padding);
    const double roi_h = box.height * (1.0 + slot.params.padding);
    const double ratio = s.longer_side / std::max(roi_w, roi_h);
    slot.template_width = template_side(roi_w, ratio, slot.params.features.cell);
    slot.template_height = template_side(roi_h, ratio, slot.params.features.cell);
  }
  t.table_ = std::move(table);

  const Point center{box.center_x, box.center_y};
  for (FilterKind kind :
       {FilterKind::large_translation, FilterKind::small_translation, FilterKind::scale}) {
    Slot& s = t.slot(kind);
    s.model = train(t.features_at(frame, kind, center, 1.0), s.params, exec);
  }
  if (config.pf_enabled && !config.every_frame_large) {
    t.particles_.emplace(config.particles, center.x, center.y, seed);
  }
  return t;
}

Tracker::Slot& Tracker::slot(FilterKind kind) {
  return const_cast<Slot&>(static_cast<const Tracker&>(*this).slot(kind));
}

const Tracker::Slot& Tracker::slot(FilterKind kind) const {
  switch (kind) {
    case FilterKind::large_translation:
      return large_;
    case FilterKind::small_translation:
      return small_;
    case FilterKind::scale:
      break;
  }
  return scale_;
}

const FilterModel& Tracker::model(FilterKind kind) const { return slot(kind).model; }

std::pair<int, int> Tracker::template_size(FilterKind kind) const {
  const Slot& s = slot(kind);
  return {s.template_width, s.template_height};
}

Roi Tracker::roi_for(FilterKind kind, Point center, double scale) const {
  const double grow = scale * (1.0 + slot(kind).params.padding);
  return {center.x, center.y, state_.base_width * grow, state_.base_height * grow};
}

FeatureMap Tracker::features_at(const Image& frame, FilterKind kind, Point center,
                                double scale) const {
  const Slot& s = slot(kind);
  const Image patch = resize_patch(crop_patch(frame, roi_for(kind, center, scale)),
                                   s.template_width, s.template_height);
  return build_feature_stack(patch, s.params.features, table_.get(), exec_);
}

Point Tracker::shift_to_pixels(const ResponseMap& response, const Roi& roi,
                               const Slot& s) const {
  const Shift shift = response.displacement();
  const double cell = s.params.features.cell;
  return {shift.dx * cell * roi.width / s.template_width,
          shift.dy * cell * roi.height / s.template_height};
}

Point Tracker::draw_noise() {
  const double a = config_.translation_noise;
  if (a <= 0.0) return {};
  std::uniform_real_distribution<double> u(-a, a);
  const double dx = u(noise_rng_);
  return {dx, u(noise_rng_)};
}

namespace {

Roi shifted(Roi roi, Point by) {
  roi.center_x += by.x;
  roi.center_y += by.y;
  return roi;
}

}  // namespace

Point Tracker::observe(const ResponseMap& response, const Roi& roi, Point filter_center,
                       bool use_pf) {
  report_.filter_center = filter_center;
  if (!use_pf) return filter_center;
  particles_->weigh(response, roi, config_.pf_window, config_.pf_sharpness, exec_);
  particles_->resample_if_needed(config_.resample_fraction * particles_->size());
  return particles_->posterior_mean();
}

Point Tracker::translate(const Image& frame, FilterKind kind, Point prior, bool use_pf) {
  Slot& s = slot(kind);
  const Roi roi = roi_for(kind, prior, state_.scale);
  const ResponseMap response = detect(s.model, features_at(frame, kind, prior, state_.scale), exec_);
  ++report_.detections;
  report_.psr = psr(response, fit_exclusion(config_.psr_exclusion, response.values));
  const Point offset = shift_to_pixels(response, roi, s);
  // Injected noise displaces the whole measurement, so the particle filter
  // sees the same corrupted response position as the direct estimate.
  const Point noise = draw_noise();
  const Point proposed{prior.x + offset.x + noise.x, prior.y + offset.y + noise.y};
  const Point center = observe(response, shifted(roi, noise), proposed, use_pf);
  update(s.model, features_at(frame, kind, center, state_.scale), exec_);
  return center;
}

ScaleEstimate Tracker::estimate_scale(const Image& frame) const {
  return estimate_scale_at(frame, {state_.center_x, state_.center_y});
}

ScaleEstimate Tracker::estimate_scale_at(const Image& frame, Point center) const {
  ScaleEstimate best;
  bool have = false;
  const auto& pool = config_.scale_pool;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double candidate_scale = state_.scale * pool[i];
    ResponseMap response =
        detect(scale_.model, features_at(frame, FilterKind::scale, center, candidate_scale), exec_);
    const double score = psr(response, fit_exclusion(config_.psr_exclusion, response.values));
    bool better = !have || score > best.psr;
    if (have && score == best.psr) {
      better = std::abs(pool[i] - 1.0) < std::abs(best.factor - 1.0);
    }
    if (better) {
      best.factor = pool[i];
      best.index = i;
      best.psr = score;
      best.response = std::move(response);
      best.roi = roi_for(FilterKind::scale, center, candidate_scale);
      have = true;
    }
  }
  return best;
}

Point Tracker::rescale(const Image& frame, Point prior, bool use_pf, bool recenter) {
  ScaleEstimate est = estimate_scale_at(frame, prior);
  report_.detections += static_cast<int>(config_.scale_pool.size());
  report_.scale_ran = true;
  report_.scale_factor = est.factor;
  report_.psr = est.psr;
  const double new_scale = state_.scale * est.factor;

  Point proposed = prior;
  Roi measured = est.roi;
  if (recenter) {
    const Point offset = shift_to_pixels(est.response, est.roi, scale_);
    const Point noise = draw_noise();
    proposed = {prior.x + offset.x + noise.x, prior.y + offset.y + noise.y};
    measured = shifted(measured, noise);
  }
  const Point center = observe(est.response, measured, proposed, use_pf);
  state_.scale = new_scale;
  if (est.psr >= config_.t_rs) {
    update(scale_.model, features_at(frame, FilterKind::scale, center, new_scale), exec_);
    report_.scale_model_updated = true;
  }
  return center;
}

TargetState Tracker::step(const Image& frame) {
  if (frame.width() != frame_width_ || frame.height() != frame_height_ ||
      frame.channels() != frame_channels_) {
    throw DimensionError("step: frame dimensions changed mid-sequence");
  }
  ++fc_;
  report_ = StepReport{};
  const FilterKind kind = select_filter(fc_, config_.n);
  report_.kind = kind;

  const bool use_pf = particles_.has_value();
  const Point prior = use_pf ? particles_->predict(config_.noise_pos, config_.noise_vel)
                             : Point{state_.center_x, state_.center_y};
  report_.prior = prior;

  Point center;
  if (config_.every_frame_large) {
    center = translate(frame, FilterKind::large_translation, prior, false);
    report_.large_translation_ran = true;
    if (kind == FilterKind::scale) center = rescale(frame, center, false, false);
  } else if (kind == FilterKind::scale) {
    center = rescale(frame, prior, use_pf, config_.recenter_on_scale);
  } else {
    center = translate(frame, kind, prior, use_pf);
    report_.large_translation_ran = kind == FilterKind::large_translation;
  }
  state_.center_x = center.x;
  state_.center_y = center.y;
  return state_;
}

}  // namespace enkcf
