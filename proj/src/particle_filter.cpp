#include "enkcf/particle_filter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace enkcf {

std::vector<std::size_t> systematic_resample_indices(std::span<const double> weights,
                                                     double offset) {
  const std::size_t n = weights.size();
  std::vector<std::size_t> picks(n);
  if (n == 0) return picks;
  double total = 0.0;
  for (double w : weights) total += w;
  double cumulative = weights[0];
  std::size_t j = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double pointer = (offset + static_cast<double>(k) / n) * total;
    while (pointer >= cumulative && j + 1 < n) cumulative += weights[++j];
    picks[k] = j;
  }
  return picks;
}

ParticleSet::ParticleSet(std::size_t count, double x, double y, std::uint64_t seed)
    : rng_(seed) {
  if (count == 0) throw std::invalid_argument("particle set needs at least one particle");
  particles_.assign(count, Particle{x, y, 0.0, 0.0, 1.0 / count});
}

Point ParticleSet::predict(double noise_pos, double noise_vel) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& p : particles_) {
    p.x += p.vx;
    p.y += p.vy;
    if (noise_pos > 0) {
      p.x += noise_pos * gauss(rng_);
      p.y += noise_pos * gauss(rng_);
    }
    if (noise_vel > 0) {
      p.vx += noise_vel * gauss(rng_);
      p.vy += noise_vel * gauss(rng_);
    }
  }
  return posterior_mean();
}

void ParticleSet::weigh(const ResponseMap& response, const Roi& roi, int window,
                        double sharpness, Execution exec) {
  const RealPlane& r = response.values;
  if (r.empty()) throw DimensionError("weigh: empty response map");
  if (window < 1) throw std::invalid_argument("weigh: window must be >= 1");
  if (!(sharpness > 0.0)) throw std::invalid_argument("weigh: sharpness must be positive");
  const int w = r.width();
  const int h = r.height();
  const double cell_w = roi.width / w;
  const double cell_h = roi.height / h;
  const int half = window / 2;
  // Displacements representable on the cyclic grid: [-(n - 1 - n/2), n/2].
  const int min_dx = -(w - 1 - w / 2), max_dx = w / 2;
  const int min_dy = -(h - 1 - h / 2), max_dy = h / 2;

  for_each_index(exec, static_cast<int>(particles_.size()), [&](int i) {
    Particle& p = particles_[i];
    const long dx = std::lround((p.x - roi.center_x) / cell_w);
    const long dy = std::lround((p.y - roi.center_y) / cell_h);
    if (dx < min_dx || dx > max_dx || dy < min_dy || dy > max_dy) {
      p.weight = kWeightFloor;
      return;
    }
    const int cx = static_cast<int>((dx + w) % w);
    const int cy = static_cast<int>((dy + h) % h);
    double sum = 0.0;
    for (int j = -half; j < window - half; ++j) {
      const int yy = ((cy + j) % h + h) % h;
      for (int k = -half; k < window - half; ++k) {
        const int xx = ((cx + k) % w + w) % w;
        sum += std::max(0.0, r(xx, yy));
      }
    }
    p.weight = std::max(sum, kWeightFloor);
  });

  if (sharpness != 1.0) {
    double top = 0.0;
    for (const auto& p : particles_) top = std::max(top, p.weight);
    for (auto& p : particles_) p.weight = std::exp(sharpness * std::log(p.weight / top));
  }
  double total = 0.0;
  for (const auto& p : particles_) total += p.weight;
  for (auto& p : particles_) p.weight /= total;
}

double ParticleSet::effective_sample_size() const {
  double sum_sq = 0.0;
  for (const auto& p : particles_) sum_sq += p.weight * p.weight;
  if (sum_sq <= 0.0) throw NumericError("effective sample size: all weights are zero");
  return 1.0 / sum_sq;
}

bool ParticleSet::resample_if_needed(double threshold) {
  if (effective_sample_size() >= threshold) return false;
  const std::size_t n = particles_.size();
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = particles_[i].weight;
  std::uniform_real_distribution<double> offset(0.0, 1.0 / n);
  const auto picks = systematic_resample_indices(weights, offset(rng_));
  std::vector<Particle> next(n);
  for (std::size_t k = 0; k < n; ++k) {
    next[k] = particles_[picks[k]];
    next[k].weight = 1.0 / n;
  }
  particles_ = std::move(next);
  return true;
}

Point ParticleSet::posterior_mean() const {
  Point m;
  double total = 0.0;
  for (const auto& p : particles_) {
    m.x += p.weight * p.x;
    m.y += p.weight * p.y;
    total += p.weight;
  }
  m.x /= total;
  m.y /= total;
  return m;
}

}  // namespace enkcf
