#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "enkcf/image.hpp"
#include "enkcf/kcf.hpp"
#include "enkcf/parallel.hpp"

namespace enkcf {

/// Constant-velocity state of one particle, in frame pixels.
struct Particle {
  double x = 0;
  double y = 0;
  double vx = 0;
  double vy = 0;
  double weight = 0;
};

struct Point {
  double x = 0;
  double y = 0;
};

/// Weight given to particles that land outside the response map or on an
/// all-negative window.
inline constexpr double kWeightFloor = 1e-12;

/// Indices selected by systematic resampling for offset u in [0, 1/N): the
/// k-th pointer is u + k / N over the cumulative weights.
std::vector<std::size_t> systematic_resample_indices(std::span<const double> weights,
                                                     double offset);

class ParticleSet {
 public:
  /// `count` identical particles at (x, y) with zero velocity.
  ParticleSet(std::size_t count, double x, double y, std::uint64_t seed);

  /// Moves every particle by its velocity, then perturbs position and
  /// velocity with zero-mean Gaussian noise. Returns the weighted mean
  /// position (the prior).
  Point predict(double noise_pos, double noise_vel);

  /// Re-weights each particle by the sum of the (non-negative part of the)
  /// response over a window x window neighbourhood of the cell its position
  /// maps to, raised to `sharpness`. `roi` is the frame region the response
  /// map covers, centred on the zero-displacement cell. Weights are
  /// renormalised to sum to 1.
  void weigh(const ResponseMap& response, const Roi& roi, int window, double sharpness = 1.0,
             Execution exec = Execution::parallel);

  /// 1 / sum(w^2).
  double effective_sample_size() const;

  /// Systematic resampling when the effective sample size falls below
  /// `threshold`; returns whether it happened.
  bool resample_if_needed(double threshold);

  Point posterior_mean() const;

  std::size_t size() const { return particles_.size(); }
  std::span<const Particle> particles() const { return particles_; }
  std::span<Particle> particles() { return particles_; }

 private:
  std::vector<Particle> particles_;
  std::mt19937_64 rng_;
};

}  // namespace enkcf
