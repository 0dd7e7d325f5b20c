#pragma once

#include <vector>

#include "enkcf/features.hpp"
#include "enkcf/parallel.hpp"
#include "enkcf/plane.hpp"

namespace enkcf {

/// How the squared distance inside the Gaussian kernel is scaled before
/// dividing by bandwidth^2. `none` is the textbook formula; `per_element`
/// divides by W*H*C so the bandwidth is independent of template size.
enum class DistanceScaling { none, per_element };

struct FilterParams {
  double kernel_bandwidth = 0.7;
  double lambda = 1e-4;
  double learning_rate = 0.02;
  /// ROI side = target side * (1 + padding).
  double padding = 2.0;
  FilterFeatureSpec features{};
  /// Label sigma in cells is label_sigma_factor * sqrt(W * H).
  double label_sigma_factor = 0.1;
  DistanceScaling distance_scaling = DistanceScaling::per_element;

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  bool operator==(const FilterParams&) const = default;
};

/// A learned kernelized correlation filter.
struct FilterModel {
  ComplexPlane alpha_spectrum;
  /// Appearance template in the spatial domain.
  FeatureMap appearance;
  ComplexPlane label_spectrum;
  FilterParams params;

  /// Per-channel spectra of `appearance` and its squared norm; kept in
  /// sync by train() and update().
  std::vector<ComplexPlane> appearance_spectra;
  double appearance_energy = 0.0;
};

/// Integer cyclic shift, in cells.
struct Shift {
  int dx = 0;
  int dy = 0;
  bool operator==(const Shift&) const = default;
};

struct ResponseMap {
  RealPlane values;
  int peak_x = 0;
  int peak_y = 0;
  double peak_value = 0.0;

  /// Locates the maximum; ties go to the smallest row-major index.
  static ResponseMap from_values(RealPlane values);

  /// Peak position read as a cyclic shift: indices past half the grid map
  /// to negative displacements.
  Shift displacement() const;
};

/// Gaussian regression target with its peak of 1 at (0, 0), wrapping around
/// the grid edges; sigma = sigma_factor * sqrt(width * height) cells.
RealPlane gaussian_label(int width, int height, double sigma_factor);

/// Gaussian kernel between x and every cyclic shift of z:
/// exp(-max(0, |x|^2 + |z|^2 - 2 * IDFT(sum_c conj(X_c) * Z_c)) / (s * bandwidth^2))
/// with s = 1 or W*H*C depending on `scaling`.
RealPlane gaussian_correlation(const FeatureMap& x, const FeatureMap& z, double bandwidth,
                               DistanceScaling scaling = DistanceScaling::none,
                               Execution exec = Execution::parallel);

/// Dual ridge regression over all cyclic shifts of x:
/// alpha_hat = y_hat / (k_hat^{xx} + lambda).
FilterModel train(const FeatureMap& x, const FilterParams& params,
                  Execution exec = Execution::parallel);

/// Same with an explicit regression target in place of the Gaussian label.
FilterModel train(const FeatureMap& x, const RealPlane& label, const FilterParams& params,
                  Execution exec = Execution::parallel);

/// Linear (MOSSE-style) primal filter for a single channel:
/// w_hat = conj(X) * Y / (conj(X) * X + lambda). Diagnostic path only.
ComplexPlane train_linear(const FeatureMap& x, const FilterParams& params);
ComplexPlane train_linear(const FeatureMap& x, const RealPlane& label, const FilterParams& params);

/// Correlation response of z against the model at all cyclic shifts.
ResponseMap detect(const FilterModel& model, const FeatureMap& z,
                   Execution exec = Execution::parallel);

/// Linear interpolation toward a filter freshly trained on x_new, with
/// rate params.learning_rate, for both the dual spectrum and the template.
void update(FilterModel& model, const FeatureMap& x_new, Execution exec = Execution::parallel);

/// Peak-to-sidelobe ratio: (peak - mean) / stddev over the cells outside an
/// exclusion x exclusion window centred (cyclically) on the peak. Returns
/// kPsrCap when the sidelobe is flat.
double psr(const ResponseMap& response, int exclusion = 11);

inline constexpr double kPsrCap = 100.0;

}  // namespace enkcf
