#include "enkcf/kcf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "enkcf/spectral.hpp"

namespace enkcf {
namespace {

struct SpectralStack {
  std::vector<ComplexPlane> channels;
  double energy = 0.0;
};

SpectralStack to_spectral(const FeatureMap& x, Execution exec) {
  SpectralStack s;
  s.channels.resize(x.channels());
  for_each_index(exec, x.channels(), [&](int c) { s.channels[c] = dft2(x.channel(c)); });
  for (const auto& plane : x.planes()) {
    for (double v : plane.values()) s.energy += v * v;
  }
  return s;
}

RealPlane kernel_from_spectra(const std::vector<ComplexPlane>& xf, double xx,
                              const std::vector<ComplexPlane>& zf, double zz, double bandwidth,
                              DistanceScaling scaling, Execution exec) {
  const int w = xf.front().width();
  const int h = xf.front().height();
  const int channels = static_cast<int>(xf.size());

  // Summing channels per frequency bin keeps serial and parallel results
  // bit-identical.
  ComplexPlane cross(w, h);
  for_each_index(exec, h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      std::complex<double> acc{};
      for (int c = 0; c < channels; ++c) acc += std::conj(xf[c](x, y)) * zf[c](x, y);
      cross(x, y) = acc;
    }
  });
  RealPlane k = idft2(cross);

  double denom = bandwidth * bandwidth;
  if (scaling == DistanceScaling::per_element) denom *= static_cast<double>(w) * h * channels;
  for (double& v : k.values()) {
    const double distance = std::max(0.0, xx + zz - 2.0 * v);
    v = std::exp(-distance / denom);
  }
  return k;
}

void require_same_shape(const FeatureMap& a, const FeatureMap& b, const char* what) {
  if (a.empty() || b.empty() || !a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": feature maps differ in shape (" +
                         std::to_string(a.width()) + "x" + std::to_string(a.height()) + "x" +
                         std::to_string(a.channels()) + " vs " + std::to_string(b.width()) +
                         "x" + std::to_string(b.height()) + "x" +
                         std::to_string(b.channels()) + ")");
  }
}

ComplexPlane solve_dual(const ComplexPlane& label_spectrum, const ComplexPlane& kernel_spectrum,
                        double lambda) {
  ComplexPlane alpha(label_spectrum.width(), label_spectrum.height());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    std::complex<double> den = kernel_spectrum[i] + lambda;
    if (std::abs(den) < 1e-12) den = 1e-12;
    alpha[i] = label_spectrum[i] / den;
  }
  return alpha;
}

}  // namespace

void FilterParams::validate() const {
  if (!(lambda > 0.0)) throw std::invalid_argument("filter lambda must be positive");
  if (!(learning_rate >= 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("filter learning rate must lie in [0, 1]");
  }
  if (!(kernel_bandwidth > 0.0)) throw std::invalid_argument("kernel bandwidth must be positive");
  if (!(padding >= 0.0)) throw std::invalid_argument("padding must be non-negative");
  if (!(label_sigma_factor > 0.0)) throw std::invalid_argument("label sigma factor must be positive");
  if (features.cell < 1) throw std::invalid_argument("cell size must be positive");
}

ResponseMap ResponseMap::from_values(RealPlane values) {
  if (values.empty()) throw DimensionError("response map is empty");
  ResponseMap r;
  const auto v = values.values();
  const auto best = std::max_element(v.begin(), v.end());  // first maximum
  const auto index = static_cast<int>(best - v.begin());
  r.peak_value = *best;
  r.peak_x = index % values.width();
  r.peak_y = index / values.width();
  r.values = std::move(values);
  return r;
}

Shift ResponseMap::displacement() const {
  const int w = values.width();
  const int h = values.height();
  return {peak_x > w / 2 ? peak_x - w : peak_x, peak_y > h / 2 ? peak_y - h : peak_y};
}

RealPlane gaussian_label(int width, int height, double sigma_factor) {
  if (!(sigma_factor > 0.0)) throw std::invalid_argument("label sigma factor must be positive");
  RealPlane label(width, height);
  const double sigma = sigma_factor * std::sqrt(static_cast<double>(width) * height);
  const double inv = 1.0 / (2.0 * sigma * sigma);
  for (int y = 0; y < height; ++y) {
    const int dy = y > height / 2 ? y - height : y;
    for (int x = 0; x < width; ++x) {
      const int dx = x > width / 2 ? x - width : x;
      label(x, y) = std::exp(-(dx * dx + dy * dy) * inv);
    }
  }
  return label;
}

RealPlane gaussian_correlation(const FeatureMap& x, const FeatureMap& z, double bandwidth,
                               DistanceScaling scaling, Execution exec) {
  require_same_shape(x, z, "gaussian_correlation");
  const SpectralStack xs = to_spectral(x, exec);
  const SpectralStack zs = to_spectral(z, exec);
  return kernel_from_spectra(xs.channels, xs.energy, zs.channels, zs.energy, bandwidth, scaling,
                             exec);
}

FilterModel train(const FeatureMap& x, const FilterParams& params, Execution exec) {
  if (x.empty()) throw DimensionError("train: empty feature map");
  params.validate();
  return train(x, gaussian_label(x.width(), x.height(), params.label_sigma_factor), params, exec);
}

FilterModel train(const FeatureMap& x, const RealPlane& label, const FilterParams& params,
                  Execution exec) {
  if (x.empty()) throw DimensionError("train: empty feature map");
  if (label.width() != x.width() || label.height() != x.height()) {
    throw DimensionError("train: label grid differs from the feature grid");
  }
  params.validate();
  FilterModel model;
  model.params = params;
  model.appearance = x;
  SpectralStack xs = to_spectral(x, exec);
  model.label_spectrum = dft2(label);
  const RealPlane k = kernel_from_spectra(xs.channels, xs.energy, xs.channels, xs.energy,
                                          params.kernel_bandwidth, params.distance_scaling, exec);
  model.alpha_spectrum = solve_dual(model.label_spectrum, dft2(k), params.lambda);
  model.appearance_spectra = std::move(xs.channels);
  model.appearance_energy = xs.energy;
  return model;
}

ComplexPlane train_linear(const FeatureMap& x, const FilterParams& params) {
  if (x.empty()) throw DimensionError("train_linear: empty feature map");
  return train_linear(x, gaussian_label(x.width(), x.height(), params.label_sigma_factor), params);
}

ComplexPlane train_linear(const FeatureMap& x, const RealPlane& label,
                          const FilterParams& params) {
  if (x.empty()) throw DimensionError("train_linear: empty feature map");
  if (x.channels() != 1) throw DimensionError("train_linear: single-channel input required");
  if (label.width() != x.width() || label.height() != x.height()) {
    throw DimensionError("train_linear: label grid differs from the feature grid");
  }
  if (!(params.lambda >= 0.0)) throw std::invalid_argument("train_linear: lambda must be >= 0");
  const ComplexPlane xf = dft2(x.channel(0));
  const ComplexPlane yf = dft2(label);
  ComplexPlane w(x.width(), x.height());
  for (std::size_t i = 0; i < w.size(); ++i) {
    double den = std::norm(xf[i]) + params.lambda;
    if (den < 1e-12) den = 1e-12;
    w[i] = std::conj(xf[i]) * yf[i] / den;
  }
  return w;
}

ResponseMap detect(const FilterModel& model, const FeatureMap& z, Execution exec) {
  require_same_shape(model.appearance, z, "detect");
  const SpectralStack zs = to_spectral(z, exec);
  const RealPlane k =
      kernel_from_spectra(model.appearance_spectra, model.appearance_energy, zs.channels,
                          zs.energy, model.params.kernel_bandwidth,
                          model.params.distance_scaling, exec);
  ComplexPlane kf = dft2(k);
  for (std::size_t i = 0; i < kf.size(); ++i) kf[i] *= model.alpha_spectrum[i];
  return ResponseMap::from_values(idft2(kf));
}

void update(FilterModel& model, const FeatureMap& x_new, Execution exec) {
  require_same_shape(model.appearance, x_new, "update");
  const double beta = model.params.learning_rate;
  SpectralStack xs = to_spectral(x_new, exec);
  const RealPlane k = kernel_from_spectra(xs.channels, xs.energy, xs.channels, xs.energy,
                                          model.params.kernel_bandwidth,
                                          model.params.distance_scaling, exec);
  const ComplexPlane fresh = solve_dual(model.label_spectrum, dft2(k), model.params.lambda);

  for (std::size_t i = 0; i < fresh.size(); ++i) {
    model.alpha_spectrum[i] = (1.0 - beta) * model.alpha_spectrum[i] + beta * fresh[i];
  }
  double energy = 0.0;
  for (int c = 0; c < x_new.channels(); ++c) {
    auto old_values = model.appearance.channel(c).values();
    const auto new_values = x_new.channel(c).values();
    for (std::size_t i = 0; i < old_values.size(); ++i) {
      old_values[i] = (1.0 - beta) * old_values[i] + beta * new_values[i];
      energy += old_values[i] * old_values[i];
    }
    auto& spectrum = model.appearance_spectra[c];
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      spectrum[i] = (1.0 - beta) * spectrum[i] + beta * xs.channels[c][i];
    }
  }
  model.appearance_energy = energy;
}

double psr(const ResponseMap& response, int exclusion) {
  const RealPlane& v = response.values;
  if (v.empty()) throw DimensionError("psr: empty response");
  if (exclusion < 1 || exclusion % 2 == 0) {
    throw std::invalid_argument("psr: exclusion window must be odd and >= 1");
  }
  const int w = v.width();
  const int h = v.height();
  const int half = exclusion / 2;
  auto cyclic = [](int a, int b, int n) {
    const int d = std::abs(a - b) % n;
    return std::min(d, n - d);
  };

  auto in_sidelobe = [&](int x, int y) {
    return cyclic(y, response.peak_y, h) > half || cyclic(x, response.peak_x, w) > half;
  };
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!in_sidelobe(x, y)) continue;
      sum += v(x, y);
      ++count;
    }
  }
  if (count == 0) throw DimensionError("psr: exclusion window covers the whole response");
  const double mean = sum / count;
  double squares = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (in_sidelobe(x, y)) squares += (v(x, y) - mean) * (v(x, y) - mean);
    }
  }
  const double stddev = std::sqrt(squares / count);
  if (stddev < 1e-12) return kPsrCap;
  return (response.peak_value - mean) / stddev;
}

}  // namespace enkcf
