#include "oracles.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace enkcf::testing {

ComplexPlane naive_dft2(const RealPlane& p) {
  const int w = p.width();
  const int h = p.height();
  ComplexPlane out(w, h);
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      std::complex<double> sum = 0;
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const double angle = -2.0 * std::numbers::pi * (double(u) * x / w + double(v) * y / h);
          sum += p(x, y) * std::polar(1.0, angle);
        }
      }
      out(u, v) = sum;
    }
  }
  return out;
}

FeatureMap cyclic_shift(const FeatureMap& x, int dx, int dy) {
  const int w = x.width();
  const int h = x.height();
  std::vector<RealPlane> planes;
  for (const auto& src : x.planes()) {
    RealPlane dst(w, h);
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        dst(i, j) = src(((i - dx) % w + w) % w, ((j - dy) % h + h) % h);
      }
    }
    planes.push_back(std::move(dst));
  }
  return FeatureMap(std::move(planes));
}

namespace {

double squared_distance(const FeatureMap& a, const FeatureMap& b) {
  double d = 0;
  for (int c = 0; c < a.channels(); ++c) {
    for (std::size_t k = 0; k < a.channel(c).size(); ++k) {
      const double diff = a.channel(c)[k] - b.channel(c)[k];
      d += diff * diff;
    }
  }
  return d;
}

double kernel_scale(const FeatureMap& x, DistanceScaling scaling) {
  return scaling == DistanceScaling::none
             ? 1.0
             : static_cast<double>(x.width()) * x.height() * x.channels();
}

}  // namespace

RealPlane brute_force_correlation(const FeatureMap& x, const FeatureMap& z, double bandwidth,
                                  DistanceScaling scaling) {
  const int w = x.width();
  const int h = x.height();
  const double s = kernel_scale(x, scaling);
  RealPlane out(w, h);
  for (int dy = 0; dy < h; ++dy) {
    for (int dx = 0; dx < w; ++dx) {
      // Shift z back so that cell p of x meets cell p + (dx, dy) of z.
      const double d = squared_distance(x, cyclic_shift(z, -dx, -dy));
      out(dx, dy) = std::exp(-std::max(0.0, d) / (s * bandwidth * bandwidth));
    }
  }
  return out;
}

RealPlane circulant_oracle_solve(const FeatureMap& x, const RealPlane& y, double lambda,
                                 double bandwidth, DistanceScaling scaling) {
  const int w = x.width();
  const int h = x.height();
  const int n = w * h;
  const double s = kernel_scale(x, scaling);
  std::vector<FeatureMap> shifts;
  shifts.reserve(n);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) shifts.push_back(cyclic_shift(x, i, j));
  }
  Eigen::MatrixXd k(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const double v = std::exp(-std::max(0.0, squared_distance(shifts[a], shifts[b])) /
                                (s * bandwidth * bandwidth));
      k(a, b) = v;
      k(b, a) = v;
    }
  }
  k.diagonal().array() += lambda;
  Eigen::VectorXd rhs(n);
  for (int a = 0; a < n; ++a) rhs(a) = y[a];
  const Eigen::VectorXd alpha = k.ldlt().solve(rhs);
  RealPlane out(w, h);
  for (int a = 0; a < n; ++a) out[a] = alpha(a);
  return out;
}

double max_abs_diff(const RealPlane& a, const RealPlane& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const ComplexPlane& a, const ComplexPlane& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const RealPlane& a) {
  double m = 0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace enkcf::testing
