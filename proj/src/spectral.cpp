#include "enkcf/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>
#include <vector>

namespace enkcf {
namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on
// caller-owned arrays is. Plans are created once per size and never freed.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan forward(int width, int height) { return get(width, height, true); }
  fftw_plan inverse(int width, int height) { return get(width, height, false); }

 private:
  fftw_plan get(int width, int height, bool forward) {
    const auto key = std::make_tuple(width, height, forward);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t n = static_cast<std::size_t>(width) * height;
    fftw_complex* scratch_c = fftw_alloc_complex(n);
    fftw_complex* scratch_out = fftw_alloc_complex(n);
    double* scratch_r = fftw_alloc_real(n);
    // FFTW_ESTIMATE keeps the chosen algorithm, and so the rounding,
    // identical from run to run.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = forward
                         ? fftw_plan_dft_r2c_2d(height, width, scratch_r, scratch_c, flags)
                         : fftw_plan_dft_2d(height, width, scratch_c, scratch_out,
                                            FFTW_BACKWARD, flags);
    fftw_free(scratch_r);
    fftw_free(scratch_out);
    fftw_free(scratch_c);
    plans_.emplace(key, plan);
    return plan;
  }

  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

ComplexPlane dft2(const RealPlane& plane) {
  if (plane.empty()) throw DimensionError("dft2: empty plane");
  const int w = plane.width();
  const int h = plane.height();
  const int half_w = w / 2 + 1;

  std::vector<std::complex<double>> half(static_cast<std::size_t>(half_w) * h);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(PlanCache::instance().forward(w, h), const_cast<double*>(plane.data()),
                       as_fftw(half.data()));

  ComplexPlane out(w, h);
  for (int y = 0; y < h; ++y) {
    const int mirror_y = (h - y) % h;
    for (int x = 0; x < w; ++x) {
      if (x < half_w) {
        out(x, y) = half[static_cast<std::size_t>(y) * half_w + x];
      } else {
        out(x, y) = std::conj(half[static_cast<std::size_t>(mirror_y) * half_w + (w - x)]);
      }
    }
  }
  return out;
}

RealPlane idft2(const ComplexPlane& plane) {
  if (plane.empty()) throw DimensionError("idft2: empty plane");
  const int w = plane.width();
  const int h = plane.height();

  std::vector<std::complex<double>> result(plane.size());
  fftw_execute_dft(PlanCache::instance().inverse(w, h),
                   as_fftw(const_cast<std::complex<double>*>(plane.data())),
                   as_fftw(result.data()));

  const double scale = 1.0 / (static_cast<double>(w) * h);
  RealPlane out(w, h);
  for (std::size_t i = 0; i < result.size(); ++i) out[i] = result[i].real() * scale;
  return out;
}

RealPlane hann2(int width, int height) {
  if (width < 2 || height < 2) {
    throw DimensionError("hann2: window dimensions must be at least 2");
  }
  auto hann = [](int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (n - 1)));
    }
    v.front() = 0.0;
    v.back() = 0.0;
    return v;
  };
  const auto wx = hann(width);
  const auto wy = hann(height);
  RealPlane out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out(x, y) = wy[y] * wx[x];
  }
  return out;
}

}  // namespace enkcf
