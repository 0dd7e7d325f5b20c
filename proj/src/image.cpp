#include "enkcf/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace enkcf {

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  if (width < 1 || height < 1) throw DimensionError("image dimensions must be positive");
  if (channels != 1 && channels != 3) throw DimensionError("image must have 1 or 3 channels");
  pixels_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image crop_patch(const Image& image, const Roi& roi) {
  if (image.empty()) throw DimensionError("crop_patch: empty image");
  const long w = std::lround(roi.width);
  const long h = std::lround(roi.height);
  if (w < 1 || h < 1) {
    throw DimensionError("crop_patch: zero-area ROI " + std::to_string(roi.width) + "x" +
                         std::to_string(roi.height));
  }
  const int left = static_cast<int>(std::floor(roi.center_x - w / 2.0 + 0.5));
  const int top = static_cast<int>(std::floor(roi.center_y - h / 2.0 + 0.5));
  const int channels = image.channels();

  Image patch(static_cast<int>(w), static_cast<int>(h), channels);
  std::vector<int> src_x(w);
  for (int x = 0; x < w; ++x) src_x[x] = std::clamp(left + x, 0, image.width() - 1);
  for (int y = 0; y < h; ++y) {
    const int sy = std::clamp(top + y, 0, image.height() - 1);
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) patch.at(x, y, c) = image.at(src_x[x], sy, c);
    }
  }
  return patch;
}

namespace {

struct Tap {
  int lo;
  int hi;
  double frac;
};

std::vector<Tap> bilinear_taps(int src, int dst) {
  std::vector<Tap> taps(dst);
  const double scale = static_cast<double>(src) / dst;
  for (int i = 0; i < dst; ++i) {
    const double pos = std::clamp((i + 0.5) * scale - 0.5, 0.0, static_cast<double>(src - 1));
    const int lo = static_cast<int>(std::floor(pos));
    taps[i] = {lo, std::min(lo + 1, src - 1), pos - lo};
  }
  return taps;
}

}  // namespace

Image resize_patch(const Image& patch, int target_width, int target_height) {
  if (patch.empty()) throw DimensionError("resize_patch: empty patch");
  if (target_width < 1 || target_height < 1) {
    throw DimensionError("resize_patch: target size must be positive");
  }
  if (patch.width() == target_width && patch.height() == target_height) return patch;

  const auto tx = bilinear_taps(patch.width(), target_width);
  const auto ty = bilinear_taps(patch.height(), target_height);
  const int channels = patch.channels();
  Image out(target_width, target_height, channels);
  for (int y = 0; y < target_height; ++y) {
    const Tap& vy = ty[y];
    for (int x = 0; x < target_width; ++x) {
      const Tap& vx = tx[x];
      for (int c = 0; c < channels; ++c) {
        const double top = patch.at(vx.lo, vy.lo, c) * (1.0 - vx.frac) +
                           patch.at(vx.hi, vy.lo, c) * vx.frac;
        const double bottom = patch.at(vx.lo, vy.hi, c) * (1.0 - vx.frac) +
                              patch.at(vx.hi, vy.hi, c) * vx.frac;
        const double v = top * (1.0 - vy.frac) + bottom * vy.frac;
        out.at(x, y, c) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

}  // namespace enkcf
