#pragma once

#include <cstdint>
#include <vector>

#include "enkcf/error.hpp"

namespace enkcf {

/// 8-bit frame or patch. Pixels are interleaved (RGB order for three
/// channels), rows are contiguous.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return pixels_.empty(); }
  bool is_color() const { return channels_ == 3; }

  std::uint8_t& at(int x, int y, int c = 0) {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return pixels_[(static_cast<std::size_t>(y) * width_ + x) * channels_ + c];
  }

  std::uint8_t* data() { return pixels_.data(); }
  const std::uint8_t* data() const { return pixels_.data(); }
  std::size_t byte_size() const { return pixels_.size(); }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Region of interest in frame pixels, described by its center. The center
/// may sit near or outside the frame; cropping replicates edge pixels.
struct Roi {
  double center_x = 0;
  double center_y = 0;
  double width = 0;
  double height = 0;

  bool operator==(const Roi&) const = default;
};

/// Copies the roi.width x roi.height patch (sizes rounded to whole pixels)
/// around the ROI center. Out-of-frame pixels replicate the nearest edge.
/// Throws DimensionError for an empty image or a zero-area ROI.
Image crop_patch(const Image& image, const Roi& roi);

/// Bilinear resampling with pixel-center alignment to exactly
/// target_width x target_height.
Image resize_patch(const Image& patch, int target_width, int target_height);

}  // namespace enkcf
