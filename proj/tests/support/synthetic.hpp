#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "enkcf/evaluation.hpp"
#include "enkcf/image.hpp"
#include "enkcf/particle_filter.hpp"

namespace enkcf::testing {

/// A textured square object moving over a static textured background.
struct SyntheticSpec {
  int width = 320;
  int height = 240;
  int frames = 30;
  double object_width = 40;
  double object_height = 40;
  /// Object centre for frame index t (0-based).
  std::function<Point(int)> center = [](int) { return Point{160, 120}; };
  /// Cumulative object scale for frame index t.
  std::function<double(int)> scale = [](int) { return 1.0; };
  std::uint64_t seed = 7;
  bool color = true;
};

struct SyntheticSequence {
  std::vector<Image> frames;
  std::vector<Box> boxes;
};

SyntheticSequence make_sequence(const SyntheticSpec& spec);

/// Writes img/0001.png... and groundtruth_rect.txt into dir.
void write_fixture(const std::filesystem::path& dir, const SyntheticSequence& seq);

/// Random RGB (or gray) image with uniform noise pixels.
Image random_image(int width, int height, int channels, std::uint64_t seed);

/// Prototype color-naming table written to a temporary file once per
/// process; returns its path.
std::filesystem::path prototype_table_file();

/// Fresh empty directory under the system temp directory.
std::filesystem::path fresh_temp_dir(const std::string& name);

}  // namespace enkcf::testing
