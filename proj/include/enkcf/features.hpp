#pragma once

#include <array>
#include <filesystem>
#include <string_view>
#include <vector>

#include "enkcf/image.hpp"
#include "enkcf/parallel.hpp"
#include "enkcf/plane.hpp"

namespace enkcf {

inline constexpr int kFhogChannels = 31;
inline constexpr int kColorNames = 11;

/// Multi-channel feature grid; every channel shares the grid dimensions.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int width, int height, int channels);
  explicit FeatureMap(std::vector<RealPlane> planes);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return static_cast<int>(planes_.size()); }
  bool empty() const { return planes_.empty(); }
  bool same_shape(const FeatureMap& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels() == other.channels();
  }

  RealPlane& channel(int c) { return planes_[c]; }
  const RealPlane& channel(int c) const { return planes_[c]; }
  const std::vector<RealPlane>& planes() const { return planes_; }

  /// Appends the channels of another map with the same grid.
  void append(const FeatureMap& other);

  bool operator==(const FeatureMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<RealPlane> planes_;
};

/// RGB -> 11 color-name probabilities. Row index is
/// r/8 + 32 * (g/8) + 1024 * (b/8).
class ColorNamingTable {
 public:
  static constexpr int kRows = 32768;
  using Row = std::array<double, kColorNames>;

  /// Validates the row count, the [0, 1] range, and per-row sums (1 +- 1e-3).
  explicit ColorNamingTable(std::vector<Row> rows);

  /// Plain text, one row of 11 whitespace-separated probabilities per line.
  static ColorNamingTable load(const std::filesystem::path& path);
  static ColorNamingTable parse(std::string_view text);

  static int index_of(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return (r >> 3) + 32 * (g >> 3) + 1024 * (b >> 3);
  }
  const Row& row(int index) const { return rows_[index]; }
  const Row& lookup(std::uint8_t r, std::uint8_t g, std::uint8_t b) const {
    return rows_[index_of(r, g, b)];
  }

 private:
  std::vector<Row> rows_;
};

enum class FeatureSet { fhog, fhog_color };

/// Which channels a filter uses and whether they are cosine-windowed.
struct FilterFeatureSpec {
  FeatureSet set = FeatureSet::fhog;
  bool windowed = true;
  int cell = 4;

  int channel_count() const {
    return set == FeatureSet::fhog ? kFhogChannels : kFhogChannels + kColorNames;
  }
  bool operator==(const FilterFeatureSpec&) const = default;
};

std::string_view to_string(FeatureSet set);
FeatureSet parse_feature_set(std::string_view text);

/// 31-channel Felzenszwalb HOG on a (width / cell) x (height / cell) grid:
/// 18 contrast-sensitive orientations, 9 contrast-insensitive, 4 texture
/// energies. Uses bilinear spatial binning, 0.2 truncation and 2x2 block
/// normalization. The patch must be at least 2 cells on each side.
FeatureMap extract_fhog(const Image& patch, int cell, Execution exec = Execution::parallel);

/// Per-pixel color-name lookup averaged over cells. Requires an RGB patch.
FeatureMap extract_color_naming(const Image& patch, const ColorNamingTable& table, int cell,
                                Execution exec = Execution::parallel);

/// Concatenates the requested features (fHoG first) and applies hann2 to
/// each channel when spec.windowed is set. `table` may be null only for
/// FeatureSet::fhog.
FeatureMap build_feature_stack(const Image& patch, const FilterFeatureSpec& spec,
                               const ColorNamingTable* table,
                               Execution exec = Execution::parallel);

}  // namespace enkcf
