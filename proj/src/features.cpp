#include <string>

#include "enkcf/features.hpp"
#include "enkcf/spectral.hpp"

namespace enkcf {

FeatureMap::FeatureMap(int width, int height, int channels) : width_(width), height_(height) {
  if (channels < 1) throw DimensionError("feature map needs at least one channel");
  planes_.assign(channels, RealPlane(width, height));
}

FeatureMap::FeatureMap(std::vector<RealPlane> planes) : planes_(std::move(planes)) {
  if (planes_.empty()) throw DimensionError("feature map needs at least one channel");
  width_ = planes_.front().width();
  height_ = planes_.front().height();
  for (const auto& p : planes_) {
    if (p.width() != width_ || p.height() != height_ || p.empty()) {
      throw DimensionError("feature map channels must share one non-empty grid");
    }
  }
}

void FeatureMap::append(const FeatureMap& other) {
  if (empty()) {
    *this = other;
    return;
  }
  if (other.width_ != width_ || other.height_ != height_) {
    throw DimensionError("feature map append: grid mismatch");
  }
  planes_.insert(planes_.end(), other.planes_.begin(), other.planes_.end());
}

std::string_view to_string(FeatureSet set) {
  return set == FeatureSet::fhog ? "fhog" : "fhog+cn";
}

FeatureSet parse_feature_set(std::string_view text) {
  if (text == "fhog") return FeatureSet::fhog;
  if (text == "fhog+cn") return FeatureSet::fhog_color;
  throw std::invalid_argument("unknown feature set '" + std::string(text) +
                              "' (expected fhog or fhog+cn)");
}

FeatureMap build_feature_stack(const Image& patch, const FilterFeatureSpec& spec,
                               const ColorNamingTable* table, Execution exec) {
  FeatureMap stack = extract_fhog(patch, spec.cell, exec);
  if (spec.set == FeatureSet::fhog_color) {
    if (table == nullptr) {
      throw std::invalid_argument("build_feature_stack: color names requested without a table");
    }
    stack.append(extract_color_naming(patch, *table, spec.cell, exec));
  }
  if (spec.windowed) {
    const RealPlane window = hann2(stack.width(), stack.height());
    for (int c = 0; c < stack.channels(); ++c) {
      auto values = stack.channel(c).values();
      for (std::size_t i = 0; i < values.size(); ++i) values[i] *= window[i];
    }
  }
  return stack;
}

}  // namespace enkcf
