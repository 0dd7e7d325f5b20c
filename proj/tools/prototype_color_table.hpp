#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "enkcf/features.hpp"

namespace enkcf::tools {

/// Stand-in color-naming table: a softmax over squared RGB distances to one
/// prototype per basic color name, evaluated at each 8-level bin centre.
/// Columns follow the usual order: black, blue, brown, grey, green, orange,
/// pink, purple, red, white, yellow.
inline std::vector<ColorNamingTable::Row> prototype_color_rows(double tau = 40.0) {
  static constexpr double kPrototypes[kColorNames][3] = {
      {0, 0, 0},     {0, 0, 255},     {139, 69, 19},   {128, 128, 128},
      {0, 160, 0},   {255, 140, 0},   {255, 150, 200}, {128, 0, 160},
      {220, 0, 0},   {255, 255, 255}, {255, 240, 0}};
  std::vector<ColorNamingTable::Row> rows(ColorNamingTable::kRows);
  for (int index = 0; index < ColorNamingTable::kRows; ++index) {
    const double rgb[3] = {(index % 32) * 8 + 3.5, ((index / 32) % 32) * 8 + 3.5,
                           (index / 1024) * 8 + 3.5};
    std::array<double, kColorNames> logits{};
    double best = -1e300;
    for (int k = 0; k < kColorNames; ++k) {
      double d2 = 0;
      for (int c = 0; c < 3; ++c) d2 += (rgb[c] - kPrototypes[k][c]) * (rgb[c] - kPrototypes[k][c]);
      logits[k] = -d2 / (2 * tau * tau);
      best = std::max(best, logits[k]);
    }
    double sum = 0;
    for (int k = 0; k < kColorNames; ++k) sum += (logits[k] = std::exp(logits[k] - best));
    for (int k = 0; k < kColorNames; ++k) rows[index][k] = logits[k] / sum;
  }
  return rows;
}

/// Text form accepted by ColorNamingTable::parse, six decimals per value.
inline std::string format_color_rows(const std::vector<ColorNamingTable::Row>& rows) {
  std::string out;
  out.reserve(rows.size() * kColorNames * 9);
  char buf[32];
  for (const auto& row : rows) {
    for (int k = 0; k < kColorNames; ++k) {
      std::snprintf(buf, sizeof buf, k + 1 < kColorNames ? "%.6f " : "%.6f\n", row[k]);
      out += buf;
    }
  }
  return out;
}

}  // namespace enkcf::tools
