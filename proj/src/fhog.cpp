// Felzenszwalb HOG, following the layout of the widely used piotr_toolbox
// variant: nearest orientation bin, bilinear spatial binning with 8/7
// border compensation, clamped 2x2 block normalizers.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "enkcf/features.hpp"

namespace enkcf {
namespace {

constexpr int kSensitiveBins = 18;
constexpr int kInsensitiveBins = 9;
constexpr double kTruncation = 0.2;
constexpr double kTextureWeight = 0.2357;

struct Gradient {
  std::vector<double> magnitude;
  std::vector<int> bin;  // contrast-sensitive orientation bin
};

// Central differences inside, one-sided at the border. For color patches
// the channel with the largest gradient magnitude wins.
Gradient compute_gradient(const Image& patch, Execution exec) {
  const int w = patch.width();
  const int h = patch.height();
  const int channels = patch.channels();
  Gradient g;
  g.magnitude.assign(static_cast<std::size_t>(w) * h, 0.0);
  g.bin.assign(static_cast<std::size_t>(w) * h, 0);
  const double to_unit = 1.0 / 255.0;
  const double bins_per_radian = kSensitiveBins / (2.0 * std::numbers::pi);

  for_each_index(exec, h, [&](int y) {
    const int y0 = y == 0 ? 0 : y - 1;
    const int y1 = y == h - 1 ? h - 1 : y + 1;
    const double ry = (y == 0 || y == h - 1) ? 1.0 : 0.5;
    for (int x = 0; x < w; ++x) {
      const int x0 = x == 0 ? 0 : x - 1;
      const int x1 = x == w - 1 ? w - 1 : x + 1;
      const double rx = (x == 0 || x == w - 1) ? 1.0 : 0.5;
      double best = -1.0, best_gx = 0.0, best_gy = 0.0;
      for (int c = 0; c < channels; ++c) {
        const double gx = (patch.at(x1, y, c) - patch.at(x0, y, c)) * rx * to_unit;
        const double gy = (patch.at(x, y1, c) - patch.at(x, y0, c)) * ry * to_unit;
        const double m2 = gx * gx + gy * gy;
        if (m2 > best) {
          best = m2;
          best_gx = gx;
          best_gy = gy;
        }
      }
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      g.magnitude[i] = std::sqrt(best);
      double angle = std::atan2(best_gy, best_gx);
      if (angle < 0) angle += 2.0 * std::numbers::pi;
      int bin = static_cast<int>(angle * bins_per_radian + 0.5);
      if (bin >= kSensitiveBins) bin = 0;
      g.bin[i] = bin;
    }
  });
  return g;
}

// Cell-major histogram: hist[(cy * wb + cx) * 18 + o]. Each cell row is
// gathered independently so the rows can be filled in parallel.
std::vector<double> orientation_histograms(const Gradient& g, int w, int cell, int wb, int hb,
                                           Execution exec) {
  std::vector<double> hist(static_cast<std::size_t>(wb) * hb * kSensitiveBins, 0.0);
  const double inv_cell = 1.0 / cell;
  const double norm = inv_cell * inv_cell;
  const int w0 = wb * cell;
  const int h0 = hb * cell;

  for_each_index(exec, hb, [&](int cy) {
    double* row = hist.data() + static_cast<std::size_t>(cy) * wb * kSensitiveBins;
    const int y_begin = std::max(0, (cy - 1) * cell);
    const int y_end = std::min(h0, (cy + 2) * cell);
    for (int y = y_begin; y < y_end; ++y) {
      const double yb = (y + 0.5) * inv_cell - 0.5;
      const int yb0 = static_cast<int>(std::floor(yb));
      const double yd = yb - yb0;
      double wy;
      if (yb0 == cy) {
        wy = 1.0 - yd;
      } else if (yb0 + 1 == cy) {
        wy = yd;
      } else {
        continue;
      }
      for (int x = 0; x < w0; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const double m = g.magnitude[i] * norm * wy;
        if (m == 0.0) continue;
        const int o = g.bin[i];
        const double xb = (x + 0.5) * inv_cell - 0.5;
        const int xb0 = static_cast<int>(std::floor(xb));
        const double xd = xb - xb0;
        if (xb0 >= 0) row[xb0 * kSensitiveBins + o] += (1.0 - xd) * m;
        if (xb0 + 1 < wb) row[(xb0 + 1) * kSensitiveBins + o] += xd * m;
      }
    }
  });

  // Border cells only collect 7/8 of an interior cell's weight.
  const double border = 8.0 / 7.0;
  for (int cy = 0; cy < hb; ++cy) {
    for (int cx = 0; cx < wb; ++cx) {
      if (cx != 0 && cy != 0 && cx != wb - 1 && cy != hb - 1) continue;
      double* h = hist.data() + (static_cast<std::size_t>(cy) * wb + cx) * kSensitiveBins;
      // Corner cells sit on two borders.
      const int sides = (cx == 0 || cx == wb - 1) + (cy == 0 || cy == hb - 1);
      const double f = sides == 2 ? border * border : border;
      for (int o = 0; o < kSensitiveBins; ++o) h[o] *= f;
    }
  }
  return hist;
}

}  // namespace

FeatureMap extract_fhog(const Image& patch, int cell, Execution exec) {
  if (patch.empty()) throw DimensionError("extract_fhog: empty patch");
  if (cell < 1) throw DimensionError("extract_fhog: cell size must be positive");
  if (patch.width() < 2 * cell || patch.height() < 2 * cell) {
    throw DimensionError("extract_fhog: patch must span at least 2 cells per side");
  }
  const int w = patch.width();
  const int wb = w / cell;
  const int hb = patch.height() / cell;
  const std::size_t cells = static_cast<std::size_t>(wb) * hb;

  const Gradient g = compute_gradient(patch, exec);
  const std::vector<double> sensitive = orientation_histograms(g, w, cell, wb, hb, exec);

  std::vector<double> insensitive(cells * kInsensitiveBins);
  std::vector<double> energy(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    double e = 0.0;
    for (int o = 0; o < kInsensitiveBins; ++o) {
      const double v = sensitive[i * kSensitiveBins + o] +
                       sensitive[i * kSensitiveBins + o + kInsensitiveBins];
      insensitive[i * kInsensitiveBins + o] = v;
      e += v * v;
    }
    energy[i] = e;
  }

  // Inverse norms of every 2x2 block; block (bx, by) has top-left cell (bx, by).
  const int bw = std::max(1, wb - 1);
  const int bh = std::max(1, hb - 1);
  const double eps = 1e-4 / 4.0 / std::pow(static_cast<double>(cell), 4);
  std::vector<double> block(static_cast<std::size_t>(bw) * bh);
  auto energy_at = [&](int cx, int cy) {
    return energy[static_cast<std::size_t>(std::min(cy, hb - 1)) * wb + std::min(cx, wb - 1)];
  };
  for (int by = 0; by < bh; ++by) {
    for (int bx = 0; bx < bw; ++bx) {
      const double sum = energy_at(bx, by) + energy_at(bx + 1, by) + energy_at(bx, by + 1) +
                         energy_at(bx + 1, by + 1);
      block[static_cast<std::size_t>(by) * bw + bx] = 1.0 / std::sqrt(sum + eps);
    }
  }
  auto block_at = [&](int bx, int by) {
    return block[static_cast<std::size_t>(std::clamp(by, 0, bh - 1)) * bw +
                 std::clamp(bx, 0, bw - 1)];
  };

  FeatureMap out(wb, hb, kFhogChannels);
  for_each_index(exec, hb, [&](int cy) {
    for (int cx = 0; cx < wb; ++cx) {
      const std::size_t i = static_cast<std::size_t>(cy) * wb + cx;
      const double n[4] = {block_at(cx, cy), block_at(cx, cy - 1), block_at(cx - 1, cy),
                           block_at(cx - 1, cy - 1)};
      const double* r1 = sensitive.data() + i * kSensitiveBins;
      const double* r2 = insensitive.data() + i * kInsensitiveBins;
      for (int o = 0; o < kSensitiveBins; ++o) {
        double v = 0.0;
        for (double nk : n) v += std::min(r1[o] * nk, kTruncation) * 0.5;
        out.channel(o)[i] = v;
      }
      for (int o = 0; o < kInsensitiveBins; ++o) {
        double v = 0.0;
        for (double nk : n) v += std::min(r2[o] * nk, kTruncation) * 0.5;
        out.channel(kSensitiveBins + o)[i] = v;
      }
      for (int k = 0; k < 4; ++k) {
        double v = 0.0;
        for (int o = 0; o < kSensitiveBins; ++o) v += std::min(r1[o] * n[k], kTruncation);
        out.channel(kSensitiveBins + kInsensitiveBins + k)[i] = v * kTextureWeight;
      }
    }
  });
  return out;
}

}  // namespace enkcf
