#include "synthetic.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>

#include "enkcf/image_io.hpp"
#include "prototype_color_table.hpp"

namespace enkcf::testing {
namespace {

constexpr int kObjectBlocks = 6;
constexpr int kBackgroundBlock = 24;

struct Palette {
  std::vector<std::array<std::uint8_t, 3>> object;
  std::vector<std::array<std::uint8_t, 3>> background;
  int bg_cols = 0;
};

Palette make_palette(const SyntheticSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<int> bright(0, 255);
  std::uniform_int_distribution<int> dull(90, 150);
  Palette p;
  p.object.resize(kObjectBlocks * kObjectBlocks);
  for (auto& c : p.object) {
    const int g = bright(rng);
    c = {static_cast<std::uint8_t>(spec.color ? bright(rng) : g), static_cast<std::uint8_t>(g),
         static_cast<std::uint8_t>(spec.color ? bright(rng) : g)};
  }
  p.bg_cols = spec.width / kBackgroundBlock + 1;
  const int bg_rows = spec.height / kBackgroundBlock + 1;
  p.background.resize(static_cast<std::size_t>(p.bg_cols) * bg_rows);
  for (auto& c : p.background) {
    const int g = dull(rng);
    c = {static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(g),
         static_cast<std::uint8_t>(spec.color ? dull(rng) : g)};
  }
  return p;
}

Image render(const SyntheticSpec& spec, const Palette& p, Point center, double scale) {
  Image img(spec.width, spec.height, spec.color ? 3 : 1);
  const double ow = spec.object_width * scale;
  const double oh = spec.object_height * scale;
  const double left = center.x - ow / 2;
  const double top = center.y - oh / 2;
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      const double u = (x + 0.5 - left) / ow;
      const double v = (y + 0.5 - top) / oh;
      const std::array<std::uint8_t, 3>* c;
      if (u >= 0 && u < 1 && v >= 0 && v < 1) {
        c = &p.object[static_cast<int>(v * kObjectBlocks) * kObjectBlocks +
                      static_cast<int>(u * kObjectBlocks)];
      } else {
        c = &p.background[(y / kBackgroundBlock) * p.bg_cols + x / kBackgroundBlock];
      }
      for (int ch = 0; ch < img.channels(); ++ch) img.at(x, y, ch) = (*c)[spec.color ? ch : 1];
    }
  }
  return img;
}

}  // namespace

SyntheticSequence make_sequence(const SyntheticSpec& spec) {
  const Palette palette = make_palette(spec);
  SyntheticSequence seq;
  for (int t = 0; t < spec.frames; ++t) {
    const Point c = spec.center(t);
    const double s = spec.scale(t);
    seq.frames.push_back(render(spec, palette, c, s));
    const double w = spec.object_width * s;
    const double h = spec.object_height * s;
    seq.boxes.push_back({c.x - w / 2, c.y - h / 2, w, h});
  }
  return seq;
}

void write_fixture(const std::filesystem::path& dir, const SyntheticSequence& seq) {
  std::filesystem::create_directories(dir / "img");
  std::ofstream gt(dir / "groundtruth_rect.txt");
  char name[32];
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    std::snprintf(name, sizeof name, "%04zu.png", i + 1);
    write_image(dir / "img" / name, seq.frames[i]);
    const Box& b = seq.boxes[i];
    gt << b.x << ',' << b.y << ',' << b.width << ',' << b.height << '\n';
  }
}

Image random_image(int width, int height, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(0, 255);
  Image img(width, height, channels);
  for (std::size_t i = 0; i < img.byte_size(); ++i) img.data()[i] = static_cast<std::uint8_t>(d(rng));
  return img;
}

std::filesystem::path prototype_table_file() {
  static std::once_flag once;
  static std::filesystem::path path;
  std::call_once(once, [] {
    path = std::filesystem::temp_directory_path() / "enkcf_test_cn_table.txt";
    std::ofstream f(path, std::ios::binary);
    f << tools::format_color_rows(tools::prototype_color_rows());
  });
  return path;
}

std::filesystem::path fresh_temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("enkcf_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace enkcf::testing
