#include "enkcf/image_io.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "enkcf/error.hpp"

namespace enkcf {

Image read_image(const std::filesystem::path& path) {
  const cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw FormatError("cannot decode image " + path.string());
  if (mat.depth() != CV_8U) throw FormatError("only 8-bit images are supported: " + path.string());
  const int channels = mat.channels();
  if (channels != 1 && channels != 3 && channels != 4) {
    throw FormatError("unsupported channel count in " + path.string());
  }
  Image out(mat.cols, mat.rows, channels == 1 ? 1 : 3);
  for (int y = 0; y < mat.rows; ++y) {
    const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      if (channels == 1) {
        out.at(x, y) = row[x];
      } else {
        const std::uint8_t* px = row + x * channels;
        out.at(x, y, 0) = px[2];
        out.at(x, y, 1) = px[1];
        out.at(x, y, 2) = px[0];
      }
    }
  }
  return out;
}

void write_image(const std::filesystem::path& path, const Image& image) {
  if (image.empty()) throw DimensionError("write_image: empty image");
  cv::Mat mat(image.height(), image.width(), image.channels() == 1 ? CV_8UC1 : CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < image.width(); ++x) {
      if (image.channels() == 1) {
        row[x] = image.at(x, y);
      } else {
        row[3 * x + 0] = image.at(x, y, 2);
        row[3 * x + 1] = image.at(x, y, 1);
        row[3 * x + 2] = image.at(x, y, 0);
      }
    }
  }
  bool ok = false;
  try {
    ok = cv::imwrite(path.string(), mat);
  } catch (const cv::Exception& e) {
    throw FormatError("cannot write image " + path.string() + ": " + e.what());
  }
  if (!ok) throw FormatError("cannot write image " + path.string());
}

void draw_box(Image& image, const Box& box, std::uint8_t r, std::uint8_t g, std::uint8_t b,
              int thickness) {
  if (!box.valid() || image.empty()) return;
  const int x0 = static_cast<int>(std::lround(box.x));
  const int y0 = static_cast<int>(std::lround(box.y));
  const int x1 = static_cast<int>(std::lround(box.x + box.width)) - 1;
  const int y1 = static_cast<int>(std::lround(box.y + box.height)) - 1;
  const std::uint8_t color[3] = {r, g, b};
  auto plot = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= image.width() || y >= image.height()) return;
    if (image.channels() == 1) {
      image.at(x, y) = static_cast<std::uint8_t>((r * 299 + g * 587 + b * 114) / 1000);
    } else {
      for (int c = 0; c < 3; ++c) image.at(x, y, c) = color[c];
    }
  };
  for (int t = 0; t < thickness; ++t) {
    for (int x = x0; x <= x1; ++x) {
      plot(x, y0 + t);
      plot(x, y1 - t);
    }
    for (int y = y0; y <= y1; ++y) {
      plot(x0 + t, y);
      plot(x1 - t, y);
    }
  }
}

}  // namespace enkcf
