#pragma once

#include <filesystem>

#include "enkcf/evaluation.hpp"
#include "enkcf/image.hpp"

namespace enkcf {

/// Decodes a PNG/JPEG/BMP file. Color files come back as RGB, single-channel
/// files as grayscale. Throws FormatError when the file cannot be decoded.
Image read_image(const std::filesystem::path& path);

/// Encodes by file extension. Throws FormatError on failure.
void write_image(const std::filesystem::path& path, const Image& image);

/// Draws a rectangle outline, clipped to the image.
void draw_box(Image& image, const Box& box, std::uint8_t r, std::uint8_t g, std::uint8_t b,
              int thickness = 2);

}  // namespace enkcf
