#include <doctest.h>

#include <cmath>

#include "enkcf/image.hpp"
#include "support/synthetic.hpp"

using namespace enkcf;

TEST_CASE("image construction validates shape") {
  CHECK_THROWS_AS(Image(0, 5, 1), DimensionError);
  CHECK_THROWS_AS(Image(5, 5, 2), DimensionError);
  Image img(4, 3, 3, 9);
  CHECK(img.at(3, 2, 2) == 9);
  CHECK(img.is_color());
}

TEST_CASE("crop inside the frame copies pixels") {
  const Image img = enkcf::testing::random_image(40, 30, 3, 1);
  const Image patch = crop_patch(img, {20, 15, 10, 8});
  REQUIRE(patch.width() == 10);
  REQUIRE(patch.height() == 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 10; ++x) {
      for (int c = 0; c < 3; ++c) CHECK(patch.at(x, y, c) == img.at(15 + x, 11 + y, c));
    }
  }
}

TEST_CASE("crop centred on the origin replicates the top-left pixels") {
  const Image img = enkcf::testing::random_image(20, 20, 1, 2);
  const Image patch = crop_patch(img, {0, 0, 10, 10});
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 10; ++x) {
      CHECK(patch.at(x, y) == img.at(std::max(0, x - 5), std::max(0, y - 5)));
    }
  }
}

TEST_CASE("oversized crop repeats the border rows") {
  const Image img = enkcf::testing::random_image(100, 100, 3, 3);
  const Image patch = crop_patch(img, {50, 50, 200, 200});
  REQUIRE(patch.width() == 200);
  for (int x = 0; x < 200; ++x) {
    const int sx = std::clamp(x - 50, 0, 99);
    for (int c = 0; c < 3; ++c) {
      CHECK(patch.at(x, 0, c) == img.at(sx, 0, c));
      CHECK(patch.at(x, 199, c) == img.at(sx, 99, c));
    }
  }
  CHECK_THROWS_AS(crop_patch(img, {10, 10, 0.2, 5}), DimensionError);
}

TEST_CASE("resize keeps size, constants and bilinear weights") {
  const Image img = enkcf::testing::random_image(13, 9, 3, 4);
  CHECK(resize_patch(img, 13, 9) == img);

  const Image flat(7, 5, 3, 77);
  const Image big = resize_patch(flat, 19, 11);
  for (std::size_t i = 0; i < big.byte_size(); ++i) CHECK(big.data()[i] == 77);

  Image checker(2, 2, 1);
  checker.at(1, 0) = 255;
  checker.at(0, 1) = 255;
  const Image out = resize_patch(checker, 4, 4);
  // Source weights of (left, right) sample for each output column.
  const double w[4][2] = {{1, 0}, {0.75, 0.25}, {0.25, 0.75}, {0, 1}};
  for (int y = 0; y < 4; ++y) {
    for (int x = 0; x < 4; ++x) {
      double v = 0;
      for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) v += w[x][i] * w[y][j] * checker.at(i, j);
      }
      CHECK(out.at(x, y) == std::lround(v));
    }
  }
}

TEST_CASE("crop and resize are deterministic") {
  const Image img = enkcf::testing::random_image(64, 48, 3, 5);
  const Roi roi{30.3, 20.7, 41.5, 33.2};
  CHECK(resize_patch(crop_patch(img, roi), 32, 24) == resize_patch(crop_patch(img, roi), 32, 24));
}
