#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "enkcf/spectral.hpp"
#include "support/oracles.hpp"

using namespace enkcf;
using enkcf::testing::max_abs_diff;

namespace {

RealPlane random_plane(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  RealPlane p(w, h);
  for (double& v : p.values()) v = d(rng);
  return p;
}

}  // namespace

TEST_CASE("plane rejects empty dimensions") {
  CHECK_THROWS_AS(RealPlane(0, 3), DimensionError);
  CHECK_THROWS_AS(RealPlane(3, -1), DimensionError);
  RealPlane p(3, 2, 1.5);
  CHECK(p.size() == 6);
  CHECK(p(2, 1) == 1.5);
}

TEST_CASE("dft2 of zeros and an impulse") {
  const ComplexPlane zeros = dft2(RealPlane(4, 4));
  for (auto v : zeros.values()) CHECK(v == std::complex<double>(0, 0));

  RealPlane impulse(4, 4);
  impulse(0, 0) = 1.0;
  const ComplexPlane flat = dft2(impulse);
  for (auto v : flat.values()) CHECK(std::abs(v - std::complex<double>(1, 0)) < 1e-15);
}

TEST_CASE("dft2 matches direct summation") {
  for (auto [w, h] : {std::pair{8, 8}, std::pair{5, 7}, std::pair{6, 3}, std::pair{1, 4}}) {
    const RealPlane p = random_plane(w, h, 11 + w * h);
    CHECK(max_abs_diff(dft2(p), enkcf::testing::naive_dft2(p)) < 1e-9);
  }
}

TEST_CASE("idft2 inverts dft2") {
  for (auto [w, h] : {std::pair{8, 8}, std::pair{7, 5}, std::pair{32, 24}}) {
    const RealPlane p = random_plane(w, h, 3);
    CHECK(max_abs_diff(idft2(dft2(p)), p) < 1e-9 * enkcf::testing::max_abs(p));
  }
  ComplexPlane ones(4, 4, {1.0, 0.0});
  const RealPlane back = idft2(ones);
  CHECK(back(0, 0) == doctest::Approx(1.0));
  for (std::size_t i = 1; i < back.size(); ++i) CHECK(std::abs(back[i]) < 1e-15);
  const RealPlane zero = idft2(ComplexPlane(4, 4));
  for (double v : zero.values()) CHECK(v == 0.0);
}

TEST_CASE("Parseval and linearity") {
  const RealPlane p = random_plane(9, 6, 21);
  const RealPlane q = random_plane(9, 6, 22);
  const ComplexPlane fp = dft2(p);
  double spatial = 0, spectral = 0;
  for (double v : p.values()) spatial += v * v;
  for (auto v : fp.values()) spectral += std::norm(v);
  CHECK(spatial == doctest::Approx(spectral / p.size()).epsilon(1e-6));

  const double a = 1.7, b = -0.4;
  RealPlane mix(9, 6);
  for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = a * p[i] + b * q[i];
  const ComplexPlane lhs = dft2(mix);
  const ComplexPlane fq = dft2(q);
  ComplexPlane rhs(9, 6);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = a * fp[i] + b * fq[i];
  CHECK(max_abs_diff(lhs, rhs) < 1e-9);
}

TEST_CASE("hann2 window") {
  CHECK(hann2(3, 3)(1, 1) == doctest::Approx(1.0));
  const RealPlane h4 = hann2(4, 4);
  CHECK(h4(0, 0) == 0.0);
  CHECK(h4(3, 0) == 0.0);
  CHECK(h4(0, 3) == 0.0);
  CHECK(h4(3, 3) == 0.0);

  const RealPlane h5 = hann2(5, 7);
  auto hann1 = [](int i, int n) { return 0.5 * (1 - std::cos(2 * std::numbers::pi * i / (n - 1))); };
  for (int y = 0; y < 7; ++y) {
    for (int x = 0; x < 5; ++x) CHECK(h5(x, y) == doctest::Approx(hann1(x, 5) * hann1(y, 7)));
  }
  CHECK_THROWS_AS(hann2(1, 4), DimensionError);
}

TEST_CASE("transforms are safe to call concurrently") {
  const RealPlane p = random_plane(12, 10, 5);
  const ComplexPlane expected = dft2(p);
  bool all_equal = true;
#pragma omp parallel for reduction(&& : all_equal)
  for (int i = 0; i < 64; ++i) all_equal = all_equal && dft2(p) == expected;
  CHECK(all_equal);
}
