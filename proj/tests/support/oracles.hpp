#pragma once

#include "enkcf/features.hpp"
#include "enkcf/kcf.hpp"
#include "enkcf/plane.hpp"

namespace enkcf::testing {

/// O((WH)^2) DFT by direct summation.
ComplexPlane naive_dft2(const RealPlane& plane);

/// x cyclically shifted so that out(i, j) = x(i - dx, j - dy).
FeatureMap cyclic_shift(const FeatureMap& x, int dx, int dy);

/// Gaussian kernel against every cyclic shift, computed in the spatial
/// domain: out(dx, dy) = exp(-max(0, |x - shift(z)|^2) / (s * bandwidth^2)).
RealPlane brute_force_correlation(const FeatureMap& x, const FeatureMap& z, double bandwidth,
                                  DistanceScaling scaling);

/// Dual ridge solution from the explicit Gram matrix over all 2-D cyclic
/// shifts of x: solves (K + lambda I) alpha = y and returns alpha as a plane.
RealPlane circulant_oracle_solve(const FeatureMap& x, const RealPlane& y, double lambda,
                                 double bandwidth, DistanceScaling scaling);

/// Largest |a - b| over all cells.
double max_abs_diff(const RealPlane& a, const RealPlane& b);
double max_abs_diff(const ComplexPlane& a, const ComplexPlane& b);
double max_abs(const RealPlane& a);

}  // namespace enkcf::testing
