#pragma once

#include "enkcf/plane.hpp"

namespace enkcf {

// Transform convention: the forward transform is unnormalized and the
// inverse carries 1/(W*H), so idft2(dft2(p)) == p.

/// Unnormalized forward 2-D DFT of a real plane (full, Hermitian spectrum).
/// Throws DimensionError on an empty plane.
ComplexPlane dft2(const RealPlane& plane);

/// Inverse 2-D DFT with 1/(W*H) normalization. The imaginary part of the
/// result is discarded.
RealPlane idft2(const ComplexPlane& plane);

/// Separable raised-cosine window, zero on the border ring. Both
/// dimensions must be at least 2.
RealPlane hann2(int width, int height);

}  // namespace enkcf
