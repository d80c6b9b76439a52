#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "gausswig/common.hpp"

namespace gausswig::fft {

// Unnormalized radix-2 transforms on power-of-two lengths:
//   forward:  X_k = sum_j x_j e^{-2 pi i jk/n}
//   inverse:  x_j = sum_k X_k e^{+2 pi i jk/n}   (no 1/n)
void transform(cplx* data, int n, bool inverse);

inline void transform(std::vector<cplx>& data, bool inverse) {
  transform(data.data(), static_cast<int>(data.size()), inverse);
}

// Applies the 1-d transform along one axis of a row-major nd array.
void transform_axis(cplx* data, const std::vector<int>& shape, int axis, bool inverse);

// Band-limited 2x refinement along one axis (zero-padded spectrum).  Input
// samples sit at integer index positions; output at half-integer positions,
// so out[.., 2i, ..] == in[.., i, ..] up to roundoff.
std::vector<cplx> upsample2_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis);

// Symmetric zero padding n -> 2n along an axis; original index i moves to
// i + n/2, which keeps the node x = 0 at the centre of the grown grid.
std::vector<cplx> pad2_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis);
std::vector<cplx> crop2_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis);

// Circular band-limited translation along an axis by tau index units:
// out(j) = in(j - tau).  Callers pad first when wrap-around must not touch
// live data.
void phase_shift_axis(std::vector<cplx>& data, const std::vector<int>& shape, int axis, double tau);

inline std::int64_t element_count(const std::vector<int>& shape) {
  std::int64_t n = 1;
  for (int e : shape) n *= e;
  return n;
}

}  // namespace gausswig::fft
