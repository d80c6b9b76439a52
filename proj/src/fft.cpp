#include "gausswig/fft.hpp"

#include <cmath>
#include <cstring>

namespace gausswig::fft {

namespace {

// Twiddle tables per transform length, cached per thread so the transform
// slices can run concurrently without locks.
const std::vector<cplx>& twiddles(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<std::vector<cplx>>> cache;
  auto& slot = cache[n];
  if (!slot) {
    auto tw = std::make_unique<std::vector<cplx>>(n / 2);
    for (int k = 0; k < n / 2; ++k) {
      const double a = -kTwoPi * k / n;
      (*tw)[k] = {std::cos(a), std::sin(a)};
    }
    slot = std::move(tw);
  }
  return *slot;
}

void bit_reverse(cplx* data, int n) {
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
}

}  // namespace

void transform(cplx* data, int n, bool inverse) {
  if (n == 1) return;
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  const auto& tw = twiddles(n);
  bit_reverse(data, n);
  for (int len = 2; len <= n; len <<= 1) {
    const int step = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        cplx w = tw[k * step];
        if (inverse) w = std::conj(w);
        const cplx u = data[i + k];
        const cplx v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
      }
    }
  }
}

void transform_axis(cplx* data, const std::vector<int>& shape, int axis, bool inverse) {
  const int rank = static_cast<int>(shape.size());
  const int n = shape[axis];
  std::int64_t inner = 1, outer = 1;
  for (int a = axis + 1; a < rank; ++a) inner *= shape[a];
  for (int a = 0; a < axis; ++a) outer *= shape[a];

  std::vector<cplx> buf(n);
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t i = 0; i < inner; ++i) {
      cplx* base = data + o * n * inner + i;
      if (inner == 1) {
        transform(base, n, inverse);
        continue;
      }
      for (int k = 0; k < n; ++k) buf[k] = base[k * inner];
      transform(buf.data(), n, inverse);
      for (int k = 0; k < n; ++k) base[k * inner] = buf[k];
    }
  }
}

namespace {

// 1-d spectral zero padding: N-point spectrum X -> 2N-point spectrum with
// the Nyquist bin split between +-N/2.
void upsample2_line(const cplx* in, cplx* out, int n) {
  std::vector<cplx> spec(in, in + n);
  transform(spec.data(), n, false);
  std::vector<cplx> spec2(2 * n, cplx{0.0, 0.0});
  for (int k = 0; k < n / 2; ++k) spec2[k] = spec[k];
  for (int k = n / 2 + 1; k < n; ++k) spec2[n + k] = spec[k];
  spec2[n / 2] = 0.5 * spec[n / 2];
  spec2[2 * n - n / 2] = 0.5 * spec[n / 2];
  transform(spec2.data(), 2 * n, true);
  const double scale = 1.0 / n;
  for (int j = 0; j < 2 * n; ++j) out[j] = spec2[j] * scale;
}

}  // namespace

std::vector<cplx> upsample2_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis) {
  const int rank = static_cast<int>(shape.size());
  const int n = shape[axis];
  std::int64_t inner = 1, outer = 1;
  for (int a = axis + 1; a < rank; ++a) inner *= shape[a];
  for (int a = 0; a < axis; ++a) outer *= shape[a];

  std::vector<cplx> out(static_cast<std::size_t>(outer * 2 * n * inner));
  std::vector<cplx> line(n), line2(2 * n);
  for (std::int64_t o = 0; o < outer; ++o) {
    for (std::int64_t i = 0; i < inner; ++i) {
      const cplx* src = in.data() + o * n * inner + i;
      cplx* dst = out.data() + o * 2 * n * inner + i;
      for (int k = 0; k < n; ++k) line[k] = src[k * inner];
      upsample2_line(line.data(), line2.data(), n);
      for (int k = 0; k < 2 * n; ++k) dst[k * inner] = line2[k];
    }
  }
  shape[axis] = 2 * n;
  return out;
}

std::vector<cplx> pad2_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis) {
  const int rank = static_cast<int>(shape.size());
  const int n = shape[axis];
  std::int64_t inner = 1, outer = 1;
  for (int a = axis + 1; a < rank; ++a) inner *= shape[a];
  for (int a = 0; a < axis; ++a) outer *= shape[a];

  std::vector<cplx> out(static_cast<std::size_t>(outer * 2 * n * inner), cplx{0.0, 0.0});
  for (std::int64_t o = 0; o < outer; ++o)
    for (int k = 0; k < n; ++k)
      std::memcpy(out.data() + (o * 2 * n + k + n / 2) * inner, in.data() + (o * n + k) * inner,
                  sizeof(cplx) * inner);
  shape[axis] = 2 * n;
  return out;
}

std::vector<cplx> crop2_axis(const std::vector<cplx>& in, std::vector<int>& shape, int axis) {
  const int rank = static_cast<int>(shape.size());
  const int n2 = shape[axis];
  const int n = n2 / 2;
  std::int64_t inner = 1, outer = 1;
  for (int a = axis + 1; a < rank; ++a) inner *= shape[a];
  for (int a = 0; a < axis; ++a) outer *= shape[a];

  std::vector<cplx> out(static_cast<std::size_t>(outer * n * inner));
  for (std::int64_t o = 0; o < outer; ++o)
    for (int k = 0; k < n; ++k)
      std::memcpy(out.data() + (o * n + k) * inner, in.data() + (o * n2 + k + n / 2) * inner,
                  sizeof(cplx) * inner);
  shape[axis] = n;
  return out;
}

void phase_shift_axis(std::vector<cplx>& data, const std::vector<int>& shape, int axis, double tau) {
  const int n = shape[axis];
  transform_axis(data.data(), shape, axis, false);

  // Multiply bin f (centered convention, f in [-n/2, n/2)) by
  // e^{-2 pi i f tau / n}.
  std::vector<cplx> ramp(n);
  for (int k = 0; k < n; ++k) {
    const int f = (k < n / 2) ? k : k - n;
    const double a = -kTwoPi * f * tau / n;
    ramp[k] = {std::cos(a), std::sin(a)};
  }

  const int rank = static_cast<int>(shape.size());
  std::int64_t inner = 1, outer = 1;
  for (int a = axis + 1; a < rank; ++a) inner *= shape[a];
  for (int a = 0; a < axis; ++a) outer *= shape[a];
  for (std::int64_t o = 0; o < outer; ++o)
    for (int k = 0; k < n; ++k) {
      cplx* base = data.data() + (o * n + k) * inner;
      for (std::int64_t i = 0; i < inner; ++i) base[i] *= ramp[k];
    }

  transform_axis(data.data(), shape, axis, true);
  const double scale = 1.0 / n;
  for (auto& z : data) z *= scale;
}

}  // namespace gausswig::fft
