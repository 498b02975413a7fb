#pragma once

// Scalar-templated CPU kernels for the compact predictor. Layouts are planar
// (channel-major, row-major planes); conv inputs are zero-padded by one pixel
// so the inner loops are branch-free and vectorize.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace synsal::kernels {

template <typename T>
void pad1(const T* src, int channels, int h, int w, T* dst) {
  const int ph = h + 2, pw = w + 2;
  for (int c = 0; c < channels; ++c) {
    T* plane = dst + std::size_t(c) * ph * pw;
    const T* in = src + std::size_t(c) * h * w;
    std::fill(plane, plane + pw, T(0));
    for (int y = 0; y < h; ++y) {
      T* row = plane + std::size_t(y + 1) * pw;
      row[0] = T(0);
      std::copy(in + std::size_t(y) * w, in + std::size_t(y + 1) * w, row + 1);
      row[w + 1] = T(0);
    }
    std::fill(plane + std::size_t(h + 1) * pw, plane + std::size_t(ph) * pw, T(0));
  }
}

// 3x3 same-convolution on padded input; processes OB output channels per
// sweep so each input row load feeds several FMA chains.
template <typename T, int OB = 4>
void conv3x3_forward(const T* in_pad, int cin, int h, int w, const T* weights, const T* bias,
                     T* out, int cout, bool relu) {
  const int pw = w + 2;
  int co = 0;
  auto run_block = [&](int block) {
    T* o[OB];
    for (int b = 0; b < block; ++b) {
      o[b] = out + std::size_t(co + b) * h * w;
      std::fill(o[b], o[b] + std::size_t(h) * w, bias ? bias[co + b] : T(0));
    }
    for (int ci = 0; ci < cin; ++ci) {
      const T* in_plane = in_pad + std::size_t(ci) * (h + 2) * pw;
      for (int ky = 0; ky < 3; ++ky) {
        for (int y = 0; y < h; ++y) {
          const T* src = in_plane + std::size_t(y + ky) * pw;
          for (int b = 0; b < block; ++b) {
            const T* wp = weights + (std::size_t(co + b) * cin + ci) * 9 + std::size_t(ky) * 3;
            const T w0 = wp[0], w1 = wp[1], w2 = wp[2];
            T* dst = o[b] + std::size_t(y) * w;
            for (int x = 0; x < w; ++x) {
              dst[x] += w0 * src[x] + w1 * src[x + 1] + w2 * src[x + 2];
            }
          }
        }
      }
    }
    if (relu) {
      for (int b = 0; b < block; ++b) {
        for (std::size_t i = 0; i < std::size_t(h) * w; ++i) {
          if (o[b][i] < T(0)) o[b][i] = T(0);
        }
      }
    }
  };
  for (; co + OB <= cout; co += OB) run_block(OB);
  if (co < cout) run_block(cout - co);
}

// Weight/bias gradients: dw[co][ci][ky][kx] = sum_yx dout[co](y,x) * in_pad[ci](y+ky, x+kx).
template <typename T>
void conv3x3_grad_weights(const T* in_pad, int cin, int h, int w, const T* dout, int cout,
                          T* dw, T* db) {
  const int pw = w + 2;
  for (int co = 0; co < cout; ++co) {
    const T* g = dout + std::size_t(co) * h * w;
    T bias_sum = T(0);
    for (std::size_t i = 0; i < std::size_t(h) * w; ++i) bias_sum += g[i];
    db[co] += bias_sum;
    for (int ci = 0; ci < cin; ++ci) {
      const T* in_plane = in_pad + std::size_t(ci) * (h + 2) * pw;
      T* dwp = dw + (std::size_t(co) * cin + ci) * 9;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          T sum = T(0);
          for (int y = 0; y < h; ++y) {
            const T* src = in_plane + std::size_t(y + ky) * pw + kx;
            const T* gr = g + std::size_t(y) * w;
            for (int x = 0; x < w; ++x) sum += gr[x] * src[x];
          }
          dwp[ky * 3 + kx] += sum;
        }
      }
    }
  }
}

// Input gradient of a 3x3 same-convolution: a forward conv of the padded
// output gradient with transposed, 180-degree-flipped weights.
template <typename T>
void conv3x3_flip_transpose_weights(const T* w, int cout, int cin, T* wt) {
  for (int co = 0; co < cout; ++co) {
    for (int ci = 0; ci < cin; ++ci) {
      const T* src = w + (std::size_t(co) * cin + ci) * 9;
      T* dst = wt + (std::size_t(ci) * cout + co) * 9;
      for (int k = 0; k < 9; ++k) dst[k] = src[8 - k];
    }
  }
}

// 2x2 stride-2 average pool; border windows clip to the image and average
// over the pixels they actually cover. Output dims are ceil(h/2) x ceil(w/2).
template <typename T>
void avgpool2_forward(const T* in, int channels, int h, int w, T* out) {
  const int oh = (h + 1) / 2, ow = (w + 1) / 2;
  for (int c = 0; c < channels; ++c) {
    const T* plane = in + std::size_t(c) * h * w;
    T* o = out + std::size_t(c) * oh * ow;
    for (int y = 0; y < oh; ++y) {
      const int y1 = std::min(2 * y + 2, h);
      for (int x = 0; x < ow; ++x) {
        const int x1 = std::min(2 * x + 2, w);
        T sum = T(0);
        for (int yy = 2 * y; yy < y1; ++yy)
          for (int xx = 2 * x; xx < x1; ++xx) sum += plane[std::size_t(yy) * w + xx];
        o[std::size_t(y) * ow + x] = sum / T((y1 - 2 * y) * (x1 - 2 * x));
      }
    }
  }
}

template <typename T>
void avgpool2_backward(const T* dout, int channels, int h, int w, T* din) {
  const int oh = (h + 1) / 2, ow = (w + 1) / 2;
  std::fill(din, din + std::size_t(channels) * h * w, T(0));
  for (int c = 0; c < channels; ++c) {
    const T* g = dout + std::size_t(c) * oh * ow;
    T* d = din + std::size_t(c) * h * w;
    for (int y = 0; y < oh; ++y) {
      const int y1 = std::min(2 * y + 2, h);
      for (int x = 0; x < ow; ++x) {
        const int x1 = std::min(2 * x + 2, w);
        const T share = g[std::size_t(y) * ow + x] / T((y1 - 2 * y) * (x1 - 2 * x));
        for (int yy = 2 * y; yy < y1; ++yy)
          for (int xx = 2 * x; xx < x1; ++xx) d[std::size_t(yy) * w + xx] += share;
      }
    }
  }
}

// Bilinear upsample with the same half-pixel-center convention as
// resize_bilinear; the backward pass distributes gradients with the same
// corner weights.
struct LerpTap {
  int i0, i1;
  double f;  // weight of i1
};

inline LerpTap lerp_tap(int out_index, int out_size, int in_size) {
  double s = (out_index + 0.5) * double(in_size) / double(out_size) - 0.5;
  s = std::clamp(s, 0.0, double(in_size - 1));
  const int i0 = int(s);
  const int i1 = std::min(i0 + 1, in_size - 1);
  return {i0, i1, s - i0};
}

template <typename T>
void upsample_bilinear_forward(const T* in, int channels, int ih, int iw, T* out, int oh,
                               int ow) {
  for (int c = 0; c < channels; ++c) {
    const T* plane = in + std::size_t(c) * ih * iw;
    T* o = out + std::size_t(c) * oh * ow;
    for (int y = 0; y < oh; ++y) {
      const LerpTap ty = lerp_tap(y, oh, ih);
      for (int x = 0; x < ow; ++x) {
        const LerpTap tx = lerp_tap(x, ow, iw);
        const T top = plane[std::size_t(ty.i0) * iw + tx.i0] * T(1.0 - tx.f) +
                      plane[std::size_t(ty.i0) * iw + tx.i1] * T(tx.f);
        const T bot = plane[std::size_t(ty.i1) * iw + tx.i0] * T(1.0 - tx.f) +
                      plane[std::size_t(ty.i1) * iw + tx.i1] * T(tx.f);
        o[std::size_t(y) * ow + x] = top * T(1.0 - ty.f) + bot * T(ty.f);
      }
    }
  }
}

template <typename T>
void upsample_bilinear_backward(const T* dout, int channels, int oh, int ow, T* din, int ih,
                                int iw) {
  std::fill(din, din + std::size_t(channels) * ih * iw, T(0));
  for (int c = 0; c < channels; ++c) {
    const T* g = dout + std::size_t(c) * oh * ow;
    T* d = din + std::size_t(c) * ih * iw;
    for (int y = 0; y < oh; ++y) {
      const LerpTap ty = lerp_tap(y, oh, ih);
      for (int x = 0; x < ow; ++x) {
        const LerpTap tx = lerp_tap(x, ow, iw);
        const T grad = g[std::size_t(y) * ow + x];
        d[std::size_t(ty.i0) * iw + tx.i0] += grad * T((1.0 - ty.f) * (1.0 - tx.f));
        d[std::size_t(ty.i0) * iw + tx.i1] += grad * T((1.0 - ty.f) * tx.f);
        d[std::size_t(ty.i1) * iw + tx.i0] += grad * T(ty.f * (1.0 - tx.f));
        d[std::size_t(ty.i1) * iw + tx.i1] += grad * T(ty.f * tx.f);
      }
    }
  }
}

}  // namespace synsal::kernels
