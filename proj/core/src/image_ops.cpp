#include "synsal/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace synsal {

namespace detail {

void resize_plane(const double* src, int h, int w, double* dst, int new_h, int new_w) {
  for (int i = 0; i < new_h; ++i) {
    double sy = (i + 0.5) * double(h) / double(new_h) - 0.5;
    sy = std::clamp(sy, 0.0, double(h - 1));
    const int y0 = int(sy);
    const int y1 = std::min(y0 + 1, h - 1);
    const double fy = sy - y0;
    for (int j = 0; j < new_w; ++j) {
      double sx = (j + 0.5) * double(w) / double(new_w) - 0.5;
      sx = std::clamp(sx, 0.0, double(w - 1));
      const int x0 = int(sx);
      const int x1 = std::min(x0 + 1, w - 1);
      const double fx = sx - x0;
      const double top = src[y0 * w + x0] * (1.0 - fx) + src[y0 * w + x1] * fx;
      const double bot = src[y1 * w + x0] * (1.0 - fx) + src[y1 * w + x1] * fx;
      dst[i * new_w + j] = top * (1.0 - fy) + bot * fy;
    }
  }
}

namespace {

void check_target(int new_h, int new_w) {
  if (new_h < 1 || new_w < 1) {
    throw std::invalid_argument("resize_bilinear: target dimensions must be >= 1");
  }
}

// Interleaved byte raster resize: interpolate each channel in double,
// round to nearest at the end.
template <int Channels>
std::vector<std::uint8_t> resize_bytes(const std::uint8_t* src, int h, int w,
                                       int new_h, int new_w) {
  std::vector<double> plane(std::size_t(h) * w);
  std::vector<double> out_plane(std::size_t(new_h) * new_w);
  std::vector<std::uint8_t> out(std::size_t(new_h) * new_w * Channels);
  for (int c = 0; c < Channels; ++c) {
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = src[i * Channels + c];
    resize_plane(plane.data(), h, w, out_plane.data(), new_h, new_w);
    for (std::size_t i = 0; i < out_plane.size(); ++i) {
      out[i * Channels + c] = std::uint8_t(std::lround(out_plane[i]));
    }
  }
  return out;
}

}  // namespace
}  // namespace detail

GrayMap hflip(const GrayMap& map) {
  GrayMap out(map.height, map.width);
  for (int y = 0; y < map.height; ++y)
    for (int x = 0; x < map.width; ++x) out.at(y, x) = map.at(y, map.width - 1 - x);
  return out;
}

RgbImage hflip(const RgbImage& img) {
  RgbImage out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = img.at(y, img.width - 1 - x, c);
  return out;
}

RgbaImage hflip(const RgbaImage& img) {
  RgbaImage out(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      for (int c = 0; c < 4; ++c) out.at(y, x, c) = img.at(y, img.width - 1 - x, c);
  return out;
}

BinaryMask hflip(const BinaryMask& mask) {
  BinaryMask out(mask.height, mask.width);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) out.at(y, x) = mask.at(y, mask.width - 1 - x);
  return out;
}

GrayMap resize_bilinear(const GrayMap& map, int new_h, int new_w) {
  detail::check_target(new_h, new_w);
  GrayMap out(new_h, new_w);
  detail::resize_plane(map.values.data(), map.height, map.width, out.values.data(),
                       new_h, new_w);
  return out;
}

RgbImage resize_bilinear(const RgbImage& img, int new_h, int new_w) {
  detail::check_target(new_h, new_w);
  RgbImage out(new_h, new_w);
  out.pixels = detail::resize_bytes<3>(img.pixels.data(), img.height, img.width, new_h, new_w);
  return out;
}

RgbaImage resize_bilinear(const RgbaImage& img, int new_h, int new_w) {
  detail::check_target(new_h, new_w);
  RgbaImage out(new_h, new_w);
  out.pixels = detail::resize_bytes<4>(img.pixels.data(), img.height, img.width, new_h, new_w);
  return out;
}

}  // namespace synsal
