#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace synsal {

/// 8-bit RGB raster, row-major, channels interleaved (R,G,B per pixel).
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;  // height*width*3

  RgbImage() = default;
  RgbImage(int h, int w) : height(h), width(w), pixels(std::size_t(h) * w * 3, 0) {}

  static RgbImage filled(int h, int w, std::array<std::uint8_t, 3> rgb) {
    RgbImage img(h, w);
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
      img.pixels[i] = rgb[0];
      img.pixels[i + 1] = rgb[1];
      img.pixels[i + 2] = rgb[2];
    }
    return img;
  }

  std::uint8_t at(int y, int x, int c) const {
    return pixels[(std::size_t(y) * width + x) * 3 + c];
  }
  std::uint8_t& at(int y, int x, int c) {
    return pixels[(std::size_t(y) * width + x) * 3 + c];
  }

  bool operator==(const RgbImage&) const = default;
};

/// 8-bit RGBA raster, row-major, channels interleaved.
struct RgbaImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;  // height*width*4

  RgbaImage() = default;
  RgbaImage(int h, int w) : height(h), width(w), pixels(std::size_t(h) * w * 4, 0) {}

  std::uint8_t at(int y, int x, int c) const {
    return pixels[(std::size_t(y) * width + x) * 4 + c];
  }
  std::uint8_t& at(int y, int x, int c) {
    return pixels[(std::size_t(y) * width + x) * 4 + c];
  }

  bool operator==(const RgbaImage&) const = default;
};

/// Dense per-pixel real map with values in [0,1]; carries predictions,
/// pseudo-labels, variance maps and weight maps.
struct GrayMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;  // height*width

  GrayMap() = default;
  GrayMap(int h, int w, double fill = 0.0)
      : height(h), width(w), values(std::size_t(h) * w, fill) {}

  static GrayMap constant(int h, int w, double v) { return GrayMap(h, w, v); }

  double at(int y, int x) const { return values[std::size_t(y) * width + x]; }
  double& at(int y, int x) { return values[std::size_t(y) * width + x]; }

  std::size_t size() const { return values.size(); }
  bool same_dims(const GrayMap& o) const {
    return height == o.height && width == o.width;
  }

  bool operator==(const GrayMap&) const = default;
};

/// Per-pixel binary label, values strictly in {0,1}.
struct BinaryMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> values;  // height*width

  BinaryMask() = default;
  BinaryMask(int h, int w) : height(h), width(w), values(std::size_t(h) * w, 0) {}

  std::uint8_t at(int y, int x) const { return values[std::size_t(y) * width + x]; }
  std::uint8_t& at(int y, int x) { return values[std::size_t(y) * width + x]; }

  std::size_t size() const { return values.size(); }

  /// View as a real map (0.0 / 1.0).
  GrayMap to_gray() const {
    GrayMap g(height, width);
    for (std::size_t i = 0; i < values.size(); ++i) g.values[i] = values[i] ? 1.0 : 0.0;
    return g;
  }

  bool operator==(const BinaryMask&) const = default;
};

/// 2D complex spectrum (one coefficient per pixel).
struct Spectrum {
  int height = 0;
  int width = 0;
  std::vector<std::complex<double>> coeffs;  // height*width

  Spectrum() = default;
  Spectrum(int h, int w) : height(h), width(w), coeffs(std::size_t(h) * w) {}

  std::complex<double> at(int y, int x) const {
    return coeffs[std::size_t(y) * width + x];
  }
  std::complex<double>& at(int y, int x) {
    return coeffs[std::size_t(y) * width + x];
  }
};

/// Integer pixel position (row y, column x).
struct PixelCoord {
  int y = 0;
  int x = 0;
  bool operator==(const PixelCoord&) const = default;
};

// Invariant checks; throw std::invalid_argument with a descriptive message.
void validate(const RgbImage& img);
void validate(const RgbaImage& img);
void validate(const GrayMap& map);
void validate(const BinaryMask& mask);

}  // namespace synsal
