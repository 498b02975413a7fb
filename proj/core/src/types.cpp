#include "synsal/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace synsal {

namespace {

void check_dims(int h, int w, const char* what) {
  if (h < 1 || w < 1) {
    throw std::invalid_argument(std::string(what) + ": dimensions must be >= 1, got " +
                                std::to_string(h) + "x" + std::to_string(w));
  }
}

}  // namespace

void validate(const RgbImage& img) {
  check_dims(img.height, img.width, "RgbImage");
  if (img.pixels.size() != std::size_t(img.height) * img.width * 3) {
    throw std::invalid_argument("RgbImage: pixel buffer length does not equal height*width*3");
  }
}

void validate(const RgbaImage& img) {
  check_dims(img.height, img.width, "RgbaImage");
  if (img.pixels.size() != std::size_t(img.height) * img.width * 4) {
    throw std::invalid_argument("RgbaImage: pixel buffer length does not equal height*width*4");
  }
}

void validate(const GrayMap& map) {
  check_dims(map.height, map.width, "GrayMap");
  if (map.values.size() != std::size_t(map.height) * map.width) {
    throw std::invalid_argument("GrayMap: value buffer length does not equal height*width");
  }
  for (double v : map.values) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw std::invalid_argument("GrayMap: values must be finite and in [0,1]");
    }
  }
}

void validate(const BinaryMask& mask) {
  check_dims(mask.height, mask.width, "BinaryMask");
  if (mask.values.size() != std::size_t(mask.height) * mask.width) {
    throw std::invalid_argument("BinaryMask: value buffer length does not equal height*width");
  }
  for (std::uint8_t v : mask.values) {
    if (v > 1) throw std::invalid_argument("BinaryMask: values must be in {0,1}");
  }
}

}  // namespace synsal
