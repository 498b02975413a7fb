#include "synsal/compose.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "synsal/error.hpp"
#include "synsal/image_ops.hpp"

namespace synsal {

Composite compose(const ForegroundAsset& fg, const BackgroundAsset& bg, double scale_ratio,
                  PixelCoord center) {
  if (!(scale_ratio > 0.0)) {
    throw std::invalid_argument("compose: scale_ratio must be > 0");
  }
  validate(fg.image);
  validate(bg.image);

  const int scaled_h = std::max(1, int(std::lround(fg.image.height * scale_ratio)));
  const int scaled_w = std::max(1, int(std::lround(fg.image.width * scale_ratio)));
  const RgbaImage scaled = (scaled_h == fg.image.height && scaled_w == fg.image.width)
                               ? fg.image
                               : resize_bilinear(fg.image, scaled_h, scaled_w);

  const int top = center.y - scaled_h / 2;
  const int left = center.x - scaled_w / 2;
  const int y0 = std::max(0, top);
  const int x0 = std::max(0, left);
  const int y1 = std::min(bg.image.height, top + scaled_h);
  const int x1 = std::min(bg.image.width, left + scaled_w);
  if (y0 >= y1 || x0 >= x1) {
    throw InvalidPlacementError("compose: object '" + fg.id +
                                "' does not intersect the canvas of '" + bg.id + "'");
  }

  Composite out;
  out.image = bg.image;
  out.label = BinaryMask(bg.image.height, bg.image.width);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      const std::uint8_t a = scaled.at(y - top, x - left, 3);
      if (a == 0) continue;
      const double alpha = a / 255.0;
      for (int c = 0; c < 3; ++c) {
        const double blended =
            alpha * scaled.at(y - top, x - left, c) + (1.0 - alpha) * bg.image.at(y, x, c);
        out.image.at(y, x, c) = std::uint8_t(std::lround(blended));
      }
      // alpha >= 128 of 255 is exactly "transformed alpha >= 0.5"
      if (a >= 128) out.label.at(y, x) = 1;
    }
  }
  return out;
}

}  // namespace synsal
