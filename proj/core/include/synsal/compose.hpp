#pragma once

#include "synsal/assets.hpp"
#include "synsal/types.hpp"

namespace synsal {

struct Composite {
  RgbImage image;
  BinaryMask label;
};

/// Copy-paste compositing. The foreground bitmap (including alpha) is
/// rescaled by `scale_ratio` with bilinear interpolation, pasted with its
/// bounding-box center at `center` (top-left = center - size/2), and blended
/// with the standard over operator (alpha/255). The label is 1 exactly where
/// the transformed alpha is >= 0.5 (>= 128 of 255 after rounding); object
/// parts outside the canvas are cropped.
///
/// Throws std::invalid_argument if scale_ratio <= 0 and
/// InvalidPlacementError if the scaled object does not intersect the canvas.
Composite compose(const ForegroundAsset& fg, const BackgroundAsset& bg, double scale_ratio,
                  PixelCoord center);

}  // namespace synsal
