#pragma once

#include "synsal/types.hpp"

namespace synsal {

/// A saliency predictor viewed as a pure function image -> soft map.
/// Implementations must be safe to call from multiple threads.
class SaliencyModel {
 public:
  virtual ~SaliencyModel() = default;
  virtual GrayMap predict(const RgbImage& image) const = 0;
};

}  // namespace synsal
