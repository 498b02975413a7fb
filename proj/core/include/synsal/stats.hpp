#pragma once

#include <vector>

#include "synsal/types.hpp"

namespace synsal {

/// Fraction of 1-pixels: count / (H*W).
double object_size_ratio(const BinaryMask& label);

/// Average saliency map: each mask is bilinearly resized to the common
/// dimensions, then averaged pixel-wise. Throws on an empty list.
GrayMap center_bias_map(const std::vector<BinaryMask>& labels, int common_h, int common_w);

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

/// Equal-width histogram over [0,1]; values on a boundary fall into the
/// upper bin except 1.0, which falls into the last.
std::vector<HistogramBin> size_ratio_histogram(const std::vector<double>& ratios, int bins);

}  // namespace synsal
