#include "synsal/stats.hpp"

#include <algorithm>
#include <stdexcept>

#include "synsal/image_ops.hpp"

namespace synsal {

double object_size_ratio(const BinaryMask& label) {
  if (label.values.empty()) return 0.0;
  std::size_t ones = 0;
  for (std::uint8_t v : label.values) ones += v;
  return double(ones) / double(label.values.size());
}

GrayMap center_bias_map(const std::vector<BinaryMask>& labels, int common_h, int common_w) {
  if (labels.empty()) {
    throw std::invalid_argument("center_bias_map: empty label list");
  }
  if (common_h < 1 || common_w < 1) {
    throw std::invalid_argument("center_bias_map: common dims must be >= 1");
  }
  GrayMap sum(common_h, common_w, 0.0);
  for (const auto& label : labels) {
    const GrayMap resized = resize_bilinear(label.to_gray(), common_h, common_w);
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += resized.values[i];
  }
  for (auto& v : sum.values) v /= double(labels.size());
  return sum;
}

std::vector<HistogramBin> size_ratio_histogram(const std::vector<double>& ratios, int bins) {
  if (bins < 1) throw std::invalid_argument("size_ratio_histogram: bins must be >= 1");
  std::vector<HistogramBin> hist(std::size_t(bins));
  for (int b = 0; b < bins; ++b) {
    hist[std::size_t(b)].lo = double(b) / bins;
    hist[std::size_t(b)].hi = double(b + 1) / bins;
  }
  for (double r : ratios) {
    const double clamped = std::clamp(r, 0.0, 1.0);
    int b = std::min(bins - 1, int(clamped * bins));
    ++hist[std::size_t(b)].count;
  }
  return hist;
}

}  // namespace synsal
