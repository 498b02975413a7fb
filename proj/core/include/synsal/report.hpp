#pragma once

#include <string>
#include <vector>

#include "synsal/metrics.hpp"
#include "synsal/stats.hpp"

namespace synsal {

std::string eval_summary_csv(const EvalResult& result);
std::string pr_curve_csv(const std::vector<PrPoint>& curve);
std::string histogram_csv(const std::vector<HistogramBin>& bins);

/// Minimal static SVG plot of a precision-recall curve.
std::string pr_curve_svg(const std::vector<PrPoint>& curve);

}  // namespace synsal
