#pragma once

#include <vector>

#include "synsal/dataset.hpp"
#include "synsal/model.hpp"
#include "synsal/types.hpp"

namespace synsal {

/// Mean absolute per-pixel error. The mask overload treats labels as 0/1.
double mae(const GrayMap& prediction, const GrayMap& truth);
double mae(const GrayMap& prediction, const BinaryMask& truth);

struct PrPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

/// Micro-averaged PR curve at thresholds i/255 for i in 0..255: predictions
/// binarize at p >= t; TP/FP/FN accumulate over all images jointly.
/// Precision of an empty positive set (TP+FP = 0) is defined as 1.
std::vector<PrPoint> pr_curve(const std::vector<GrayMap>& predictions,
                              const std::vector<BinaryMask>& truths);

/// F-measure (1+b2)*P*R / (b2*P + R); 0 when the denominator is 0.
double f_beta(double precision, double recall, double beta_sq = 0.3);

/// Maximum F-measure over a PR curve.
double max_f_beta(const std::vector<PrPoint>& curve, double beta_sq = 0.3);

struct EvalResult {
  double mae = 0.0;    // mean of per-image MAE
  double f_beta = 0.0; // max F over the micro-averaged curve
  std::vector<PrPoint> pr;
  int n_images = 0;
};

/// Evaluate a predictor over a labeled manifest: resize each image to the
/// test dims, predict, resize the prediction back to the label's native
/// dims, accumulate MAE and the joint PR curve. No post-processing.
EvalResult evaluate_manifest(const SaliencyModel& model, const DatasetReader& reader,
                             int test_h, int test_w, int workers = 0, double beta_sq = 0.3);

}  // namespace synsal
