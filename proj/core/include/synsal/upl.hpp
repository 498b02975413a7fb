#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synsal/augment.hpp"
#include "synsal/model.hpp"
#include "synsal/types.hpp"

namespace synsal {

/// Per-pixel population variance of predictions; values in [0, 0.25].
using VarianceMap = GrayMap;
/// Per-pixel loss weights exp(-k*variance); values in (0, 1].
using WeightMap = GrayMap;

/// Per-target-image pseudo-label state for one round.
struct PseudoLabelRecord {
  std::string target_id;
  GrayMap pseudo_label;
  VarianceMap variance;
  double score = 0.0;  // mean variance
  WeightMap weights;
  bool selected = false;
  int round = 0;
};

/// Per-round source/target sampling proportions. Defaults are the six-round
/// schedule: source {1, 1/2, 1/4, 1/8, 1/16, 1/32}, target
/// {0, 0.1, 0.2, 0.4, 0.6, 0.6}.
struct RoundSchedule {
  int rounds = 6;
  std::vector<double> source_props{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};
  std::vector<double> target_props{0.0, 0.1, 0.2, 0.4, 0.6, 0.6};

  void validate() const;  // throws std::invalid_argument
};

/// Per-pixel population variance (divide by N) over N >= 2 same-shaped
/// predictions; preds[0] is the pseudo-label itself.
VarianceMap variance_map(const std::vector<GrayMap>& preds);

/// Image-level uncertainty: arithmetic mean of the variance map.
double uncertainty_score(const VarianceMap& variance);

/// Soft pixel weights exp(-k * variance), k > 0.
WeightMap reweight(const VarianceMap& variance, double k);

struct SelectionThresholds {
  double degen_lo = 0.01;
  double degen_hi = 0.99;
};

/// Image-level sample selection: drop candidates whose binarized pseudo-label
/// foreground fraction is outside [degen_lo, degen_hi] (nearly all salient or
/// non-salient), rank the rest by ascending score with ascending target_id as
/// the tie-break, and mark the first floor(proportion * |records|) selected.
/// The quota counts the full record list, so heavy degeneracy can under-fill.
void select_targets(std::vector<PseudoLabelRecord>& records, double proportion,
                    double degen_lo = 0.01, double degen_hi = 0.99);

struct TargetImage {
  std::string id;
  RgbImage image;
};

/// Refresh all pseudo-label state against a frozen predictor: predict the
/// pseudo-label, re-predict under each reversible augmentation and map back,
/// then variance / score / weights, then image-level selection. The
/// augmentation set is built per image (FDA partner drawn from the other
/// target images, seeded); the predictor is never modified.
std::vector<PseudoLabelRecord> refresh_pseudo_labels(
    const SaliencyModel& predictor, const std::vector<TargetImage>& targets,
    const AugmentConfig& aug, double k, double proportion,
    const SelectionThresholds& thresholds, std::uint64_t seed, int round, int workers = 0);

}  // namespace synsal
