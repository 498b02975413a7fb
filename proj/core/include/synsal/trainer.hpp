#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "synsal/augment.hpp"
#include "synsal/model.hpp"
#include "synsal/predictor.hpp"
#include "synsal/types.hpp"
#include "synsal/upl.hpp"

namespace synsal {

/// One training sample at the configured train dims. `weights` may be empty,
/// which means all-ones (the source-domain case).
struct LabeledImage {
  std::string id;
  RgbImage image;
  GrayMap label;
  GrayMap weights;
};

struct LossReport {
  double source = 0.0;  // mean weighted BCE over source samples
  double target = 0.0;  // mean weighted BCE over target samples
  double total = 0.0;   // source + target
  int source_count = 0;
  int target_count = 0;
};

/// Per-pixel weighted binary cross-entropy, averaged over pixels.
/// Predictions are clamped to [1e-7, 1-1e-7] before the logs. Empty weight
/// maps mean all ones.
double weighted_bce(const GrayMap& y, const GrayMap& p, const GrayMap& weights);

/// Joint loss of one mixed batch: source term (unit weights) plus target
/// term (pseudo-label weights); either batch may be empty but not both.
LossReport round_loss(const SaliencyModel& model, std::span<const LabeledImage> source_batch,
                      std::span<const LabeledImage> target_batch);

/// Linear one-cycle policy: ramp lr_max/25 -> lr_max over the first 30% of
/// steps, then decay linearly to lr_max/2500 at the final step.
double one_cycle_lr(int step, int total_steps, double lr_max);

struct TrainConfig {
  RoundSchedule schedule;
  int batch_size = 32;
  int epochs_per_round = 20;
  int train_h = 64, train_w = 64;
  int test_h = 352, test_w = 352;
  double lr_max = 0.2;
  double momentum = 0.9;
  double k = 20.0;  // pseudo-label reweighting descent degree
  std::uint64_t seed = 1;
  AugmentConfig augment;
  SelectionThresholds selection;
  bool use_ppr = true;  // false forces uniform pseudo-label weights
  int workers = 0;

  void validate() const;  // throws std::invalid_argument naming the field
};

/// One round of SGD with momentum over mixed batches. Batches interleave the
/// two pools proportionally to their sizes; the learning rate follows one
/// cycle across the round. Deterministic given the config seed and round
/// index: per-sample gradients are reduced in sample order regardless of the
/// worker count.
Predictor<float> train_round(const Predictor<float>& prev,
                             std::span<const LabeledImage> source_pool,
                             std::span<const LabeledImage> target_pool, const TrainConfig& cfg,
                             int round_index);

}  // namespace synsal
