#pragma once

#include <filesystem>
#include <vector>

#include "synsal/dataset.hpp"
#include "synsal/metrics.hpp"
#include "synsal/predictor.hpp"
#include "synsal/trainer.hpp"

namespace synsal {

struct RoundMetrics {
  int round = 0;  // 1-based
  int source_samples = 0;
  int targets_selected = 0;
  double eval_mae = 0.0;
  double eval_f_beta = 0.0;
};

struct PipelineResult {
  Predictor<float> model = Predictor<float>::zeros();
  std::vector<RoundMetrics> history;
};

/// The iterative adaptation loop. Per round i (1-based): train on the
/// scheduled source subset plus the currently selected pseudo-labeled
/// targets, evaluate on the held-out split, then refresh pseudo-labels for
/// round i+1 against the frozen model. Target-train labels are never read
/// (the reader enforces it); when `run_dir` is non-empty, checkpoints,
/// pseudo-label audit maps and a metric history CSV are persisted per round,
/// so earlier rounds survive a mid-run failure.
PipelineResult run_pipeline(const TrainConfig& cfg, const DatasetReader& source,
                            const DatasetReader& target_train, const DatasetReader& target_eval,
                            const std::filesystem::path& run_dir = {});

}  // namespace synsal
