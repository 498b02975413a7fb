#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "synsal/pipeline.hpp"
#include "synsal/run_config.hpp"

namespace synsal {

/// Generate one procedural asset pool under out_dir.
void cmd_gen_assets(int n_fg, int n_bg, std::uint64_t seed, const std::filesystem::path& out_dir,
                    const ProceduralAssetConfig& asset_cfg = {});

/// Build the source, target-train and target-eval datasets under the config
/// data directory. Asset pools are ingested from the configured directories
/// when they exist and generated procedurally (then saved) when they do not.
void cmd_gen_dataset(const RunConfig& cfg);

/// Size-ratio histogram CSV and center-bias PNG heatmap for one manifest.
void cmd_stats(const std::filesystem::path& manifest_path, const std::filesystem::path& out_dir,
               int bins = 20);

/// Full adaptation run; returns the metric history. Writes the echoed
/// config, per-round checkpoints, pseudo-label audits and metrics.csv under
/// out_dir.
PipelineResult cmd_train(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Evaluate a checkpoint against a labeled manifest; writes summary CSV,
/// 256-point PR CSV and an SVG plot.
EvalResult cmd_eval(const std::filesystem::path& checkpoint_path,
                    const std::filesystem::path& manifest_path,
                    const std::filesystem::path& out_dir, int test_h, int test_w,
                    int workers = 0);

/// Saliency maps for arbitrary PNG inputs; one <stem>_saliency.png each.
std::vector<std::filesystem::path> cmd_infer(const std::filesystem::path& checkpoint_path,
                                             const std::vector<std::filesystem::path>& images,
                                             const std::filesystem::path& out_dir, int test_h,
                                             int test_w);

struct AblationRow {
  std::string arm;
  double final_mae = 0.0;
  double final_f_beta = 0.0;
};

/// The three ablation arms (source-only / vanilla-pl / upl) on the shared
/// datasets, plus comparison.csv. Returns exactly three rows.
std::vector<AblationRow> cmd_ablate(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Arm configs used by cmd_ablate (exposed for tests and the acceptance
/// suite): identical to `cfg` except for the pseudo-label policy.
RunConfig ablation_arm_config(const RunConfig& cfg, const std::string& arm);

}  // namespace synsal
