#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "synsal/assets.hpp"
#include "synsal/dataset.hpp"
#include "synsal/trainer.hpp"

namespace synsal {

/// The single declarative document driving asset generation, dataset builds,
/// training and evaluation. Every field has a default; unknown keys are
/// rejected so typos fail loudly.
struct RunConfig {
  std::uint64_t seed = 1;
  int workers = 0;

  std::filesystem::path assets_source_dir = "assets/source";
  std::filesystem::path assets_target_dir = "assets/target";
  std::filesystem::path data_dir = "data";
  std::filesystem::path runs_dir = "runs";

  int n_source = 500;
  int n_target_train = 300;
  int n_target_eval = 200;
  ProceduralAssetConfig asset_cfg;
  ScaleRange scale_range;
  DomainShiftConfig shift{0.65, 1.55, 0.75, 1.25, 8.0, 1, 0.5};

  TrainConfig train;

  /// Original config file text, echoed verbatim into run directories.
  std::string raw_text;

  void validate() const;  // throws ConfigError naming the offending field

  std::filesystem::path source_manifest() const {
    return data_dir / "source" / "manifest.jsonl";
  }
  std::filesystem::path target_train_manifest() const {
    return data_dir / "target_train" / "manifest.jsonl";
  }
  std::filesystem::path target_eval_manifest() const {
    return data_dir / "target_eval" / "manifest.jsonl";
  }
};

/// Parse a config from JSON text / file. Missing keys take defaults;
/// unknown or ill-typed keys raise ConfigError with the full field path.
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Serialize (used to echo effective per-arm configs in ablation runs).
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace synsal
