#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "synsal/assets.hpp"
#include "synsal/compose.hpp"
#include "synsal/types.hpp"

namespace synsal {

/// Photometric parameters applied to one target-domain image
/// (gamma, then per-channel color scaling, then box blur, then additive
/// Gaussian noise; the noise realization derives from the record seed).
struct ShiftParams {
  double gamma = 1.0;
  std::array<double, 3> color_scale{1.0, 1.0, 1.0};
  double noise_sigma = 0.0;  // intensity levels (0..255 scale)
  int blur_radius = 0;       // 0 = off

  bool is_identity() const {
    return gamma == 1.0 && color_scale == std::array<double, 3>{1.0, 1.0, 1.0} &&
           noise_sigma == 0.0 && blur_radius == 0;
  }
};

/// Ranges the per-image shift parameters are sampled from.
struct DomainShiftConfig {
  double gamma_lo = 1.0, gamma_hi = 1.0;
  double color_lo = 1.0, color_hi = 1.0;
  double noise_sigma = 0.0;
  int blur_radius = 0;
  double blur_prob = 0.0;
};

struct ScaleRange {
  double lo = 0.5;
  double hi = 1.1;
};

/// One composited sample; together with the asset library this fully
/// determines the stored image and label.
struct SynthRecord {
  std::string id;
  std::string image_path;  // relative to the dataset root
  std::string label_path;
  std::string fg_id;
  std::string bg_id;
  double scale_ratio = 1.0;
  PixelCoord center;
  std::uint64_t seed = 0;
  std::optional<ShiftParams> shift;  // target-domain records only
};

struct DatasetManifest {
  std::string generator_version;
  std::uint64_t global_seed = 0;
  bool labels_eval_only = false;
  std::vector<SynthRecord> records;

  const SynthRecord* find(const std::string& id) const;
};

/// Match each foreground with a distinct background (seeded permutation),
/// sample scale uniformly from `range` and the object center uniformly over
/// the canvas. Throws InsufficientBackgroundsError when |bgs| < |fgs|.
DatasetManifest generate_dataset(const AssetLibrary& assets, ScaleRange range,
                                 std::uint64_t seed);

/// Same compositing pipeline on fresh pairs plus a per-image photometric
/// shift; labels are stored but flagged evaluation-only.
DatasetManifest generate_target_domain(const AssetLibrary& assets, ScaleRange range,
                                       const DomainShiftConfig& shift, std::uint64_t seed);

/// Deterministically re-render a record (composite + shift) from its
/// manifest entry and the asset library.
Composite render_record(const SynthRecord& record, const AssetLibrary& assets);

/// Apply a photometric shift; the noise realization is drawn from
/// Rng(noise_seed) in row-major pixel order.
RgbImage apply_shift(const RgbImage& image, const ShiftParams& shift, std::uint64_t noise_seed);

/// Render all records and write `images/`, `labels/` and `manifest.jsonl`
/// under `root`.
void write_dataset(const DatasetManifest& manifest, const AssetLibrary& assets,
                   const std::filesystem::path& root, int workers = 0);

// Line-delimited JSON persistence (first line carries dataset metadata).
std::string manifest_to_jsonl(const DatasetManifest& manifest);
DatasetManifest manifest_from_jsonl(const std::string& text);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Split-scoped dataset access. Readers created without eval-label access
/// refuse to load labels from manifests flagged evaluation-only, which keeps
/// the training pipeline honest about never reading target labels.
class DatasetReader {
 public:
  DatasetReader(std::filesystem::path root, DatasetManifest manifest, bool allow_eval_labels);

  static DatasetReader open(const std::filesystem::path& manifest_path, bool allow_eval_labels);

  const DatasetManifest& manifest() const { return manifest_; }
  const std::filesystem::path& root() const { return root_; }

  RgbImage load_image(const SynthRecord& record) const;
  BinaryMask load_label(const SynthRecord& record) const;

 private:
  std::filesystem::path root_;
  DatasetManifest manifest_;
  bool allow_eval_labels_;
};

}  // namespace synsal
