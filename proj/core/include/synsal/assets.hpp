#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "synsal/types.hpp"

namespace synsal {

/// Object image with transparent background; must contain at least one
/// pixel with alpha > 0.
struct ForegroundAsset {
  std::string id;
  RgbaImage image;
};

/// Non-salient background photo or texture.
struct BackgroundAsset {
  std::string id;
  RgbImage image;
};

struct AssetLibrary {
  std::vector<ForegroundAsset> foregrounds;
  std::vector<BackgroundAsset> backgrounds;

  const ForegroundAsset* find_foreground(const std::string& id) const;
  const BackgroundAsset* find_background(const std::string& id) const;
};

struct ProceduralAssetConfig {
  int fg_height = 44;
  int fg_width = 44;
  int bg_height = 64;
  int bg_width = 64;
};

/// Generate procedural assets: foregrounds are anti-aliased random shapes
/// (ellipses, polygons, unions) with solid or gradient fill; backgrounds are
/// low-frequency textures (color noise, gradients, soft stripes) without
/// salient structure. Deterministic under `seed`.
AssetLibrary procedural_assets(int n_fg, int n_bg, std::uint64_t seed,
                               const ProceduralAssetConfig& cfg = {});

/// Persist as dir/foregrounds/<id>.png (RGBA) and dir/backgrounds/<id>.png.
void save_assets(const AssetLibrary& assets, const std::filesystem::path& dir);

/// Ingest PNG assets from the layout written by save_assets. Files are read
/// in sorted filename order; ids are the file stems. Backgrounds smaller
/// than the minimum canvas are rejected.
AssetLibrary load_assets(const std::filesystem::path& dir, int min_bg_height = 64,
                         int min_bg_width = 64);

/// Invariant checks (alpha > 0 somewhere; minimum background size).
void validate(const ForegroundAsset& fg);
void validate(const BackgroundAsset& bg, int min_height = 64, int min_width = 64);

}  // namespace synsal
