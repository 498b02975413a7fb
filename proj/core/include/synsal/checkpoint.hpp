#pragma once

#include <cstdint>
#include <filesystem>

#include "synsal/predictor.hpp"

namespace synsal {

/// Versioned binary checkpoint: magic, dtype tag, the layer shape table and
/// the raw little-endian parameter bytes, followed by an FNV-1a checksum.
/// Loading validates shapes, dtype and checksum.
void save_checkpoint(const std::filesystem::path& path, const Predictor<float>& model);
void save_checkpoint(const std::filesystem::path& path, const Predictor<double>& model);

Predictor<float> load_checkpoint(const std::filesystem::path& path);

/// FNV-1a over a whole file; used for determinism checks.
std::uint64_t file_checksum(const std::filesystem::path& path);

}  // namespace synsal
