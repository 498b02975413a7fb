#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "synsal/types.hpp"

namespace synsal {

enum class AugKind { Identity, Flip, Scale, Fda };

/// One reversible augmentation. Identity is the pseudo-label slot itself;
/// Flip/Scale are geometric; Fda perturbs appearance only, so its inverse on
/// predictions is the geometric identity.
struct AugmentationSpec {
  AugKind kind = AugKind::Identity;
  int target_h = 0;  // Scale
  int target_w = 0;
  double beta = 0.0;     // Fda
  std::string style_id;  // Fda

  static AugmentationSpec identity() { return {}; }
  static AugmentationSpec flip() { return {AugKind::Flip, 0, 0, 0.0, {}}; }
  static AugmentationSpec scale(int h, int w) { return {AugKind::Scale, h, w, 0.0, {}}; }
  static AugmentationSpec fda(double beta, std::string style_id) {
    return {AugKind::Fda, 0, 0, beta, std::move(style_id)};
  }
};

/// Resolves FDA style ids to target images (non-owning).
class StylePool {
 public:
  void add(const std::string& id, const RgbImage* image) { images_[id] = image; }
  const RgbImage* find(const std::string& id) const {
    const auto it = images_.find(id);
    return it == images_.end() ? nullptr : it->second;
  }

 private:
  std::unordered_map<std::string, const RgbImage*> images_;
};

/// Forward augmentation on an input image. Throws MissingStyleError when an
/// Fda spec references an id absent from the pool.
RgbImage apply(const AugmentationSpec& spec, const RgbImage& image, const StylePool& styles);

/// Map a prediction made on the augmented image back to the pseudo-label's
/// frame (the original pixel grid). Output dims always equal
/// (orig_h, orig_w); throws std::invalid_argument on a dimension mismatch.
GrayMap invert(const AugmentationSpec& spec, const GrayMap& pred, int orig_h, int orig_w);

/// Fourier-domain style swap: per channel, replace the amplitude of `src`
/// inside the centered low-frequency rectangle of side
/// (max(1, floor(beta*H)), max(1, floor(beta*W))) with `style`'s amplitude,
/// keeping src's phase everywhere; inverse transform, real part, clamp to
/// [0,255]. The style image is resized to src's dims first. The band always
/// includes the DC cell, so beta=0 swaps mean brightness only.
RgbImage fda_swap(const RgbImage& src, const RgbImage& style, double beta);

/// Single-channel core of fda_swap in double precision, before clamping and
/// quantization: returns the real part of the inverse transform. Plane
/// buffers are row-major h*w.
std::vector<double> fda_swap_plane(const std::vector<double>& src_plane,
                                   const std::vector<double>& style_plane, int h, int w,
                                   double beta);

struct AugmentConfig {
  bool use_flip = true;
  bool use_scale = true;
  int scale_h = 224;
  int scale_w = 224;
  bool use_fda = true;
  double fda_beta = 0.05;
};

/// Build the augmentation set for one target image: [Identity, Flip,
/// Scale(h,w), Fda(beta, partner)] under the default config. The FDA style
/// partner is drawn uniformly from `other_target_ids` (the caller excludes
/// the image itself), seeded. Throws std::invalid_argument when the
/// resulting set has fewer than 2 entries.
std::vector<AugmentationSpec> build_augmentation_set(const AugmentConfig& config,
                                                     const std::vector<std::string>& other_target_ids,
                                                     std::uint64_t seed);

}  // namespace synsal
