#include "synsal/augment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "synsal/error.hpp"
#include "synsal/fft.hpp"
#include "synsal/image_ops.hpp"
#include "synsal/rng.hpp"

namespace synsal {

namespace {

// Centered band [start, start+side) on an axis of length n, DC at n/2.
void band_range(int n, double beta, int& start, int& side) {
  side = std::max(1, int(std::floor(beta * n)));
  side = std::min(side, n);
  start = n / 2 - (side - 1) / 2;
}

int shifted_index(int i, int n) { return (i + (n + 1) / 2) % n; }  // fftshift

}  // namespace

RgbImage apply(const AugmentationSpec& spec, const RgbImage& image, const StylePool& styles) {
  switch (spec.kind) {
    case AugKind::Identity:
      return image;
    case AugKind::Flip:
      return hflip(image);
    case AugKind::Scale:
      if (spec.target_h < 1 || spec.target_w < 1) {
        throw std::invalid_argument("apply: Scale target dims must be >= 1");
      }
      if (spec.target_h == image.height && spec.target_w == image.width) return image;
      return resize_bilinear(image, spec.target_h, spec.target_w);
    case AugKind::Fda: {
      const RgbImage* style = styles.find(spec.style_id);
      if (!style) {
        throw MissingStyleError("apply: FDA style id '" + spec.style_id + "' not in pool");
      }
      return fda_swap(image, *style, spec.beta);
    }
  }
  throw std::invalid_argument("apply: unknown augmentation kind");
}

GrayMap invert(const AugmentationSpec& spec, const GrayMap& pred, int orig_h, int orig_w) {
  if (orig_h < 1 || orig_w < 1) {
    throw std::invalid_argument("invert: original dims must be >= 1");
  }
  switch (spec.kind) {
    case AugKind::Identity:
    case AugKind::Fda:
      // appearance-only perturbation: the prediction already lives in the
      // original pixel grid
      if (pred.height != orig_h || pred.width != orig_w) {
        throw std::invalid_argument("invert: prediction dims do not match original dims");
      }
      return pred;
    case AugKind::Flip:
      if (pred.height != orig_h || pred.width != orig_w) {
        throw std::invalid_argument("invert: prediction dims do not match original dims");
      }
      return hflip(pred);
    case AugKind::Scale:
      if (pred.height != spec.target_h || pred.width != spec.target_w) {
        throw std::invalid_argument("invert: prediction dims do not match Scale target dims");
      }
      return resize_bilinear(pred, orig_h, orig_w);
  }
  throw std::invalid_argument("invert: unknown augmentation kind");
}

std::vector<double> fda_swap_plane(const std::vector<double>& src_plane,
                                   const std::vector<double>& style_plane, int h, int w,
                                   double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw std::invalid_argument("fda_swap: beta must be in [0,1]");
  }
  const std::size_t n = std::size_t(h) * w;
  if (src_plane.size() != n || style_plane.size() != n) {
    throw std::invalid_argument("fda_swap_plane: plane size does not match dims");
  }
  int row_start, row_side, col_start, col_side;
  band_range(h, beta, row_start, row_side);
  band_range(w, beta, col_start, col_side);

  std::vector<std::complex<double>> src_spec(n), style_spec(n);
  for (std::size_t i = 0; i < n; ++i) {
    src_spec[i] = {src_plane[i], 0.0};
    style_spec[i] = {style_plane[i], 0.0};
  }
  fft2_inplace(src_spec.data(), h, w, false);
  fft2_inplace(style_spec.data(), h, w, false);

  // swap amplitude inside the centered band, keep src phase
  for (int sy = row_start; sy < row_start + row_side; ++sy) {
    const int y = shifted_index(sy, h);
    for (int sx = col_start; sx < col_start + col_side; ++sx) {
      const int x = shifted_index(sx, w);
      std::complex<double>& coeff = src_spec[std::size_t(y) * w + x];
      const double style_amp = std::abs(style_spec[std::size_t(y) * w + x]);
      coeff = std::polar(style_amp, std::arg(coeff));
    }
  }

  fft2_inplace(src_spec.data(), h, w, true);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = src_spec[i].real();
  return out;
}

RgbImage fda_swap(const RgbImage& src, const RgbImage& style, double beta) {
  const int h = src.height, w = src.width;
  const RgbImage style_resized = (style.height == h && style.width == w)
                                     ? style
                                     : resize_bilinear(style, h, w);
  RgbImage out(h, w);
  const std::size_t n = std::size_t(h) * w;
  std::vector<double> src_plane(n), style_plane(n);
  for (int c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      src_plane[i] = double(src.pixels[i * 3 + std::size_t(c)]);
      style_plane[i] = double(style_resized.pixels[i * 3 + std::size_t(c)]);
    }
    const std::vector<double> swapped = fda_swap_plane(src_plane, style_plane, h, w, beta);
    for (std::size_t i = 0; i < n; ++i) {
      out.pixels[i * 3 + std::size_t(c)] =
          std::uint8_t(std::lround(std::clamp(swapped[i], 0.0, 255.0)));
    }
  }
  return out;
}

std::vector<AugmentationSpec> build_augmentation_set(
    const AugmentConfig& config, const std::vector<std::string>& other_target_ids,
    std::uint64_t seed) {
  std::vector<AugmentationSpec> specs;
  specs.push_back(AugmentationSpec::identity());
  if (config.use_flip) specs.push_back(AugmentationSpec::flip());
  if (config.use_scale) specs.push_back(AugmentationSpec::scale(config.scale_h, config.scale_w));
  if (config.use_fda && !other_target_ids.empty()) {
    Rng rng(seed);
    const auto pick = std::size_t(rng.uniform_int(0, std::int64_t(other_target_ids.size()) - 1));
    specs.push_back(AugmentationSpec::fda(config.fda_beta, other_target_ids[pick]));
  }
  if (specs.size() < 2) {
    throw std::invalid_argument(
        "build_augmentation_set: need the pseudo-label plus at least one perturbation");
  }
  return specs;
}

}  // namespace synsal
