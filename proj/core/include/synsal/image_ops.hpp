#pragma once

#include "synsal/types.hpp"

namespace synsal {

// Horizontal flip: column j maps to column width-1-j, rows preserved.
// An involution (bit-exact) on every raster kind.
GrayMap hflip(const GrayMap& map);
RgbImage hflip(const RgbImage& img);
RgbaImage hflip(const RgbaImage& img);
BinaryMask hflip(const BinaryMask& mask);

// Bilinear resize with half-pixel-center alignment: output pixel (i,j)
// samples source coordinate ((i+0.5)*H/new_h - 0.5, (j+0.5)*W/new_w - 0.5),
// clamped to the borders. Output values are convex combinations of inputs,
// so they never leave the input's value range. Byte rasters round to
// nearest after interpolating in double precision.
GrayMap resize_bilinear(const GrayMap& map, int new_h, int new_w);
RgbImage resize_bilinear(const RgbImage& img, int new_h, int new_w);
RgbaImage resize_bilinear(const RgbaImage& img, int new_h, int new_w);

namespace detail {
/// Single-plane double-precision bilinear resample (the shared kernel).
void resize_plane(const double* src, int h, int w, double* dst, int new_h, int new_w);
}  // namespace detail

}  // namespace synsal
