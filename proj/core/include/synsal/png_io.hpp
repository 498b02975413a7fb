#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "synsal/types.hpp"

namespace synsal {

/// Raw decoded PNG pixels: channels is 1 (gray), 3 (RGB) or 4 (RGBA);
/// palette, sub-8-bit and 16-bit inputs are normalized to 8-bit on decode.
struct PngImage {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;  // height*width*channels
};

// Lossless 8-bit encoders. GrayMap serializes to 8-bit grayscale by rounding
// to the nearest of 256 levels; BinaryMask serializes as {0,255}.
std::vector<std::uint8_t> encode_png(const RgbImage& img);
std::vector<std::uint8_t> encode_png(const RgbaImage& img);
std::vector<std::uint8_t> encode_png(const BinaryMask& mask);
std::vector<std::uint8_t> encode_png(const GrayMap& map);

/// Decode a PNG byte stream. Throws PngDecodeError (with the byte offset at
/// which reading stopped) on malformed input.
PngImage decode_png(std::span<const std::uint8_t> bytes);

// Typed views over a decode, converting channel count where needed
// (gray -> replicated RGB, RGBA -> RGB by dropping alpha, missing alpha -> 255).
RgbImage decode_rgb(std::span<const std::uint8_t> bytes);
RgbaImage decode_rgba(std::span<const std::uint8_t> bytes);
GrayMap decode_gray(std::span<const std::uint8_t> bytes);   // value/255
BinaryMask decode_mask(std::span<const std::uint8_t> bytes);  // value >= 128

// File helpers.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace synsal
