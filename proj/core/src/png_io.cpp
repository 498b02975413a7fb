#include "synsal/png_io.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "synsal/error.hpp"

namespace synsal {

namespace {

struct MemoryReader {
  const std::uint8_t* data = nullptr;
  std::size_t size = 0;
  std::size_t offset = 0;
  std::string error;
};

void read_callback(png_structp png, png_bytep out, png_size_t count) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + count > reader->size) {
    reader->error = "unexpected end of stream";
    png_error(png, "unexpected end of stream");
  }
  std::memcpy(out, reader->data + reader->offset, count);
  reader->offset += count;
}

void error_callback(png_structp png, png_const_charp msg) {
  auto* reader = static_cast<MemoryReader*>(png_get_error_ptr(png));
  if (reader && reader->error.empty()) reader->error = msg;
  longjmp(png_jmpbuf(png), 1);
}

void warning_callback(png_structp, png_const_charp) {}

struct MemoryWriter {
  std::vector<std::uint8_t> bytes;
};

void write_callback(png_structp png, png_bytep data, png_size_t count) {
  auto* writer = static_cast<MemoryWriter*>(png_get_io_ptr(png));
  writer->bytes.insert(writer->bytes.end(), data, data + count);
}

void flush_callback(png_structp) {}

std::vector<std::uint8_t> encode_raw(const std::uint8_t* data, int height, int width,
                                     int channels) {
  if (height < 1 || width < 1) {
    throw std::invalid_argument("encode_png: dimensions must be >= 1");
  }
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error("encode_png: failed to allocate write struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error("encode_png: failed to allocate info struct");
  }
  MemoryWriter writer;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error("encode_png: libpng write failure");
  }
  png_set_write_fn(png, &writer, write_callback, flush_callback);
  const int color_type = channels == 1   ? PNG_COLOR_TYPE_GRAY
                         : channels == 3 ? PNG_COLOR_TYPE_RGB
                                         : PNG_COLOR_TYPE_RGBA;
  png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_write_info(png, info);
  std::vector<png_bytep> rows(std::size_t(height));
  const std::size_t stride = std::size_t(width) * std::size_t(channels);
  for (int y = 0; y < height; ++y) {
    rows[std::size_t(y)] = const_cast<png_bytep>(data + std::size_t(y) * stride);
  }
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return std::move(writer.bytes);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RgbImage& img) {
  validate(img);
  return encode_raw(img.pixels.data(), img.height, img.width, 3);
}

std::vector<std::uint8_t> encode_png(const RgbaImage& img) {
  validate(img);
  return encode_raw(img.pixels.data(), img.height, img.width, 4);
}

std::vector<std::uint8_t> encode_png(const BinaryMask& mask) {
  validate(mask);
  std::vector<std::uint8_t> gray(mask.values.size());
  for (std::size_t i = 0; i < gray.size(); ++i) gray[i] = mask.values[i] ? 255 : 0;
  return encode_raw(gray.data(), mask.height, mask.width, 1);
}

std::vector<std::uint8_t> encode_png(const GrayMap& map) {
  validate(map);
  std::vector<std::uint8_t> gray(map.values.size());
  for (std::size_t i = 0; i < gray.size(); ++i) {
    gray[i] = std::uint8_t(std::lround(map.values[i] * 255.0));
  }
  return encode_raw(gray.data(), map.height, map.width, 1);
}

PngImage decode_png(std::span<const std::uint8_t> bytes) {
  MemoryReader reader{bytes.data(), bytes.size(), 0, {}};
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw PngDecodeError("decode_png: not a PNG signature", 0);
  }
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &reader, error_callback, warning_callback);
  if (!png) throw Error("decode_png: failed to allocate read struct");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error("decode_png: failed to allocate info struct");
  }
  PngImage out;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    const std::size_t offset = reader.offset;
    const std::string msg = reader.error.empty() ? "corrupt stream" : reader.error;
    png_destroy_read_struct(&png, &info, nullptr);
    throw PngDecodeError("decode_png: " + msg, offset);
  }
  png_set_read_fn(png, &reader, read_callback);
  png_read_info(png, info);

  // Normalize everything to 8-bit gray/RGB/RGBA.
  const png_byte color_type = png_get_color_type(png, info);
  const png_byte bit_depth = png_get_bit_depth(png, info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (bit_depth == 16) png_set_strip_16(png);
  if (color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  png_read_update_info(png, info);

  out.height = int(png_get_image_height(png, info));
  out.width = int(png_get_image_width(png, info));
  out.channels = int(png_get_channels(png, info));
  if (out.channels != 1 && out.channels != 3 && out.channels != 4) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw PngDecodeError("decode_png: unsupported channel count", reader.offset);
  }
  out.data.resize(std::size_t(out.height) * out.width * out.channels);
  rows.resize(std::size_t(out.height));
  const std::size_t stride = std::size_t(out.width) * std::size_t(out.channels);
  for (int y = 0; y < out.height; ++y) {
    rows[std::size_t(y)] = out.data.data() + std::size_t(y) * stride;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

namespace {

RgbImage to_rgb(const PngImage& p) {
  RgbImage img(p.height, p.width);
  const std::size_t n = std::size_t(p.height) * p.width;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.channels == 1) {
      img.pixels[i * 3] = img.pixels[i * 3 + 1] = img.pixels[i * 3 + 2] = p.data[i];
    } else {
      img.pixels[i * 3] = p.data[i * std::size_t(p.channels)];
      img.pixels[i * 3 + 1] = p.data[i * std::size_t(p.channels) + 1];
      img.pixels[i * 3 + 2] = p.data[i * std::size_t(p.channels) + 2];
    }
  }
  return img;
}

}  // namespace

RgbImage decode_rgb(std::span<const std::uint8_t> bytes) { return to_rgb(decode_png(bytes)); }

RgbaImage decode_rgba(std::span<const std::uint8_t> bytes) {
  const PngImage p = decode_png(bytes);
  RgbaImage img(p.height, p.width);
  const std::size_t n = std::size_t(p.height) * p.width;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.channels == 1) {
      img.pixels[i * 4] = img.pixels[i * 4 + 1] = img.pixels[i * 4 + 2] = p.data[i];
      img.pixels[i * 4 + 3] = 255;
    } else if (p.channels == 3) {
      img.pixels[i * 4] = p.data[i * 3];
      img.pixels[i * 4 + 1] = p.data[i * 3 + 1];
      img.pixels[i * 4 + 2] = p.data[i * 3 + 2];
      img.pixels[i * 4 + 3] = 255;
    } else {
      for (int c = 0; c < 4; ++c) img.pixels[i * 4 + c] = p.data[i * 4 + std::size_t(c)];
    }
  }
  return img;
}

GrayMap decode_gray(std::span<const std::uint8_t> bytes) {
  const PngImage p = decode_png(bytes);
  GrayMap map(p.height, p.width);
  const std::size_t n = std::size_t(p.height) * p.width;
  for (std::size_t i = 0; i < n; ++i) {
    double v;
    if (p.channels == 1) {
      v = p.data[i];
    } else {
      // Rec.601 luma for color inputs.
      const std::uint8_t* px = &p.data[i * std::size_t(p.channels)];
      v = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
    }
    map.values[i] = v / 255.0;
  }
  return map;
}

BinaryMask decode_mask(std::span<const std::uint8_t> bytes) {
  const GrayMap g = decode_gray(bytes);
  BinaryMask mask(g.height, g.width);
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    mask.values[i] = g.values[i] >= 128.0 / 255.0 ? 1 : 0;
  }
  return mask;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> bytes(std::size_t(size));
  in.read(reinterpret_cast<char*>(bytes.data()), size);
  if (!in) throw Error("failed reading file: " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open file for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error("failed writing file: " + path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open file for writing: " + path.string());
  out << text;
  if (!out) throw Error("failed writing file: " + path.string());
}

}  // namespace synsal
