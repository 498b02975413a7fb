#include "synsal/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include "synsal/error.hpp"
#include "synsal/png_io.hpp"

namespace synsal {

namespace {

constexpr char kMagic[8] = {'S', 'A', 'L', 'C', 'K', 'P', 'T', '1'};
constexpr std::uint32_t kFormatVersion = 1;

std::uint64_t fnv1a(const std::uint8_t* data, std::size_t n) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= data[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

template <typename T>
void append(std::vector<std::uint8_t>& out, const T& value) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(&value);
  out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T take(const std::vector<std::uint8_t>& in, std::size_t& offset) {
  if (offset + sizeof(T) > in.size()) throw Error("checkpoint: truncated file");
  T value;
  std::memcpy(&value, in.data() + offset, sizeof(T));
  offset += sizeof(T);
  return value;
}

template <typename T>
void save_impl(const std::filesystem::path& path, const Predictor<T>& model,
               std::uint8_t dtype) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + sizeof(kMagic));
  append(out, kFormatVersion);
  append(out, dtype);
  const auto& layers = PredictorLayout::layers();
  append(out, std::uint32_t(layers.size()));
  for (const ConvShape& layer : layers) {
    append(out, std::uint32_t(layer.name.size()));
    out.insert(out.end(), layer.name.begin(), layer.name.end());
    append(out, std::int32_t(layer.out_ch));
    append(out, std::int32_t(layer.in_ch));
    append(out, std::int32_t(layer.kh));
    append(out, std::int32_t(layer.kw));
  }
  const auto& params = model.params();
  append(out, std::uint64_t(params.size()));
  const auto* raw = reinterpret_cast<const std::uint8_t*>(params.data());
  const std::size_t param_bytes = params.size() * sizeof(T);
  out.insert(out.end(), raw, raw + param_bytes);
  append(out, fnv1a(raw, param_bytes));
  write_file(path, out);
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Predictor<float>& model) {
  save_impl(path, model, 0);
}

void save_checkpoint(const std::filesystem::path& path, const Predictor<double>& model) {
  save_impl(path, model, 1);
}

Predictor<float> load_checkpoint(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> in = read_file(path);
  std::size_t offset = 0;
  if (in.size() < sizeof(kMagic) || std::memcmp(in.data(), kMagic, sizeof(kMagic)) != 0) {
    throw Error("checkpoint '" + path.string() + "': bad magic");
  }
  offset = sizeof(kMagic);
  const auto version = take<std::uint32_t>(in, offset);
  if (version != kFormatVersion) {
    throw Error("checkpoint '" + path.string() + "': unsupported version " +
                std::to_string(version));
  }
  const auto dtype = take<std::uint8_t>(in, offset);
  if (dtype != 0) {
    throw Error("checkpoint '" + path.string() + "': expected float32 parameters");
  }
  const auto n_layers = take<std::uint32_t>(in, offset);
  const auto& layers = PredictorLayout::layers();
  if (n_layers != layers.size()) {
    throw Error("checkpoint '" + path.string() + "': layer count mismatch");
  }
  for (const ConvShape& expect : layers) {
    const auto name_len = take<std::uint32_t>(in, offset);
    if (offset + name_len > in.size()) throw Error("checkpoint: truncated file");
    const std::string name(reinterpret_cast<const char*>(in.data() + offset), name_len);
    offset += name_len;
    const auto out_ch = take<std::int32_t>(in, offset);
    const auto in_ch = take<std::int32_t>(in, offset);
    const auto kh = take<std::int32_t>(in, offset);
    const auto kw = take<std::int32_t>(in, offset);
    if (name != expect.name || out_ch != expect.out_ch || in_ch != expect.in_ch ||
        kh != expect.kh || kw != expect.kw) {
      throw Error("checkpoint '" + path.string() + "': shape mismatch in layer '" + name + "'");
    }
  }
  const auto count = take<std::uint64_t>(in, offset);
  if (count != PredictorLayout::param_count()) {
    throw Error("checkpoint '" + path.string() + "': parameter count mismatch");
  }
  std::vector<float> params(std::size_t(count));
  const std::size_t param_bytes = params.size() * sizeof(float);
  if (offset + param_bytes + sizeof(std::uint64_t) > in.size()) {
    throw Error("checkpoint '" + path.string() + "': truncated parameter block");
  }
  std::memcpy(params.data(), in.data() + offset, param_bytes);
  const std::uint64_t expect_sum = fnv1a(in.data() + offset, param_bytes);
  offset += param_bytes;
  const auto stored_sum = take<std::uint64_t>(in, offset);
  if (stored_sum != expect_sum) {
    throw Error("checkpoint '" + path.string() + "': checksum mismatch");
  }
  return Predictor<float>(std::move(params));
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return fnv1a(bytes.data(), bytes.size());
}

}  // namespace synsal
