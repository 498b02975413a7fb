#include "synsal/dataset.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "synsal/error.hpp"
#include "synsal/parallel.hpp"
#include "synsal/png_io.hpp"
#include "synsal/rng.hpp"
#include "synsal/version.hpp"

namespace synsal {

using nlohmann::json;

namespace {

constexpr std::uint64_t kRecordStream = 0x7265636fULL;
constexpr std::uint64_t kShiftStream = 0x73686966ULL;
constexpr std::uint64_t kNoiseStream = 0x6e6f6973ULL;

std::string record_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%06d", i);
  return buf;
}

SynthRecord sample_record(int index, const ForegroundAsset& fg, const BackgroundAsset& bg,
                          ScaleRange range, std::uint64_t dataset_seed) {
  SynthRecord rec;
  rec.id = record_id(index);
  rec.image_path = "images/" + rec.id + ".png";
  rec.label_path = "labels/" + rec.id + ".png";
  rec.fg_id = fg.id;
  rec.bg_id = bg.id;
  rec.seed = derive_seed(dataset_seed, kRecordStream + std::uint64_t(index));
  Rng rng(rec.seed);
  rec.scale_ratio = rng.uniform(range.lo, range.hi);
  // keep the scaled object's bounding-box center inside the canvas
  rec.center.y = int(rng.uniform_int(0, bg.image.height - 1));
  rec.center.x = int(rng.uniform_int(0, bg.image.width - 1));
  return rec;
}

std::vector<std::size_t> matched_backgrounds(const AssetLibrary& assets, std::uint64_t seed) {
  if (assets.backgrounds.size() < assets.foregrounds.size()) {
    throw InsufficientBackgroundsError(
        "generate_dataset: need at least as many backgrounds as foregrounds (" +
        std::to_string(assets.backgrounds.size()) + " < " +
        std::to_string(assets.foregrounds.size()) + ")");
  }
  std::vector<std::size_t> perm(assets.backgrounds.size());
  std::iota(perm.begin(), perm.end(), std::size_t(0));
  Rng rng(derive_seed(seed, 0x6d617463ULL));
  rng.shuffle(perm);
  return perm;
}

ShiftParams sample_shift(const DomainShiftConfig& cfg, std::uint64_t record_seed) {
  Rng rng(derive_seed(record_seed, kShiftStream));
  ShiftParams p;
  p.gamma = rng.uniform(cfg.gamma_lo, cfg.gamma_hi);
  for (auto& s : p.color_scale) s = rng.uniform(cfg.color_lo, cfg.color_hi);
  p.noise_sigma = cfg.noise_sigma;
  p.blur_radius = rng.bernoulli(cfg.blur_prob) ? cfg.blur_radius : 0;
  return p;
}

void box_blur(std::vector<double>& plane, int h, int w, int radius) {
  std::vector<double> tmp(plane.size());
  // horizontal
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int x0 = std::max(0, x - radius), x1 = std::min(w - 1, x + radius);
      double sum = 0;
      for (int i = x0; i <= x1; ++i) sum += plane[std::size_t(y) * w + i];
      tmp[std::size_t(y) * w + x] = sum / (x1 - x0 + 1);
    }
  }
  // vertical
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int y0 = std::max(0, y - radius), y1 = std::min(h - 1, y + radius);
      double sum = 0;
      for (int i = y0; i <= y1; ++i) sum += tmp[std::size_t(i) * w + x];
      plane[std::size_t(y) * w + x] = sum / (y1 - y0 + 1);
    }
  }
}

json record_to_json(const SynthRecord& rec) {
  json j{{"type", "record"},
         {"id", rec.id},
         {"image", rec.image_path},
         {"label", rec.label_path},
         {"fg_id", rec.fg_id},
         {"bg_id", rec.bg_id},
         {"scale_ratio", rec.scale_ratio},
         {"center", {{"y", rec.center.y}, {"x", rec.center.x}}},
         {"seed", rec.seed}};
  if (rec.shift) {
    j["shift"] = {{"gamma", rec.shift->gamma},
                  {"color_scale", rec.shift->color_scale},
                  {"noise_sigma", rec.shift->noise_sigma},
                  {"blur_radius", rec.shift->blur_radius}};
  }
  return j;
}

SynthRecord record_from_json(const json& j) {
  SynthRecord rec;
  rec.id = j.at("id").get<std::string>();
  rec.image_path = j.at("image").get<std::string>();
  rec.label_path = j.at("label").get<std::string>();
  rec.fg_id = j.at("fg_id").get<std::string>();
  rec.bg_id = j.at("bg_id").get<std::string>();
  rec.scale_ratio = j.at("scale_ratio").get<double>();
  rec.center.y = j.at("center").at("y").get<int>();
  rec.center.x = j.at("center").at("x").get<int>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("shift")) {
    ShiftParams p;
    const json& s = j.at("shift");
    p.gamma = s.at("gamma").get<double>();
    p.color_scale = s.at("color_scale").get<std::array<double, 3>>();
    p.noise_sigma = s.at("noise_sigma").get<double>();
    p.blur_radius = s.at("blur_radius").get<int>();
    rec.shift = p;
  }
  return rec;
}

}  // namespace

const SynthRecord* DatasetManifest::find(const std::string& id) const {
  for (const auto& rec : records)
    if (rec.id == id) return &rec;
  return nullptr;
}

DatasetManifest generate_dataset(const AssetLibrary& assets, ScaleRange range,
                                 std::uint64_t seed) {
  const auto perm = matched_backgrounds(assets, seed);
  DatasetManifest manifest;
  manifest.generator_version = std::string(kGeneratorVersion);
  manifest.global_seed = seed;
  manifest.records.reserve(assets.foregrounds.size());
  for (std::size_t i = 0; i < assets.foregrounds.size(); ++i) {
    manifest.records.push_back(sample_record(int(i), assets.foregrounds[i],
                                             assets.backgrounds[perm[i]], range, seed));
  }
  return manifest;
}

DatasetManifest generate_target_domain(const AssetLibrary& assets, ScaleRange range,
                                       const DomainShiftConfig& shift, std::uint64_t seed) {
  DatasetManifest manifest = generate_dataset(assets, range, seed);
  manifest.labels_eval_only = true;
  for (auto& rec : manifest.records) {
    rec.shift = sample_shift(shift, rec.seed);
  }
  return manifest;
}

RgbImage apply_shift(const RgbImage& image, const ShiftParams& shift, std::uint64_t noise_seed) {
  const int h = image.height, w = image.width;
  std::array<std::vector<double>, 3> planes;
  for (int c = 0; c < 3; ++c) {
    planes[std::size_t(c)].resize(std::size_t(h) * w);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const double v01 = image.at(y, x, c) / 255.0;
        planes[std::size_t(c)][std::size_t(y) * w + x] =
            255.0 * std::pow(v01, shift.gamma) * shift.color_scale[std::size_t(c)];
      }
    if (shift.blur_radius > 0) box_blur(planes[std::size_t(c)], h, w, shift.blur_radius);
  }
  Rng noise(noise_seed);
  RgbImage out(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double v = planes[std::size_t(c)][std::size_t(y) * w + x];
        if (shift.noise_sigma > 0.0) v += noise.normal(0.0, shift.noise_sigma);
        out.at(y, x, c) = std::uint8_t(std::lround(std::clamp(v, 0.0, 255.0)));
      }
  return out;
}

Composite render_record(const SynthRecord& record, const AssetLibrary& assets) {
  const ForegroundAsset* fg = assets.find_foreground(record.fg_id);
  if (!fg) throw Error("render_record '" + record.id + "': missing foreground " + record.fg_id);
  const BackgroundAsset* bg = assets.find_background(record.bg_id);
  if (!bg) throw Error("render_record '" + record.id + "': missing background " + record.bg_id);
  Composite composite = compose(*fg, *bg, record.scale_ratio, record.center);
  if (record.shift && !record.shift->is_identity()) {
    composite.image =
        apply_shift(composite.image, *record.shift, derive_seed(record.seed, kNoiseStream));
  }
  return composite;
}

void write_dataset(const DatasetManifest& manifest, const AssetLibrary& assets,
                   const std::filesystem::path& root, int workers) {
  namespace fs = std::filesystem;
  fs::create_directories(root / "images");
  fs::create_directories(root / "labels");
  parallel_for(manifest.records.size(), workers, [&](std::size_t i) {
    const SynthRecord& rec = manifest.records[i];
    const Composite composite = render_record(rec, assets);
    write_file(root / rec.image_path, encode_png(composite.image));
    write_file(root / rec.label_path, encode_png(composite.label));
  });
  save_manifest(manifest, root / "manifest.jsonl");
}

std::string manifest_to_jsonl(const DatasetManifest& manifest) {
  std::ostringstream out;
  out << json{{"type", "meta"},
              {"generator_version", manifest.generator_version},
              {"global_seed", manifest.global_seed},
              {"labels_eval_only", manifest.labels_eval_only},
              {"soft_map_quantization", "8-bit, 256 levels, max error 1/510"}}
             .dump()
      << "\n";
  for (const auto& rec : manifest.records) out << record_to_json(rec).dump() << "\n";
  return out.str();
}

DatasetManifest manifest_from_jsonl(const std::string& text) {
  DatasetManifest manifest;
  std::istringstream in(text);
  std::string line;
  bool have_meta = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string type = j.value("type", "record");
    if (type == "meta") {
      manifest.generator_version = j.at("generator_version").get<std::string>();
      manifest.global_seed = j.at("global_seed").get<std::uint64_t>();
      manifest.labels_eval_only = j.value("labels_eval_only", false);
      have_meta = true;
    } else {
      manifest.records.push_back(record_from_json(j));
    }
  }
  if (!have_meta) throw Error("manifest: missing meta line");
  return manifest;
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  write_file(path, manifest_to_jsonl(manifest));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return manifest_from_jsonl(std::string(bytes.begin(), bytes.end()));
  } catch (const json::exception& e) {
    throw Error("manifest '" + path.string() + "': " + e.what());
  }
}

DatasetReader::DatasetReader(std::filesystem::path root, DatasetManifest manifest,
                             bool allow_eval_labels)
    : root_(std::move(root)), manifest_(std::move(manifest)),
      allow_eval_labels_(allow_eval_labels) {}

DatasetReader DatasetReader::open(const std::filesystem::path& manifest_path,
                                  bool allow_eval_labels) {
  return DatasetReader(manifest_path.parent_path(), load_manifest(manifest_path),
                       allow_eval_labels);
}

RgbImage DatasetReader::load_image(const SynthRecord& record) const {
  return decode_rgb(read_file(root_ / record.image_path));
}

BinaryMask DatasetReader::load_label(const SynthRecord& record) const {
  if (manifest_.labels_eval_only && !allow_eval_labels_) {
    throw Error("label access denied for evaluation-only split (record '" + record.id + "')");
  }
  return decode_mask(read_file(root_ / record.label_path));
}

}  // namespace synsal
