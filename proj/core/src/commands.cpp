#include "synsal/commands.hpp"

#include <algorithm>
#include <iostream>

#include "synsal/checkpoint.hpp"
#include "synsal/error.hpp"
#include "synsal/image_ops.hpp"
#include "synsal/png_io.hpp"
#include "synsal/report.hpp"
#include "synsal/rng.hpp"
#include "synsal/stats.hpp"

namespace synsal {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSourceAssetStream = 0x73616574ULL;
constexpr std::uint64_t kTargetAssetStream = 0x74616574ULL;
constexpr std::uint64_t kSourceDataStream = 0x73646174ULL;
constexpr std::uint64_t kTargetDataStream = 0x74646174ULL;

AssetLibrary ensure_assets(const fs::path& dir, int n, std::uint64_t seed,
                           const ProceduralAssetConfig& asset_cfg) {
  if (fs::exists(dir / "foregrounds")) {
    return load_assets(dir, asset_cfg.bg_height, asset_cfg.bg_width);
  }
  AssetLibrary assets = procedural_assets(n, n, seed, asset_cfg);
  save_assets(assets, dir);
  return assets;
}

DatasetManifest slice_manifest(const DatasetManifest& manifest, std::size_t from,
                               std::size_t to) {
  DatasetManifest out;
  out.generator_version = manifest.generator_version;
  out.global_seed = manifest.global_seed;
  out.labels_eval_only = manifest.labels_eval_only;
  out.records.assign(manifest.records.begin() + std::ptrdiff_t(from),
                     manifest.records.begin() + std::ptrdiff_t(to));
  return out;
}

void require_file(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) {
    throw Error(what + " not found: " + path.string() + " (run gen-dataset first)");
  }
}

}  // namespace

void cmd_gen_assets(int n_fg, int n_bg, std::uint64_t seed, const fs::path& out_dir,
                    const ProceduralAssetConfig& asset_cfg) {
  const AssetLibrary assets = procedural_assets(n_fg, n_bg, seed, asset_cfg);
  save_assets(assets, out_dir);
}

void cmd_gen_dataset(const RunConfig& cfg) {
  cfg.validate();
  const AssetLibrary source_assets = ensure_assets(
      cfg.assets_source_dir, cfg.n_source, derive_seed(cfg.seed, kSourceAssetStream),
      cfg.asset_cfg);
  const int n_target = cfg.n_target_train + cfg.n_target_eval;
  const AssetLibrary target_assets = ensure_assets(
      cfg.assets_target_dir, n_target, derive_seed(cfg.seed, kTargetAssetStream), cfg.asset_cfg);

  const DatasetManifest source = generate_dataset(source_assets, cfg.scale_range,
                                                  derive_seed(cfg.seed, kSourceDataStream));
  write_dataset(source, source_assets, cfg.data_dir / "source", cfg.workers);

  const DatasetManifest target = generate_target_domain(
      target_assets, cfg.scale_range, cfg.shift, derive_seed(cfg.seed, kTargetDataStream));
  const auto n_train = std::size_t(cfg.n_target_train);
  write_dataset(slice_manifest(target, 0, n_train), target_assets, cfg.data_dir / "target_train",
                cfg.workers);
  write_dataset(slice_manifest(target, n_train, target.records.size()), target_assets,
                cfg.data_dir / "target_eval", cfg.workers);
}

void cmd_stats(const fs::path& manifest_path, const fs::path& out_dir, int bins) {
  require_file(manifest_path, "manifest");
  const DatasetReader reader = DatasetReader::open(manifest_path, /*allow_eval_labels=*/true);
  const auto& records = reader.manifest().records;
  if (records.empty()) throw Error("cmd_stats: empty manifest");

  std::vector<BinaryMask> labels;
  std::vector<double> ratios;
  labels.reserve(records.size());
  ratios.reserve(records.size());
  for (const SynthRecord& rec : records) {
    labels.push_back(reader.load_label(rec));
    ratios.push_back(object_size_ratio(labels.back()));
  }
  const int h = labels.front().height, w = labels.front().width;

  fs::create_directories(out_dir);
  write_file(out_dir / "size_ratio_hist.csv", histogram_csv(size_ratio_histogram(ratios, bins)));
  write_file(out_dir / "center_bias.png", encode_png(center_bias_map(labels, h, w)));
}

PipelineResult cmd_train(const RunConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  require_file(cfg.source_manifest(), "source manifest");
  require_file(cfg.target_train_manifest(), "target-train manifest");
  require_file(cfg.target_eval_manifest(), "target-eval manifest");

  const DatasetReader source = DatasetReader::open(cfg.source_manifest(), false);
  const DatasetReader target_train = DatasetReader::open(cfg.target_train_manifest(),
                                                         /*allow_eval_labels=*/false);
  const DatasetReader target_eval = DatasetReader::open(cfg.target_eval_manifest(),
                                                        /*allow_eval_labels=*/true);

  fs::create_directories(out_dir);
  write_file(out_dir / "config.json",
             cfg.raw_text.empty() ? run_config_to_json(cfg) : cfg.raw_text);
  return run_pipeline(cfg.train, source, target_train, target_eval, out_dir);
}

EvalResult cmd_eval(const fs::path& checkpoint_path, const fs::path& manifest_path,
                    const fs::path& out_dir, int test_h, int test_w, int workers) {
  require_file(checkpoint_path, "checkpoint");
  require_file(manifest_path, "manifest");
  const Predictor<float> model = load_checkpoint(checkpoint_path);
  const DatasetReader reader = DatasetReader::open(manifest_path, /*allow_eval_labels=*/true);
  const EvalResult result = evaluate_manifest(model, reader, test_h, test_w, workers);
  fs::create_directories(out_dir);
  write_file(out_dir / "eval_summary.csv", eval_summary_csv(result));
  write_file(out_dir / "pr_curve.csv", pr_curve_csv(result.pr));
  write_file(out_dir / "pr_curve.svg", pr_curve_svg(result.pr));
  return result;
}

std::vector<fs::path> cmd_infer(const fs::path& checkpoint_path,
                                const std::vector<fs::path>& images, const fs::path& out_dir,
                                int test_h, int test_w) {
  require_file(checkpoint_path, "checkpoint");
  const Predictor<float> model = load_checkpoint(checkpoint_path);
  fs::create_directories(out_dir);
  std::vector<fs::path> outputs;
  for (const fs::path& path : images) {
    require_file(path, "input image");
    const RgbImage image = decode_rgb(read_file(path));
    const RgbImage resized = (image.height == test_h && image.width == test_w)
                                 ? image
                                 : resize_bilinear(image, test_h, test_w);
    GrayMap saliency = model.predict(resized);
    if (saliency.height != image.height || saliency.width != image.width) {
      saliency = resize_bilinear(saliency, image.height, image.width);
    }
    const fs::path out_path = out_dir / (path.stem().string() + "_saliency.png");
    write_file(out_path, encode_png(saliency));
    outputs.push_back(out_path);
  }
  return outputs;
}

RunConfig ablation_arm_config(const RunConfig& cfg, const std::string& arm) {
  RunConfig out = cfg;
  out.raw_text.clear();  // arm dirs echo the effective config
  if (arm == "upl") return out;
  if (arm == "source_only") {
    std::fill(out.train.schedule.target_props.begin(), out.train.schedule.target_props.end(),
              0.0);
    return out;
  }
  if (arm == "vanilla_pl") {
    // all pseudo-labels, uniform weights, no degeneracy filtering
    out.train.use_ppr = false;
    out.train.selection.degen_lo = 0.0;
    out.train.selection.degen_hi = 1.0;
    auto& props = out.train.schedule.target_props;
    std::fill(props.begin(), props.end(), 1.0);
    if (!props.empty()) props.front() = 0.0;
    return out;
  }
  throw std::invalid_argument("unknown ablation arm: " + arm);
}

std::vector<AblationRow> cmd_ablate(const RunConfig& cfg, const fs::path& out_dir) {
  static const char* kArms[] = {"source_only", "vanilla_pl", "upl"};
  std::vector<AblationRow> rows;
  fs::create_directories(out_dir);
  for (const char* arm : kArms) {
    const RunConfig arm_cfg = ablation_arm_config(cfg, arm);
    std::cout << "[ablate] running arm " << arm << "\n";
    const PipelineResult result = cmd_train(arm_cfg, out_dir / arm);
    const RoundMetrics& last = result.history.back();
    rows.push_back(AblationRow{arm, last.eval_mae, last.eval_f_beta});
  }
  std::ostringstream csv;
  csv << "arm,final_mae,final_f_beta\n";
  csv.precision(10);
  for (const AblationRow& row : rows) {
    csv << row.arm << "," << row.final_mae << "," << row.final_f_beta << "\n";
  }
  write_file(out_dir / "comparison.csv", csv.str());
  return rows;
}

}  // namespace synsal
