// synsal command-line front-end: asset generation, dataset builds, training,
// evaluation, inference and the three-arm ablation, all driven by one
// declarative JSON config.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "synsal/commands.hpp"
#include "synsal/error.hpp"
#include "synsal/version.hpp"

namespace fs = std::filesystem;

namespace {

struct CommonOpts {
  std::string config_path;
  std::int64_t seed = -1;  // -1: keep the config value
  int workers = -1;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
  auto* config = cmd->add_option("--config", opts.config_path, "run config (JSON)");
  if (config_required) config->required();
  cmd->add_option("--seed", opts.seed, "override the config seed");
  cmd->add_option("--workers", opts.workers, "worker cap (0 = available cores)");
  cmd->add_option("--out", opts.out, "output directory");
}

synsal::RunConfig load_config(const CommonOpts& opts) {
  synsal::RunConfig cfg = synsal::load_run_config(opts.config_path);
  if (opts.seed >= 0) {
    cfg.seed = std::uint64_t(opts.seed);
    cfg.train.seed = cfg.seed;
    cfg.raw_text.clear();  // an override invalidates the verbatim echo
  }
  if (opts.workers >= 0) {
    cfg.workers = opts.workers;
    cfg.train.workers = opts.workers;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic-to-real saliency adaptation toolkit"};
  app.set_version_flag("--version", std::string(synsal::kVersion));
  app.require_subcommand(1);

  // gen-assets
  auto* gen_assets = app.add_subcommand("gen-assets", "generate one procedural asset pool");
  int ga_n_fg = 16, ga_n_bg = 16, ga_fg_dim = 44, ga_bg_dim = 64;
  std::uint64_t ga_seed = 1;
  std::string ga_out = "assets/pool";
  gen_assets->add_option("--n-fg", ga_n_fg, "number of foreground objects");
  gen_assets->add_option("--n-bg", ga_n_bg, "number of backgrounds");
  gen_assets->add_option("--seed", ga_seed, "generation seed");
  gen_assets->add_option("--out", ga_out, "output directory")->required();
  gen_assets->add_option("--fg-dim", ga_fg_dim, "foreground canvas side");
  gen_assets->add_option("--bg-dim", ga_bg_dim, "background side");

  // gen-dataset
  auto* gen_dataset = app.add_subcommand("gen-dataset",
                                         "build source/target datasets from the config");
  CommonOpts gd_opts;
  add_common(gen_dataset, gd_opts, /*config_required=*/true);

  // stats
  auto* stats = app.add_subcommand("stats", "dataset statistics for one manifest");
  std::string st_manifest, st_out = "stats";
  int st_bins = 20;
  stats->add_option("--manifest", st_manifest, "manifest.jsonl path")->required();
  stats->add_option("--out", st_out, "output directory");
  stats->add_option("--bins", st_bins, "histogram bins");

  // train
  auto* train = app.add_subcommand("train", "run the full adaptation pipeline");
  CommonOpts tr_opts;
  add_common(train, tr_opts, /*config_required=*/true);

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint on a labeled manifest");
  std::string ev_checkpoint, ev_manifest, ev_out = "eval";
  int ev_h = 352, ev_w = 352, ev_workers = 0;
  eval->add_option("--checkpoint", ev_checkpoint, "checkpoint file")->required();
  eval->add_option("--manifest", ev_manifest, "manifest.jsonl path")->required();
  eval->add_option("--out", ev_out, "output directory");
  eval->add_option("--test-height", ev_h, "network input height");
  eval->add_option("--test-width", ev_w, "network input width");
  eval->add_option("--workers", ev_workers, "worker cap");

  // infer
  auto* infer = app.add_subcommand("infer", "predict saliency maps for PNG images");
  std::string in_checkpoint, in_out = "inferred";
  int in_h = 352, in_w = 352;
  std::vector<std::string> in_images;
  infer->add_option("--checkpoint", in_checkpoint, "checkpoint file")->required();
  infer->add_option("--out", in_out, "output directory");
  infer->add_option("--test-height", in_h, "network input height");
  infer->add_option("--test-width", in_w, "network input width");
  infer->add_option("images", in_images, "input PNG files")->required();

  // ablate
  auto* ablate = app.add_subcommand("ablate",
                                    "source-only / vanilla-pl / upl arms + comparison CSV");
  CommonOpts ab_opts;
  add_common(ablate, ab_opts, /*config_required=*/true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_assets->parsed()) {
      synsal::ProceduralAssetConfig asset_cfg;
      asset_cfg.fg_height = asset_cfg.fg_width = ga_fg_dim;
      asset_cfg.bg_height = asset_cfg.bg_width = ga_bg_dim;
      synsal::cmd_gen_assets(ga_n_fg, ga_n_bg, ga_seed, ga_out, asset_cfg);
      std::cout << "assets written to " << ga_out << "\n";
    } else if (gen_dataset->parsed()) {
      const synsal::RunConfig cfg = load_config(gd_opts);
      synsal::cmd_gen_dataset(cfg);
      std::cout << "datasets written under " << cfg.data_dir.string() << "\n";
    } else if (stats->parsed()) {
      synsal::cmd_stats(st_manifest, st_out, st_bins);
      std::cout << "stats written to " << st_out << "\n";
    } else if (train->parsed()) {
      synsal::RunConfig cfg = load_config(tr_opts);
      const fs::path out = tr_opts.out.empty()
                               ? cfg.runs_dir / ("train_seed" + std::to_string(cfg.seed))
                               : fs::path(tr_opts.out);
      const synsal::PipelineResult result = synsal::cmd_train(cfg, out);
      for (const synsal::RoundMetrics& m : result.history) {
        std::cout << "round " << m.round << ": eval mae " << m.eval_mae << ", F " << m.eval_f_beta
                  << " (src " << m.source_samples << ", trg " << m.targets_selected << ")\n";
      }
      std::cout << "run artifacts in " << out.string() << "\n";
    } else if (eval->parsed()) {
      const synsal::EvalResult result =
          synsal::cmd_eval(ev_checkpoint, ev_manifest, ev_out, ev_h, ev_w, ev_workers);
      std::cout << "mae " << result.mae << ", max F " << result.f_beta << " over "
                << result.n_images << " images; reports in " << ev_out << "\n";
    } else if (infer->parsed()) {
      std::vector<fs::path> paths(in_images.begin(), in_images.end());
      const auto outputs = synsal::cmd_infer(in_checkpoint, paths, in_out, in_h, in_w);
      for (const fs::path& p : outputs) std::cout << p.string() << "\n";
    } else if (ablate->parsed()) {
      synsal::RunConfig cfg = load_config(ab_opts);
      const fs::path out = ab_opts.out.empty()
                               ? cfg.runs_dir / ("ablate_seed" + std::to_string(cfg.seed))
                               : fs::path(ab_opts.out);
      const auto rows = synsal::cmd_ablate(cfg, out);
      for (const synsal::AblationRow& row : rows) {
        std::cout << row.arm << ": final mae " << row.final_mae << ", F " << row.final_f_beta
                  << "\n";
      }
      std::cout << "comparison.csv in " << out.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
