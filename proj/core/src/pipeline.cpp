#include "synsal/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "synsal/checkpoint.hpp"
#include "synsal/error.hpp"
#include "synsal/image_ops.hpp"
#include "synsal/parallel.hpp"
#include "synsal/png_io.hpp"
#include "synsal/rng.hpp"

namespace synsal {

namespace {

constexpr std::uint64_t kInitStream = 0x696e6974ULL;
constexpr std::uint64_t kSourceSubsetStream = 0x73756273ULL;
constexpr std::uint64_t kRefreshStream = 0x72656672ULL;

GrayMap resize_label(const BinaryMask& mask, int h, int w) {
  const GrayMap gray = mask.to_gray();
  if (gray.height == h && gray.width == w) return gray;
  return resize_bilinear(gray, h, w);
}

std::vector<LabeledImage> load_source_pool(const DatasetReader& reader, int h, int w,
                                           int workers) {
  const auto& records = reader.manifest().records;
  std::vector<LabeledImage> pool(records.size());
  parallel_for(records.size(), workers, [&](std::size_t i) {
    const SynthRecord& rec = records[i];
    RgbImage image = reader.load_image(rec);
    if (image.height != h || image.width != w) image = resize_bilinear(image, h, w);
    pool[i] = LabeledImage{rec.id, std::move(image), resize_label(reader.load_label(rec), h, w), {}};
  });
  return pool;
}

std::vector<TargetImage> load_target_pool(const DatasetReader& reader, int h, int w,
                                          int workers) {
  const auto& records = reader.manifest().records;
  std::vector<TargetImage> pool(records.size());
  parallel_for(records.size(), workers, [&](std::size_t i) {
    RgbImage image = reader.load_image(records[i]);
    if (image.height != h || image.width != w) image = resize_bilinear(image, h, w);
    pool[i] = TargetImage{records[i].id, std::move(image)};
  });
  return pool;
}

bool selection_disabled(const TrainConfig& cfg, double proportion) {
  return !cfg.use_ppr && cfg.selection.degen_lo <= 0.0 && cfg.selection.degen_hi >= 1.0 &&
         proportion >= 1.0;
}

// Predict-only refresh for the uniform-weight / select-all configuration
// (the vanilla pseudo-labeling arm): no variance machinery is consumed
// downstream, so none is computed.
std::vector<PseudoLabelRecord> plain_refresh(const SaliencyModel& model,
                                             const std::vector<TargetImage>& targets, int round,
                                             int workers) {
  std::vector<PseudoLabelRecord> records(targets.size());
  parallel_for(targets.size(), workers, [&](std::size_t i) {
    PseudoLabelRecord rec;
    rec.target_id = targets[i].id;
    rec.pseudo_label = model.predict(targets[i].image);
    rec.variance = GrayMap(rec.pseudo_label.height, rec.pseudo_label.width, 0.0);
    rec.score = 0.0;
    rec.weights = GrayMap(rec.pseudo_label.height, rec.pseudo_label.width, 1.0);
    rec.selected = true;
    rec.round = round;
    records[i] = std::move(rec);
  });
  return records;
}

void persist_pseudo_audit(const std::filesystem::path& run_dir, int round,
                          const std::vector<PseudoLabelRecord>& records) {
  namespace fs = std::filesystem;
  const fs::path dir = run_dir / "rounds" / std::to_string(round) / "pseudo";
  fs::create_directories(dir);
  for (const PseudoLabelRecord& rec : records) {
    write_file(dir / (rec.target_id + "_pseudo.png"), encode_png(rec.pseudo_label));
    write_file(dir / (rec.target_id + "_variance.png"), encode_png(rec.variance));
    write_file(dir / (rec.target_id + "_weight.png"), encode_png(rec.weights));
    nlohmann::json j{{"target_id", rec.target_id},
                     {"score", rec.score},
                     {"selected", rec.selected},
                     {"round", rec.round}};
    write_file(dir / (rec.target_id + ".json"), j.dump() + "\n");
  }
}

std::string metrics_csv(const std::vector<RoundMetrics>& history) {
  std::ostringstream out;
  out << "round,split,mae,f_beta,source_samples,targets_selected\n";
  out.setf(std::ios::fmtflags(0), std::ios::floatfield);
  out.precision(10);
  for (const RoundMetrics& m : history) {
    out << m.round << ",target_eval," << m.eval_mae << "," << m.eval_f_beta << ","
        << m.source_samples << "," << m.targets_selected << "\n";
  }
  return out.str();
}

}  // namespace

PipelineResult run_pipeline(const TrainConfig& cfg, const DatasetReader& source,
                            const DatasetReader& target_train, const DatasetReader& target_eval,
                            const std::filesystem::path& run_dir) {
  namespace fs = std::filesystem;
  cfg.validate();
  const bool persist = !run_dir.empty();
  if (persist) fs::create_directories(run_dir);

  const int h = cfg.train_h, w = cfg.train_w;
  const std::vector<LabeledImage> source_pool = load_source_pool(source, h, w, cfg.workers);
  const std::vector<TargetImage> target_pool = load_target_pool(target_train, h, w, cfg.workers);

  PipelineResult result;
  result.model = Predictor<float>::init(derive_seed(cfg.seed, kInitStream));
  std::vector<PseudoLabelRecord> pseudo;  // empty for round 1

  for (int round = 0; round < cfg.schedule.rounds; ++round) {
    // source subset: uniform, without replacement, seeded per round
    const auto subset_size =
        std::size_t(std::floor(cfg.schedule.source_props[std::size_t(round)] *
                               double(source_pool.size())));
    std::vector<std::size_t> order(source_pool.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    Rng subset_rng(derive_seed(cfg.seed, kSourceSubsetStream + std::uint64_t(round)));
    subset_rng.shuffle(order);
    std::vector<LabeledImage> source_subset;
    source_subset.reserve(subset_size);
    for (std::size_t i = 0; i < subset_size; ++i) source_subset.push_back(source_pool[order[i]]);

    // selected pseudo-labeled targets
    std::vector<LabeledImage> target_subset;
    for (const PseudoLabelRecord& rec : pseudo) {
      if (!rec.selected) continue;
      const auto it = std::find_if(target_pool.begin(), target_pool.end(),
                                   [&](const TargetImage& t) { return t.id == rec.target_id; });
      if (it == target_pool.end()) throw Error("pipeline: unknown target id " + rec.target_id);
      GrayMap weights = cfg.use_ppr ? rec.weights
                                    : GrayMap(rec.weights.height, rec.weights.width, 1.0);
      target_subset.push_back(
          LabeledImage{rec.target_id, it->image, rec.pseudo_label, std::move(weights)});
    }

    result.model = train_round(result.model, source_subset, target_subset, cfg, round);

    const EvalResult eval = evaluate_manifest(result.model, target_eval, cfg.test_h, cfg.test_w,
                                              cfg.workers);
    result.history.push_back(RoundMetrics{round + 1, int(source_subset.size()),
                                          int(target_subset.size()), eval.mae, eval.f_beta});

    if (persist) {
      const fs::path round_dir = run_dir / "rounds" / std::to_string(round + 1);
      fs::create_directories(round_dir);
      save_checkpoint(round_dir / "checkpoint.bin", result.model);
      write_file(run_dir / "metrics.csv", metrics_csv(result.history));
    }

    // refresh pseudo-labels for the next round against the frozen model
    if (round + 1 < cfg.schedule.rounds) {
      const double proportion = cfg.schedule.target_props[std::size_t(round + 1)];
      if (proportion <= 0.0 && !selection_disabled(cfg, proportion)) {
        pseudo.clear();
      } else if (selection_disabled(cfg, proportion)) {
        pseudo = plain_refresh(result.model, target_pool, round + 2, cfg.workers);
      } else {
        pseudo = refresh_pseudo_labels(result.model, target_pool, cfg.augment, cfg.k,
                                       proportion, cfg.selection,
                                       derive_seed(cfg.seed, kRefreshStream + std::uint64_t(round)),
                                       round + 2, cfg.workers);
        if (!cfg.use_ppr) {
          for (auto& rec : pseudo) {
            rec.weights = GrayMap(rec.weights.height, rec.weights.width, 1.0);
          }
        }
      }
      if (persist && !pseudo.empty()) {
        persist_pseudo_audit(run_dir, round + 2, pseudo);
      }
    }
  }

  if (persist) {
    save_checkpoint(run_dir / "checkpoint.bin", result.model);
    write_file(run_dir / "metrics.csv", metrics_csv(result.history));
  }
  return result;
}

}  // namespace synsal
