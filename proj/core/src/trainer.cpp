#include "synsal/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "synsal/parallel.hpp"
#include "synsal/rng.hpp"

namespace synsal {

namespace {

constexpr double kLogClamp = 1e-7;
constexpr std::uint64_t kRoundStream = 0x726f756eULL;

double pixel_bce(double y, double p) {
  const double pc = std::clamp(p, kLogClamp, 1.0 - kLogClamp);
  return -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
}

// d(pixel_bce)/dp; zero where the clamp is active.
double pixel_bce_grad(double y, double p) {
  if (p < kLogClamp || p > 1.0 - kLogClamp) return 0.0;
  return (p - y) / (p * (1.0 - p));
}

}  // namespace

double weighted_bce(const GrayMap& y, const GrayMap& p, const GrayMap& weights) {
  if (!y.same_dims(p) || (!weights.values.empty() && !y.same_dims(weights))) {
    throw std::invalid_argument("weighted_bce: dimension mismatch");
  }
  if (y.values.empty()) throw std::invalid_argument("weighted_bce: empty maps");
  double sum = 0.0;
  for (std::size_t i = 0; i < y.values.size(); ++i) {
    const double w = weights.values.empty() ? 1.0 : weights.values[i];
    sum += w * pixel_bce(y.values[i], p.values[i]);
  }
  return sum / double(y.values.size());
}

LossReport round_loss(const SaliencyModel& model, std::span<const LabeledImage> source_batch,
                      std::span<const LabeledImage> target_batch) {
  if (source_batch.empty() && target_batch.empty()) {
    throw std::invalid_argument("round_loss: both batches empty");
  }
  LossReport report;
  report.source_count = int(source_batch.size());
  report.target_count = int(target_batch.size());
  for (const LabeledImage& sample : source_batch) {
    report.source += weighted_bce(sample.label, model.predict(sample.image), {});
  }
  if (!source_batch.empty()) report.source /= double(source_batch.size());
  for (const LabeledImage& sample : target_batch) {
    report.target += weighted_bce(sample.label, model.predict(sample.image), sample.weights);
  }
  if (!target_batch.empty()) report.target /= double(target_batch.size());
  report.total = report.source + report.target;
  return report;
}

double one_cycle_lr(int step, int total_steps, double lr_max) {
  if (total_steps < 1) throw std::invalid_argument("one_cycle_lr: total_steps must be >= 1");
  if (step < 0 || step >= total_steps) {
    throw std::invalid_argument("one_cycle_lr: step out of range");
  }
  const double lr_lo = lr_max / 25.0;
  const double lr_end = lr_max / 2500.0;
  const double warm = 0.3 * double(total_steps);
  if (double(step) <= warm) {
    return lr_lo + (lr_max - lr_lo) * (double(step) / warm);
  }
  const double denom = double(total_steps - 1) - warm;
  return lr_max + (lr_end - lr_max) * (double(step) - warm) / denom;
}

void TrainConfig::validate() const {
  schedule.validate();
  if (batch_size < 1) throw std::invalid_argument("TrainConfig.batch_size must be >= 1");
  if (epochs_per_round < 1) {
    throw std::invalid_argument("TrainConfig.epochs_per_round must be >= 1");
  }
  if (train_h < 1 || train_w < 1) {
    throw std::invalid_argument("TrainConfig.train dims must be >= 1");
  }
  if (test_h < 1 || test_w < 1) throw std::invalid_argument("TrainConfig.test dims must be >= 1");
  if (!(lr_max >= 0.0)) throw std::invalid_argument("TrainConfig.lr_max must be >= 0");
  if (!(momentum >= 0.0 && momentum < 1.0)) {
    throw std::invalid_argument("TrainConfig.momentum must be in [0,1)");
  }
  if (!(k > 0.0)) throw std::invalid_argument("TrainConfig.k must be > 0");
  if (!(selection.degen_lo >= 0.0 && selection.degen_hi <= 1.0 &&
        selection.degen_lo <= selection.degen_hi)) {
    throw std::invalid_argument("TrainConfig.selection thresholds must satisfy 0 <= lo <= hi <= 1");
  }
}

namespace {

// Evenly interleave ns source slots among ns+nt total slots; slot k is a
// source slot iff the count of source slots in [0,k] advances.
std::vector<std::uint8_t> proportional_slots(std::size_t ns, std::size_t nt) {
  const std::size_t n = ns + nt;
  std::vector<std::uint8_t> is_source(n, 0);
  std::size_t taken = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t want = (k + 1) * ns / n;
    if (want > taken) {
      is_source[k] = 1;
      ++taken;
    }
  }
  return is_source;
}

struct PreparedSample {
  const LabeledImage* sample = nullptr;
  std::vector<float> planes;  // 3 x h x w in [0,1]
  bool is_source = false;
};

}  // namespace

Predictor<float> train_round(const Predictor<float>& prev,
                             std::span<const LabeledImage> source_pool,
                             std::span<const LabeledImage> target_pool, const TrainConfig& cfg,
                             int round_index) {
  cfg.validate();
  const int h = cfg.train_h, w = cfg.train_w;
  const std::size_t hw = std::size_t(h) * w;
  for (const auto& pool : {source_pool, target_pool}) {
    for (const LabeledImage& sample : pool) {
      if (sample.image.height != h || sample.image.width != w ||
          sample.label.height != h || sample.label.width != w) {
        throw std::invalid_argument("train_round: sample '" + sample.id +
                                    "' does not match the configured train dims");
      }
    }
  }
  if (source_pool.empty() && target_pool.empty()) {
    throw std::invalid_argument("train_round: both pools empty");
  }

  Predictor<float> model = prev;
  const std::size_t n_params = model.params().size();
  std::vector<float> velocity(n_params, 0.0f);

  // Pools converted to planes once per round.
  std::vector<PreparedSample> prepared(source_pool.size() + target_pool.size());
  for (std::size_t i = 0; i < source_pool.size(); ++i) {
    prepared[i].sample = &source_pool[i];
    prepared[i].is_source = true;
    image_to_planes(source_pool[i].image, prepared[i].planes);
  }
  for (std::size_t i = 0; i < target_pool.size(); ++i) {
    auto& slot = prepared[source_pool.size() + i];
    slot.sample = &target_pool[i];
    slot.is_source = false;
    image_to_planes(target_pool[i].image, slot.planes);
  }

  const std::size_t ns = source_pool.size(), nt = target_pool.size();
  const std::size_t per_epoch = ns + nt;
  const std::size_t batches_per_epoch = (per_epoch + std::size_t(cfg.batch_size) - 1) /
                                        std::size_t(cfg.batch_size);
  const int total_steps = int(batches_per_epoch) * cfg.epochs_per_round;
  const auto slots = proportional_slots(ns, nt);

  const int workers = resolve_workers(cfg.workers);
  std::vector<PredictorWorkspace<float>> workspaces(std::size_t(workers));
  std::vector<std::vector<float>> sample_grads(std::size_t(cfg.batch_size),
                                               std::vector<float>(n_params, 0.0f));
  std::vector<float> dprob(std::size_t(cfg.batch_size) * hw);
  std::vector<float> batch_grad(n_params);

  Rng epoch_rng(derive_seed(cfg.seed, kRoundStream + std::uint64_t(round_index)));
  int step = 0;

  for (int epoch = 0; epoch < cfg.epochs_per_round; ++epoch) {
    std::vector<std::size_t> src_order(ns), trg_order(nt);
    for (std::size_t i = 0; i < ns; ++i) src_order[i] = i;
    for (std::size_t i = 0; i < nt; ++i) trg_order[i] = ns + i;
    epoch_rng.shuffle(src_order);
    epoch_rng.shuffle(trg_order);

    // merge the shuffled pools into the proportional slot pattern
    std::vector<std::size_t> sequence(per_epoch);
    std::size_t si = 0, ti = 0;
    for (std::size_t k = 0; k < per_epoch; ++k) {
      sequence[k] = slots[k] ? src_order[si++] : trg_order[ti++];
    }

    for (std::size_t begin = 0; begin < per_epoch; begin += std::size_t(cfg.batch_size)) {
      const std::size_t end = std::min(per_epoch, begin + std::size_t(cfg.batch_size));
      const std::size_t batch_n = end - begin;
      std::size_t batch_ns = 0;
      for (std::size_t i = begin; i < end; ++i) batch_ns += prepared[sequence[i]].is_source;
      const std::size_t batch_nt = batch_n - batch_ns;

      // per-sample forward/backward, gradients to private slots
      parallel_for_slots(batch_n, workers, [&](std::size_t worker, std::size_t bi) {
        PredictorWorkspace<float>& ws = workspaces[worker];
        const PreparedSample& ps = prepared[sequence[begin + bi]];
        model.forward(ps.planes.data(), h, w, ws);

        const double domain_norm =
            ps.is_source ? double(batch_ns) : double(batch_nt);
        const double scale = 1.0 / (double(hw) * domain_norm);
        float* dp = dprob.data() + bi * hw;
        const GrayMap& label = ps.sample->label;
        const GrayMap& weights = ps.sample->weights;
        for (std::size_t i = 0; i < hw; ++i) {
          const double weight = weights.values.empty() ? 1.0 : weights.values[i];
          dp[i] = float(weight * pixel_bce_grad(label.values[i], double(ws.prob[i])) * scale);
        }
        std::fill(sample_grads[bi].begin(), sample_grads[bi].end(), 0.0f);
        model.backward(ws, dp, sample_grads[bi]);
      });

      // deterministic reduction in sample order, then the SGD step
      std::fill(batch_grad.begin(), batch_grad.end(), 0.0f);
      for (std::size_t bi = 0; bi < batch_n; ++bi) {
        const std::vector<float>& g = sample_grads[bi];
        for (std::size_t i = 0; i < n_params; ++i) batch_grad[i] += g[i];
      }
      const float lr = float(one_cycle_lr(step, total_steps, cfg.lr_max));
      const float mu = float(cfg.momentum);
      std::vector<float>& params = model.params();
      for (std::size_t i = 0; i < n_params; ++i) {
        velocity[i] = mu * velocity[i] + batch_grad[i];
        params[i] -= lr * velocity[i];
      }
      ++step;
    }
  }
  return model;
}

}  // namespace synsal
