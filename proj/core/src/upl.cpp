#include "synsal/upl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "synsal/error.hpp"
#include "synsal/parallel.hpp"
#include "synsal/rng.hpp"

namespace synsal {

void RoundSchedule::validate() const {
  if (rounds < 1) throw std::invalid_argument("RoundSchedule: rounds must be >= 1");
  if (source_props.size() != std::size_t(rounds) || target_props.size() != std::size_t(rounds)) {
    throw std::invalid_argument("RoundSchedule: proportion list lengths must equal rounds");
  }
  for (double p : source_props) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("RoundSchedule: source proportions must be in [0,1]");
    }
  }
  for (double p : target_props) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("RoundSchedule: target proportions must be in [0,1]");
    }
  }
}

VarianceMap variance_map(const std::vector<GrayMap>& preds) {
  const std::size_t n = preds.size();
  if (n < 2) throw std::invalid_argument("variance_map: need at least 2 predictions");
  const int h = preds[0].height, w = preds[0].width;
  for (const auto& p : preds) {
    if (p.height != h || p.width != w) {
      throw std::invalid_argument("variance_map: mismatched prediction dims");
    }
  }
  VarianceMap var(h, w);
  const std::size_t pixels = var.values.size();
  for (std::size_t i = 0; i < pixels; ++i) {
    double mean = 0.0;
    for (const auto& p : preds) mean += p.values[i];
    mean /= double(n);
    double sq = 0.0;
    for (const auto& p : preds) {
      const double d = p.values[i] - mean;
      sq += d * d;
    }
    var.values[i] = sq / double(n);  // population variance
  }
  return var;
}

double uncertainty_score(const VarianceMap& variance) {
  if (variance.values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : variance.values) sum += v;
  return sum / double(variance.values.size());
}

WeightMap reweight(const VarianceMap& variance, double k) {
  if (!(k > 0.0)) throw std::invalid_argument("reweight: k must be > 0");
  WeightMap weights(variance.height, variance.width);
  for (std::size_t i = 0; i < variance.values.size(); ++i) {
    weights.values[i] = std::exp(-k * variance.values[i]);
  }
  return weights;
}

namespace {

double foreground_fraction(const GrayMap& pseudo_label) {
  if (pseudo_label.values.empty()) return 0.0;
  std::size_t ones = 0;
  for (double v : pseudo_label.values) ones += v >= 0.5 ? 1 : 0;
  return double(ones) / double(pseudo_label.values.size());
}

}  // namespace

void select_targets(std::vector<PseudoLabelRecord>& records, double proportion,
                    double degen_lo, double degen_hi) {
  if (!(proportion >= 0.0 && proportion <= 1.0)) {
    throw std::invalid_argument("select_targets: proportion must be in [0,1]");
  }
  for (auto& rec : records) rec.selected = false;

  std::vector<std::size_t> candidates;
  candidates.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double frac = foreground_fraction(records[i].pseudo_label);
    if (frac < degen_lo || frac > degen_hi) continue;  // nearly all salient / non-salient
    candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
    if (records[a].score != records[b].score) return records[a].score < records[b].score;
    return records[a].target_id < records[b].target_id;
  });

  // quota over the full record list, not over non-degenerate survivors
  const auto quota = std::size_t(std::floor(proportion * double(records.size())));
  const std::size_t take = std::min(quota, candidates.size());
  for (std::size_t i = 0; i < take; ++i) records[candidates[i]].selected = true;
}

std::vector<PseudoLabelRecord> refresh_pseudo_labels(
    const SaliencyModel& predictor, const std::vector<TargetImage>& targets,
    const AugmentConfig& aug, double k, double proportion,
    const SelectionThresholds& thresholds, std::uint64_t seed, int round, int workers) {
  std::vector<PseudoLabelRecord> records(targets.size());

  parallel_for(targets.size(), workers, [&](std::size_t i) {
    const TargetImage& target = targets[i];
    try {
      std::vector<std::string> other_ids;
      other_ids.reserve(targets.size() > 0 ? targets.size() - 1 : 0);
      for (const auto& other : targets) {
        if (other.id != target.id) other_ids.push_back(other.id);
      }
      StylePool styles;
      for (const auto& other : targets) styles.add(other.id, &other.image);

      const auto specs =
          build_augmentation_set(aug, other_ids, derive_seed(seed, mix_seed(i)));

      std::vector<GrayMap> preds;
      preds.reserve(specs.size());
      preds.push_back(predictor.predict(target.image));  // the pseudo-label itself
      for (std::size_t s = 1; s < specs.size(); ++s) {
        const RgbImage augmented = apply(specs[s], target.image, styles);
        const GrayMap pred = predictor.predict(augmented);
        preds.push_back(invert(specs[s], pred, target.image.height, target.image.width));
      }

      PseudoLabelRecord rec;
      rec.target_id = target.id;
      rec.pseudo_label = preds[0];
      rec.variance = variance_map(preds);
      rec.score = uncertainty_score(rec.variance);
      rec.weights = reweight(rec.variance, k);
      rec.round = round;
      records[i] = std::move(rec);
    } catch (const std::exception& e) {
      throw Error("refresh_pseudo_labels: target '" + target.id + "': " + e.what());
    }
  });

  select_targets(records, proportion, thresholds.degen_lo, thresholds.degen_hi);
  return records;
}

}  // namespace synsal
