#include "synsal/metrics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "synsal/error.hpp"
#include "synsal/image_ops.hpp"
#include "synsal/parallel.hpp"

namespace synsal {

double mae(const GrayMap& prediction, const GrayMap& truth) {
  if (!prediction.same_dims(truth)) throw std::invalid_argument("mae: dimension mismatch");
  if (prediction.values.empty()) throw std::invalid_argument("mae: empty maps");
  double sum = 0.0;
  for (std::size_t i = 0; i < prediction.values.size(); ++i) {
    sum += std::fabs(prediction.values[i] - truth.values[i]);
  }
  return sum / double(prediction.values.size());
}

double mae(const GrayMap& prediction, const BinaryMask& truth) {
  if (prediction.height != truth.height || prediction.width != truth.width) {
    throw std::invalid_argument("mae: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < prediction.values.size(); ++i) {
    sum += std::fabs(prediction.values[i] - (truth.values[i] ? 1.0 : 0.0));
  }
  return sum / double(prediction.values.size());
}

namespace {

struct PrCounts {
  // histogram of pixels by the highest threshold index their prediction
  // passes (p >= i/255 <=> floor(p*255) >= i)
  std::array<std::int64_t, 256> pos_hist{};
  std::array<std::int64_t, 256> neg_hist{};

  void add(const GrayMap& pred, const BinaryMask& truth) {
    if (pred.height != truth.height || pred.width != truth.width) {
      throw std::invalid_argument("pr_curve: prediction/label dimension mismatch");
    }
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
      const int level = std::clamp(int(std::floor(pred.values[i] * 255.0)), 0, 255);
      if (truth.values[i]) {
        ++pos_hist[std::size_t(level)];
      } else {
        ++neg_hist[std::size_t(level)];
      }
    }
  }

  void merge(const PrCounts& o) {
    for (int t = 0; t < 256; ++t) {
      pos_hist[std::size_t(t)] += o.pos_hist[std::size_t(t)];
      neg_hist[std::size_t(t)] += o.neg_hist[std::size_t(t)];
    }
  }

  std::vector<PrPoint> curve() const {
    std::int64_t total_pos = 0;
    for (const auto c : pos_hist) total_pos += c;
    std::vector<PrPoint> points(256);
    std::int64_t tp = 0, fp = 0;  // suffix sums: counts with level >= t
    for (int t = 255; t >= 0; --t) {
      tp += pos_hist[std::size_t(t)];
      fp += neg_hist[std::size_t(t)];
      PrPoint& pt = points[std::size_t(t)];
      pt.threshold = double(t) / 255.0;
      pt.precision = (tp + fp) == 0 ? 1.0 : double(tp) / double(tp + fp);
      pt.recall = total_pos == 0 ? 0.0 : double(tp) / double(total_pos);
    }
    return points;
  }
};

}  // namespace

std::vector<PrPoint> pr_curve(const std::vector<GrayMap>& predictions,
                              const std::vector<BinaryMask>& truths) {
  if (predictions.empty() || predictions.size() != truths.size()) {
    throw std::invalid_argument("pr_curve: need equally many predictions and labels, >= 1");
  }
  bool any_positive = false;
  for (const auto& t : truths) {
    for (std::uint8_t v : t.values) {
      if (v) {
        any_positive = true;
        break;
      }
    }
    if (any_positive) break;
  }
  if (!any_positive) {
    throw std::invalid_argument("pr_curve: at least one label must contain a positive pixel");
  }
  PrCounts counts;
  for (std::size_t i = 0; i < predictions.size(); ++i) counts.add(predictions[i], truths[i]);
  return counts.curve();
}

double f_beta(double precision, double recall, double beta_sq) {
  if (!(precision >= 0.0 && precision <= 1.0 && recall >= 0.0 && recall <= 1.0)) {
    throw std::invalid_argument("f_beta: precision and recall must be in [0,1]");
  }
  const double denom = beta_sq * precision + recall;
  if (denom == 0.0) return 0.0;
  return (1.0 + beta_sq) * precision * recall / denom;
}

double max_f_beta(const std::vector<PrPoint>& curve, double beta_sq) {
  double best = 0.0;
  for (const PrPoint& pt : curve) best = std::max(best, f_beta(pt.precision, pt.recall, beta_sq));
  return best;
}

EvalResult evaluate_manifest(const SaliencyModel& model, const DatasetReader& reader,
                             int test_h, int test_w, int workers, double beta_sq) {
  const auto& records = reader.manifest().records;
  if (records.empty()) throw std::invalid_argument("evaluate_manifest: empty manifest");

  struct PerImage {
    double mae = 0.0;
    PrCounts counts;
  };
  std::vector<PerImage> partial(records.size());

  parallel_for(records.size(), workers, [&](std::size_t i) {
    const SynthRecord& rec = records[i];
    try {
      const RgbImage image = reader.load_image(rec);
      const BinaryMask label = reader.load_label(rec);
      const RgbImage resized = resize_bilinear(image, test_h, test_w);
      GrayMap pred = model.predict(resized);
      if (pred.height != label.height || pred.width != label.width) {
        pred = resize_bilinear(pred, label.height, label.width);
      }
      partial[i].mae = mae(pred, label);
      partial[i].counts.add(pred, label);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw Error("evaluate_manifest: record '" + rec.id + "': " + e.what());
    }
  });

  EvalResult result;
  result.n_images = int(records.size());
  PrCounts total;
  for (const PerImage& p : partial) {
    result.mae += p.mae;
    total.merge(p.counts);
  }
  result.mae /= double(records.size());
  result.pr = total.curve();
  result.f_beta = max_f_beta(result.pr, beta_sq);
  return result;
}

}  // namespace synsal
