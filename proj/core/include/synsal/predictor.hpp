#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synsal/model.hpp"
#include "synsal/types.hpp"

namespace synsal {

/// One parameter group of the predictor (weights + bias of a convolution).
struct ConvShape {
  std::string name;
  int out_ch = 0;
  int in_ch = 0;
  int kh = 0;
  int kw = 0;
  std::size_t weight_offset = 0;
  std::size_t bias_offset = 0;

  std::size_t weight_count() const {
    return std::size_t(out_ch) * in_ch * kh * kw;
  }
  std::size_t bias_count() const { return std::size_t(out_ch); }
};

/// Fixed five-layer fully-convolutional architecture:
///   conv3x3(3->16) / relu
///   conv3x3(16->16) / relu
///   2x average-pool, conv3x3(16->32) / relu, 2x bilinear upsample
///   conv3x3(32->16) / relu
///   conv1x1(16->1) / logistic
/// The layout maps every layer into one flat parameter vector.
struct PredictorLayout {
  static const std::vector<ConvShape>& layers();
  static std::size_t param_count();
};

/// Forward activation cache for one input; owned per worker so the training
/// loop allocates nothing per sample. Contents are an implementation detail
/// of Predictor<T>.
template <typename T>
struct PredictorWorkspace {
  int h = 0, w = 0;
  std::vector<T> input_pad;
  std::vector<T> act1, act1_pad;
  std::vector<T> act2;
  std::vector<T> pooled, pooled_pad;
  std::vector<T> act3;
  std::vector<T> up, up_pad;
  std::vector<T> act4;
  std::vector<T> prob;
  // backward scratch
  std::vector<T> grad_a, grad_b, grad_pad, flipped;

  void ensure(int height, int width);
};

/// The compact trainable saliency predictor. T is the compute scalar:
/// float for the training pipeline, double for gradient verification.
template <typename T>
class Predictor final : public SaliencyModel {
 public:
  explicit Predictor(std::vector<T> params);

  /// Uniform init in [-a, a] per layer with a = sqrt(6 / fan_in).
  static Predictor init(std::uint64_t seed);
  static Predictor zeros() { return Predictor(std::vector<T>(PredictorLayout::param_count(), T(0))); }

  /// Scale channels to [0,1], run the network, return the soft map at the
  /// input's dims. Output is nudged into the open interval (0,1) at 1e-12.
  /// Thread-safe (allocates a local workspace).
  GrayMap predict(const RgbImage& image) const override;

  /// Training-path forward on prepared input planes (3 x h x w, values in
  /// [0,1]); leaves all activations in `ws` with the probabilities in
  /// ws.prob.
  void forward(const T* input_planes, int h, int w, PredictorWorkspace<T>& ws) const;

  /// Accumulate (+=) the analytic parameter gradient into `grad` given
  /// dL/dprob for the sample whose activations are in `ws`. Throws
  /// NumericalFailure naming the layer if a non-finite gradient appears.
  void backward(PredictorWorkspace<T>& ws, const T* dprob, std::vector<T>& grad) const;

  const std::vector<T>& params() const { return params_; }
  std::vector<T>& params() { return params_; }

  /// FNV-1a over the raw parameter bytes; used for determinism checks.
  std::uint64_t checksum() const;

 private:
  std::vector<T> params_;
};

/// Scale an RGB image into 3 planar channels in [0,1].
template <typename T>
void image_to_planes(const RgbImage& image, std::vector<T>& planes);

extern template class Predictor<float>;
extern template class Predictor<double>;
extern template struct PredictorWorkspace<float>;
extern template struct PredictorWorkspace<double>;
extern template void image_to_planes<float>(const RgbImage&, std::vector<float>&);
extern template void image_to_planes<double>(const RgbImage&, std::vector<double>&);

}  // namespace synsal
