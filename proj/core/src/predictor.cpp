#include "synsal/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conv_kernels.hpp"
#include "synsal/error.hpp"
#include "synsal/rng.hpp"

namespace synsal {

namespace {

std::vector<ConvShape> build_layout() {
  std::vector<ConvShape> layers{
      {"conv1", 16, 3, 3, 3, 0, 0},
      {"conv2", 16, 16, 3, 3, 0, 0},
      {"conv3", 32, 16, 3, 3, 0, 0},
      {"conv4", 16, 32, 3, 3, 0, 0},
      {"head", 1, 16, 1, 1, 0, 0},
  };
  std::size_t offset = 0;
  for (auto& layer : layers) {
    layer.weight_offset = offset;
    offset += layer.weight_count();
    layer.bias_offset = offset;
    offset += layer.bias_count();
  }
  return layers;
}

template <typename T>
void check_finite(const T* data, std::size_t n, const std::string& layer) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(double(data[i]))) {
      throw NumericalFailure(layer, "non-finite gradient");
    }
  }
}

}  // namespace

const std::vector<ConvShape>& PredictorLayout::layers() {
  static const std::vector<ConvShape> layout = build_layout();
  return layout;
}

std::size_t PredictorLayout::param_count() {
  const auto& layout = layers();
  const auto& last = layout.back();
  return last.bias_offset + last.bias_count();
}

template <typename T>
void PredictorWorkspace<T>::ensure(int height, int width) {
  if (h == height && w == width) return;
  h = height;
  w = width;
  const std::size_t hw = std::size_t(h) * w;
  const std::size_t pad_hw = std::size_t(h + 2) * (w + 2);
  const int ph = (h + 1) / 2, pw = (w + 1) / 2;
  const std::size_t pool_hw = std::size_t(ph) * pw;
  const std::size_t pool_pad_hw = std::size_t(ph + 2) * (pw + 2);
  input_pad.assign(3 * pad_hw, T(0));
  act1.assign(16 * hw, T(0));
  act1_pad.assign(16 * pad_hw, T(0));
  act2.assign(16 * hw, T(0));
  pooled.assign(16 * pool_hw, T(0));
  pooled_pad.assign(16 * pool_pad_hw, T(0));
  act3.assign(32 * pool_hw, T(0));
  up.assign(32 * hw, T(0));
  up_pad.assign(32 * pad_hw, T(0));
  act4.assign(16 * hw, T(0));
  prob.assign(hw, T(0));
  grad_a.assign(32 * std::max(hw, pool_hw), T(0));
  grad_b.assign(32 * std::max(hw, pool_hw), T(0));
  grad_pad.assign(32 * std::max(pad_hw, pool_pad_hw), T(0));
  flipped.assign(32 * 16 * 9, T(0));
}

template <typename T>
void image_to_planes(const RgbImage& image, std::vector<T>& planes) {
  const std::size_t hw = std::size_t(image.height) * image.width;
  planes.resize(3 * hw);
  for (int c = 0; c < 3; ++c) {
    T* plane = planes.data() + std::size_t(c) * hw;
    for (std::size_t i = 0; i < hw; ++i) {
      plane[i] = T(image.pixels[i * 3 + std::size_t(c)]) / T(255);
    }
  }
}

template <typename T>
Predictor<T>::Predictor(std::vector<T> params) : params_(std::move(params)) {
  if (params_.size() != PredictorLayout::param_count()) {
    throw std::invalid_argument("Predictor: parameter vector has wrong length");
  }
  for (const T v : params_) {
    if (!std::isfinite(double(v))) {
      throw std::invalid_argument("Predictor: parameters must be finite");
    }
  }
}

template <typename T>
Predictor<T> Predictor<T>::init(std::uint64_t seed) {
  std::vector<T> params(PredictorLayout::param_count());
  const auto& layers = PredictorLayout::layers();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const ConvShape& layer = layers[li];
    const double fan_in = double(layer.in_ch) * layer.kh * layer.kw;
    const double a = std::sqrt(6.0 / fan_in);
    Rng rng(derive_seed(seed, li));
    for (std::size_t i = 0; i < layer.weight_count(); ++i) {
      params[layer.weight_offset + i] = T(rng.uniform(-a, a));
    }
    for (std::size_t i = 0; i < layer.bias_count(); ++i) {
      params[layer.bias_offset + i] = T(rng.uniform(-a, a));
    }
  }
  return Predictor(std::move(params));
}

template <typename T>
void Predictor<T>::forward(const T* input_planes, int h, int w,
                           PredictorWorkspace<T>& ws) const {
  using namespace kernels;
  if (h < 1 || w < 1) throw std::invalid_argument("Predictor::forward: dims must be >= 1");
  ws.ensure(h, w);
  const auto& layers = PredictorLayout::layers();
  const T* p = params_.data();
  const int ph = (h + 1) / 2, pw = (w + 1) / 2;

  pad1(input_planes, 3, h, w, ws.input_pad.data());
  conv3x3_forward(ws.input_pad.data(), 3, h, w, p + layers[0].weight_offset,
                  p + layers[0].bias_offset, ws.act1.data(), 16, /*relu=*/true);

  pad1(ws.act1.data(), 16, h, w, ws.act1_pad.data());
  conv3x3_forward(ws.act1_pad.data(), 16, h, w, p + layers[1].weight_offset,
                  p + layers[1].bias_offset, ws.act2.data(), 16, /*relu=*/true);

  avgpool2_forward(ws.act2.data(), 16, h, w, ws.pooled.data());
  pad1(ws.pooled.data(), 16, ph, pw, ws.pooled_pad.data());
  conv3x3_forward(ws.pooled_pad.data(), 16, ph, pw, p + layers[2].weight_offset,
                  p + layers[2].bias_offset, ws.act3.data(), 32, /*relu=*/true);

  upsample_bilinear_forward(ws.act3.data(), 32, ph, pw, ws.up.data(), h, w);
  pad1(ws.up.data(), 32, h, w, ws.up_pad.data());
  conv3x3_forward(ws.up_pad.data(), 32, h, w, p + layers[3].weight_offset,
                  p + layers[3].bias_offset, ws.act4.data(), 16, /*relu=*/true);

  // 1x1 head + logistic
  const T* head_w = p + layers[4].weight_offset;
  const T head_b = p[layers[4].bias_offset];
  const std::size_t hw = std::size_t(h) * w;
  std::fill(ws.prob.begin(), ws.prob.end(), head_b);
  for (int ci = 0; ci < 16; ++ci) {
    const T wv = head_w[ci];
    const T* a = ws.act4.data() + std::size_t(ci) * hw;
    for (std::size_t i = 0; i < hw; ++i) ws.prob[i] += wv * a[i];
  }
  for (std::size_t i = 0; i < hw; ++i) {
    ws.prob[i] = T(1) / (T(1) + std::exp(-ws.prob[i]));
  }
}

template <typename T>
GrayMap Predictor<T>::predict(const RgbImage& image) const {
  validate(image);
  std::vector<T> planes;
  image_to_planes(image, planes);
  PredictorWorkspace<T> ws;
  forward(planes.data(), image.height, image.width, ws);
  GrayMap out(image.height, image.width);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = std::clamp(double(ws.prob[i]), 1e-12, 1.0 - 1e-12);
  }
  return out;
}

template <typename T>
void Predictor<T>::backward(PredictorWorkspace<T>& ws, const T* dprob,
                            std::vector<T>& grad) const {
  using namespace kernels;
  const int h = ws.h, w = ws.w;
  const int ph = (h + 1) / 2, pw = (w + 1) / 2;
  const std::size_t hw = std::size_t(h) * w;
  const std::size_t pool_hw = std::size_t(ph) * pw;
  const auto& layers = PredictorLayout::layers();
  const T* p = params_.data();
  if (grad.size() != params_.size()) {
    throw std::invalid_argument("Predictor::backward: gradient vector has wrong length");
  }

  // logistic: dz = dprob * p * (1 - p)
  T* dz = ws.grad_a.data();  // 1 x h x w
  for (std::size_t i = 0; i < hw; ++i) {
    const T pv = ws.prob[i];
    dz[i] = dprob[i] * pv * (T(1) - pv);
  }

  // head (1x1): weight/bias grads and da4
  {
    const ConvShape& head = layers[4];
    T* dw = grad.data() + head.weight_offset;
    T* db = grad.data() + head.bias_offset;
    T bias_sum = T(0);
    for (std::size_t i = 0; i < hw; ++i) bias_sum += dz[i];
    db[0] += bias_sum;
    T* da4 = ws.grad_b.data();  // 16 x h x w
    const T* head_w = p + head.weight_offset;
    for (int ci = 0; ci < 16; ++ci) {
      const T* a = ws.act4.data() + std::size_t(ci) * hw;
      T sum = T(0);
      for (std::size_t i = 0; i < hw; ++i) sum += dz[i] * a[i];
      dw[ci] += sum;
      const T wv = head_w[ci];
      T* d = da4 + std::size_t(ci) * hw;
      for (std::size_t i = 0; i < hw; ++i) d[i] = wv * dz[i];
    }
    check_finite(dw, 16, head.name);
  }

  // conv4 (32 -> 16) with relu on act4
  {
    const ConvShape& layer = layers[3];
    T* dz4 = ws.grad_b.data();  // reuse: da4 -> dz4 in place via relu mask
    for (std::size_t i = 0; i < 16 * hw; ++i) {
      if (ws.act4[i] <= T(0)) dz4[i] = T(0);
    }
    conv3x3_grad_weights(ws.up_pad.data(), 32, h, w, dz4, 16, grad.data() + layer.weight_offset,
                         grad.data() + layer.bias_offset);
    check_finite(grad.data() + layer.weight_offset, layer.weight_count(), layer.name);
    // input gradient -> d(up)
    pad1(dz4, 16, h, w, ws.grad_pad.data());
    conv3x3_flip_transpose_weights(p + layer.weight_offset, 16, 32, ws.flipped.data());
    conv3x3_forward(ws.grad_pad.data(), 16, h, w, ws.flipped.data(), nullptr, ws.grad_a.data(),
                    32, /*relu=*/false);
  }

  // upsample backward: d(up) 32 x h x w -> d(act3) 32 x ph x pw
  upsample_bilinear_backward(ws.grad_a.data(), 32, h, w, ws.grad_b.data(), ph, pw);

  // conv3 (16 -> 32) with relu on act3
  {
    const ConvShape& layer = layers[2];
    T* dz3 = ws.grad_b.data();
    for (std::size_t i = 0; i < 32 * pool_hw; ++i) {
      if (ws.act3[i] <= T(0)) dz3[i] = T(0);
    }
    conv3x3_grad_weights(ws.pooled_pad.data(), 16, ph, pw, dz3, 32,
                         grad.data() + layer.weight_offset, grad.data() + layer.bias_offset);
    check_finite(grad.data() + layer.weight_offset, layer.weight_count(), layer.name);
    pad1(dz3, 32, ph, pw, ws.grad_pad.data());
    conv3x3_flip_transpose_weights(p + layer.weight_offset, 32, 16, ws.flipped.data());
    conv3x3_forward(ws.grad_pad.data(), 32, ph, pw, ws.flipped.data(), nullptr,
                    ws.grad_a.data(), 16, /*relu=*/false);
  }

  // pool backward: d(pooled) 16 x ph x pw -> d(act2) 16 x h x w
  avgpool2_backward(ws.grad_a.data(), 16, h, w, ws.grad_b.data());

  // conv2 (16 -> 16) with relu on act2
  {
    const ConvShape& layer = layers[1];
    T* dz2 = ws.grad_b.data();
    for (std::size_t i = 0; i < 16 * hw; ++i) {
      if (ws.act2[i] <= T(0)) dz2[i] = T(0);
    }
    conv3x3_grad_weights(ws.act1_pad.data(), 16, h, w, dz2, 16,
                         grad.data() + layer.weight_offset, grad.data() + layer.bias_offset);
    check_finite(grad.data() + layer.weight_offset, layer.weight_count(), layer.name);
    pad1(dz2, 16, h, w, ws.grad_pad.data());
    conv3x3_flip_transpose_weights(p + layer.weight_offset, 16, 16, ws.flipped.data());
    conv3x3_forward(ws.grad_pad.data(), 16, h, w, ws.flipped.data(), nullptr, ws.grad_a.data(),
                    16, /*relu=*/false);
  }

  // conv1 (3 -> 16) with relu on act1; no input gradient needed below
  {
    const ConvShape& layer = layers[0];
    T* dz1 = ws.grad_a.data();
    for (std::size_t i = 0; i < 16 * hw; ++i) {
      if (ws.act1[i] <= T(0)) dz1[i] = T(0);
    }
    conv3x3_grad_weights(ws.input_pad.data(), 3, h, w, dz1, 16,
                         grad.data() + layer.weight_offset, grad.data() + layer.bias_offset);
    check_finite(grad.data() + layer.weight_offset,
                 layer.weight_count() + layer.bias_count(), layer.name);
  }
}

template <typename T>
std::uint64_t Predictor<T>::checksum() const {
  const auto* bytes = reinterpret_cast<const unsigned char*>(params_.data());
  const std::size_t n = params_.size() * sizeof(T);
  std::uint64_t hash = 1469598103934665603ULL;
  for (std::size_t i = 0; i < n; ++i) {
    hash ^= bytes[i];
    hash *= 1099511628211ULL;
  }
  return hash;
}

template class Predictor<float>;
template class Predictor<double>;
template struct PredictorWorkspace<float>;
template struct PredictorWorkspace<double>;
template void image_to_planes<float>(const RgbImage&, std::vector<float>&);
template void image_to_planes<double>(const RgbImage&, std::vector<double>&);

}  // namespace synsal
