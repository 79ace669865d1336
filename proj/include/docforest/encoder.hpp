#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "docforest/matrix.hpp"
#include "docforest/random.hpp"

namespace docforest {

// Pre-normalization outputs below this norm map to the basis vector e_1.
inline constexpr double kDegenerateNorm = 1e-12;

// Two-layer role encoder: x -> tanh(W1 x + b1) -> W2 h + b2 -> unit length.
struct Encoder {
  Matrix w1;  // H x D
  std::vector<double> b1;
  Matrix w2;  // E x H
  std::vector<double> b2;

  Encoder() = default;
  Encoder(std::size_t in_dim, std::size_t hidden, std::size_t out_dim)
      : w1(hidden, in_dim), b1(hidden, 0.0), w2(out_dim, hidden), b2(out_dim, 0.0) {}

  std::size_t in_dim() const { return w1.cols(); }
  std::size_t hidden_dim() const { return w1.rows(); }
  std::size_t out_dim() const { return w2.rows(); }

  // Weights uniform in +-1/sqrt(fan_in); biases zero.
  void initialize(Rng& rng) {
    auto fill = [&](Matrix& w) {
      double bound = 1.0 / std::sqrt(static_cast<double>(w.cols()));
      for (double& v : w.data()) v = rng.uniform(-bound, bound);
    };
    fill(w1);
    fill(w2);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(b2.begin(), b2.end(), 0.0);
  }

  // Flat views used by the optimizer; order is w1, b1, w2, b2.
  std::vector<std::span<double>> parameters() { return {w1.data(), b1, w2.data(), b2}; }

  friend bool operator==(const Encoder&, const Encoder&) = default;
};

// Intermediate values kept for the backward pass.
struct EncoderTrace {
  std::vector<double> hidden;   // tanh activations
  std::vector<double> output;   // unit embedding
  double pre_norm = 0;          // norm before normalization
  bool degenerate = false;
};

inline EncoderTrace encode_traced(const Encoder& enc, std::span<const double> x) {
  const std::size_t H = enc.hidden_dim();
  const std::size_t E = enc.out_dim();
  EncoderTrace t;
  t.hidden.resize(H);
  for (std::size_t h = 0; h < H; ++h) t.hidden[h] = std::tanh(dot(enc.w1.row(h), x) + enc.b1[h]);
  t.output.resize(E);
  for (std::size_t e = 0; e < E; ++e) t.output[e] = dot(enc.w2.row(e), t.hidden) + enc.b2[e];
  t.pre_norm = norm(t.output);
  if (t.pre_norm < kDegenerateNorm) {
    t.degenerate = true;
    std::fill(t.output.begin(), t.output.end(), 0.0);
    if (E > 0) t.output[0] = 1.0;
  } else {
    for (double& v : t.output) v /= t.pre_norm;
  }
  return t;
}

inline std::vector<double> encode(const Encoder& enc, std::span<const double> x) {
  return encode_traced(enc, x).output;
}

// Accumulates parameter gradients given dL/d(unit output). The degenerate
// guard is a constant, so it contributes nothing.
inline void encode_backward(const Encoder& enc, std::span<const double> x, const EncoderTrace& t,
                            std::span<const double> grad_unit, Encoder& grad) {
  if (t.degenerate) return;
  const std::size_t H = enc.hidden_dim();
  const std::size_t E = enc.out_dim();

  // Through u = v / |v|: dL/dv = (I - u u^T) g / |v|.
  double ug = dot(t.output, grad_unit);
  std::vector<double> gv(E);
  for (std::size_t e = 0; e < E; ++e) gv[e] = (grad_unit[e] - t.output[e] * ug) / t.pre_norm;

  std::vector<double> gh(H, 0.0);
  for (std::size_t e = 0; e < E; ++e) {
    if (gv[e] == 0.0) continue;
    grad.b2[e] += gv[e];
    auto gw = grad.w2.row(e);
    auto w = enc.w2.row(e);
    for (std::size_t h = 0; h < H; ++h) {
      gw[h] += gv[e] * t.hidden[h];
      gh[h] += gv[e] * w[h];
    }
  }
  for (std::size_t h = 0; h < H; ++h) {
    double ga = gh[h] * (1.0 - t.hidden[h] * t.hidden[h]);
    if (ga == 0.0) continue;
    grad.b1[h] += ga;
    auto gw = grad.w1.row(h);
    for (std::size_t d = 0; d < x.size(); ++d) gw[d] += ga * x[d];
  }
}

}  // namespace docforest
