#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "docforest/error.hpp"
#include "docforest/matrix.hpp"

namespace docforest {

// One matching problem: N_c child rows, N_p parent rows, one true parent per
// child. `allowed`, when non-empty, is an N_c x N_p mask of the candidate
// parents each child competes over; empty means every parent row.
struct MatchBatch {
  Matrix child;
  Matrix parent;
  std::vector<std::size_t> labels;
  std::vector<char> allowed;

  std::size_t num_children() const { return child.rows(); }
  std::size_t num_parents() const { return parent.rows(); }

  bool is_candidate(std::size_t i, std::size_t j) const {
    return allowed.empty() || allowed[i * parent.rows() + j] != 0;
  }
};

// Structural checks on a batch; `unit_tol` bounds the deviation of each row
// norm from 1.
inline void check_batch(const MatchBatch& b, double unit_tol = 1e-9) {
  if (b.child.cols() != b.parent.cols()) throw ValidationError("child/parent embedding widths differ");
  if (b.labels.size() != b.num_children()) throw ValidationError("one label per child row required");
  if (!b.allowed.empty() && b.allowed.size() != b.num_children() * b.num_parents()) {
    throw ValidationError("candidate mask has wrong shape");
  }
  for (std::size_t i = 0; i < b.num_children(); ++i) {
    if (b.labels[i] >= b.num_parents()) throw ValidationError("label out of range");
    if (!b.is_candidate(i, b.labels[i])) throw ValidationError("true parent excluded by candidate mask");
    if (std::abs(norm(b.child.row(i)) - 1.0) > unit_tol) throw ValidationError("child row not unit-norm");
  }
  for (std::size_t j = 0; j < b.num_parents(); ++j) {
    if (std::abs(norm(b.parent.row(j)) - 1.0) > unit_tol) throw ValidationError("parent row not unit-norm");
  }
}

inline void check_margin_params(double s, double m) {
  if (!(s > 0) || !std::isfinite(s)) throw ConfigError("scale s must be positive, got " + std::to_string(s));
  if (!(m >= 0 && m < std::numbers::pi / 2)) {
    throw ConfigError("margin m must lie in [0, pi/2), got " + std::to_string(m));
  }
}

// sin(theta) below this is floored in the derivative of cos(theta + m).
inline constexpr double kSinFloor = 1e-7;

// cos(theta + m) for cos(theta) = c, via c cos m - sin(theta) sin m. Exact at
// c = +-1 and reduces to c when m = 0.
inline double cos_plus_margin(double c, double m) {
  if (m == 0.0) return c;
  double sin_theta = std::sqrt(std::max(0.0, 1.0 - c * c));
  return c * std::cos(m) - sin_theta * std::sin(m);
}

// d cos(theta + m) / d cos(theta) = sin(theta + m) / sin(theta).
inline double cos_plus_margin_derivative(double c, double m) {
  if (m == 0.0) return 1.0;
  double sin_theta = std::max(kSinFloor, std::sqrt(std::max(0.0, 1.0 - c * c)));
  return std::cos(m) + c * std::sin(m) / sin_theta;
}

namespace detail {

// Logits of child i over its candidates; non-candidates get -inf.
inline void row_logits(const MatchBatch& b, std::size_t i, double s, double m, std::vector<double>& z) {
  z.assign(b.num_parents(), -std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < b.num_parents(); ++j) {
    if (!b.is_candidate(i, j)) continue;
    double c = dot(b.child.row(i), b.parent.row(j));
    z[j] = s * (j == b.labels[i] ? cos_plus_margin(c, m) : c);
  }
}

inline double log_sum_exp(const std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  double acc = 0;
  for (double v : z) acc += std::exp(v - mx);
  return mx + std::log(acc);
}

inline double margin_loss_impl(const MatchBatch& b, double s, double m) {
  if (b.num_children() == 0) return 0.0;
  std::vector<double> z;
  double total = 0;
  for (std::size_t i = 0; i < b.num_children(); ++i) {
    row_logits(b, i, s, m, z);
    total += log_sum_exp(z) - z[b.labels[i]];
  }
  return total / static_cast<double>(b.num_children());
}

}  // namespace detail

// Softmax cross-entropy over scaled cosines, averaged over children.
inline double clip_loss(const MatchBatch& b, double s) {
  if (!(s > 0)) throw ConfigError("scale s must be positive");
  return detail::margin_loss_impl(b, s, 0.0);
}

// Same, with the additive angular margin m applied to each true pair.
inline double margin_loss_forward(const MatchBatch& b, double s, double m) {
  check_margin_params(s, m);
  return detail::margin_loss_impl(b, s, m);
}

struct LossGradients {
  double loss = 0;
  Matrix d_child;   // N_c x E
  Matrix d_parent;  // N_p x E
};

// Exact gradients of margin_loss_forward with respect to the child and parent
// rows (cosines taken as plain dot products of the rows).
inline LossGradients margin_loss_backward(const MatchBatch& b, double s, double m) {
  check_margin_params(s, m);
  const std::size_t nc = b.num_children();
  const std::size_t np = b.num_parents();
  const std::size_t dim = b.child.cols();
  LossGradients g{0.0, Matrix(nc, dim), Matrix(np, dim)};
  if (nc == 0) return g;

  const double inv_n = 1.0 / static_cast<double>(nc);
  std::vector<double> z;
  for (std::size_t i = 0; i < nc; ++i) {
    detail::row_logits(b, i, s, m, z);
    const std::size_t y = b.labels[i];
    double lse = detail::log_sum_exp(z);
    g.loss += lse - z[y];

    auto ci = b.child.row(i);
    auto dci = g.d_child.row(i);
    for (std::size_t j = 0; j < np; ++j) {
      if (!b.is_candidate(i, j)) continue;
      double dz = std::exp(z[j] - lse) - (j == y ? 1.0 : 0.0);
      double dzdc = s;
      if (j == y) dzdc *= cos_plus_margin_derivative(dot(ci, b.parent.row(j)), m);
      double k = dz * dzdc * inv_n;
      if (k == 0.0) continue;
      auto pj = b.parent.row(j);
      auto dpj = g.d_parent.row(j);
      for (std::size_t e = 0; e < dim; ++e) {
        dci[e] += k * pj[e];
        dpj[e] += k * ci[e];
      }
    }
  }
  g.loss *= inv_n;
  return g;
}

}  // namespace docforest
