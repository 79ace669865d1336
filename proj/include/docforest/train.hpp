#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "docforest/document.hpp"
#include "docforest/encoder.hpp"
#include "docforest/features.hpp"
#include "docforest/loss.hpp"
#include "docforest/matcher.hpp"
#include "docforest/model.hpp"
#include "docforest/random.hpp"
#include "docforest/rules.hpp"

namespace docforest {

struct TrainOptions {
  int epochs = 30;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 42;
};

struct TrainLog {
  std::vector<double> epoch_loss;  // mean per-document loss of each epoch
  std::size_t documents_used = 0;
  std::size_t pairs = 0;
};

// Per-document training problem: feature rows of every entity, the children
// left to the matcher that carry a real parent label, and their candidates.
struct DocumentProblem {
  std::vector<std::vector<double>> features;
  std::vector<std::size_t> children;
  std::vector<std::size_t> labels;  // entity index of the true parent
  std::vector<char> allowed;        // children.size() x entities mask
};

inline DocumentProblem make_problem(const Document& doc, const FeatureConfig& fc,
                                    const EmbeddingTable* external = nullptr) {
  DocumentProblem p;
  auto rules = apply_all_rules(doc);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Entity& e = doc[i];
    if (!rules.residual.count(e.id) || !e.gold_parent || e.gold_parent->is_root()) continue;
    auto gold = doc.find(e.gold_parent->id());
    auto cands = candidate_parents(doc, i, true);
    std::vector<char> row(doc.size(), 0);
    for (auto j : cands) row[j] = 1;
    if (!gold || !row[*gold]) continue;
    p.children.push_back(i);
    p.labels.push_back(*gold);
    p.allowed.insert(p.allowed.end(), row.begin(), row.end());
  }
  if (!p.children.empty()) p.features = build_document_features(doc, fc, external);
  return p;
}

// Adam with per-parameter first and second moments.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(const TrainOptions& o) : opts_(o) {}

  void step(std::vector<std::span<double>> params, std::vector<std::span<double>> grads) {
    if (m_.empty()) {
      for (auto& p : params) {
        m_.emplace_back(p.size(), 0.0);
        v_.emplace_back(p.size(), 0.0);
      }
    }
    ++t_;
    const double c1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(t_));
    for (std::size_t k = 0; k < params.size(); ++k) {
      auto& m = m_[k];
      auto& v = v_[k];
      for (std::size_t i = 0; i < params[k].size(); ++i) {
        double g = grads[k][i];
        m[i] = opts_.beta1 * m[i] + (1.0 - opts_.beta1) * g;
        v[i] = opts_.beta2 * v[i] + (1.0 - opts_.beta2) * g * g;
        params[k][i] -= opts_.learning_rate * (m[i] / c1) / (std::sqrt(v[i] / c2) + opts_.epsilon);
      }
    }
  }

 private:
  TrainOptions opts_;
  std::vector<std::vector<double>> m_, v_;
  std::int64_t t_ = 0;
};

namespace detail {

// Forward + backward on one document; accumulates encoder gradients, returns loss.
inline double document_step(const MatchModel& model, const DocumentProblem& p, Encoder& grad_child,
                            Encoder& grad_parent) {
  const std::size_t n = p.features.size();
  const std::size_t E = model.embedding_dim();
  MatchBatch batch{Matrix(p.children.size(), E), Matrix(n, E), p.labels, p.allowed};

  std::vector<EncoderTrace> parent_traces;
  parent_traces.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    parent_traces.push_back(encode_traced(model.parent_encoder, p.features[j]));
    std::copy(parent_traces[j].output.begin(), parent_traces[j].output.end(), batch.parent.row(j).begin());
  }
  std::vector<EncoderTrace> child_traces;
  child_traces.reserve(p.children.size());
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    child_traces.push_back(encode_traced(model.child_encoder, p.features[p.children[i]]));
    std::copy(child_traces[i].output.begin(), child_traces[i].output.end(), batch.child.row(i).begin());
  }

  auto g = margin_loss_backward(batch, model.s, model.m);
  for (std::size_t i = 0; i < p.children.size(); ++i) {
    encode_backward(model.child_encoder, p.features[p.children[i]], child_traces[i], g.d_child.row(i), grad_child);
  }
  for (std::size_t j = 0; j < n; ++j) {
    auto row = g.d_parent.row(j);
    bool any = false;
    for (double v : row) any = any || v != 0.0;
    if (any) encode_backward(model.parent_encoder, p.features[j], parent_traces[j], row, grad_parent);
  }
  return g.loss;
}

inline void zero(Encoder& e) {
  for (auto span : e.parameters()) std::fill(span.begin(), span.end(), 0.0);
}

}  // namespace detail

// Mean margin loss of the model over the documents that have trainable pairs.
inline double evaluate_loss(const MatchModel& model, const std::vector<Document>& docs,
                            const EmbeddingTable* external = nullptr) {
  double total = 0;
  std::size_t used = 0;
  Encoder gc(model.input_dim(), model.hidden_dim(), model.embedding_dim());
  Encoder gp = gc;
  for (const auto& d : docs) {
    auto p = make_problem(d, model.features, external);
    if (p.children.empty()) continue;
    total += detail::document_step(model, p, gc, gp);
    ++used;
  }
  return used ? total / static_cast<double>(used) : 0.0;
}

// One optimizer step per document, documents visited in a seeded order that
// is reshuffled every epoch.
inline MatchModel train(const std::vector<Document>& docs, const MatchModel& init, const TrainOptions& opts,
                        TrainLog* log = nullptr, const EmbeddingTable* external = nullptr) {
  init.check();
  if (opts.epochs < 0) throw ConfigError("epochs must be >= 0");
  if (!(opts.learning_rate > 0)) throw ConfigError("learning rate must be positive");

  std::vector<DocumentProblem> problems;
  std::size_t pairs = 0;
  for (const auto& d : docs) {
    auto p = make_problem(d, init.features, external);
    if (p.children.empty()) continue;
    pairs += p.children.size();
    problems.push_back(std::move(p));
  }
  if (problems.empty()) {
    throw std::invalid_argument("no trainable pairs: no document has a matcher-resolved entity with a labeled parent");
  }
  if (log) {
    log->documents_used = problems.size();
    log->pairs = pairs;
  }

  MatchModel model = init;
  if (opts.epochs == 0) return model;

  Encoder grad_child(model.input_dim(), model.hidden_dim(), model.embedding_dim());
  Encoder grad_parent = grad_child;
  AdamOptimizer adam(opts);
  Rng rng(opts.seed);
  std::vector<std::size_t> order(problems.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    rng.shuffle(order);
    double total = 0;
    for (std::size_t k : order) {
      detail::zero(grad_child);
      detail::zero(grad_parent);
      total += detail::document_step(model, problems[k], grad_child, grad_parent);

      auto params = model.child_encoder.parameters();
      for (auto span : model.parent_encoder.parameters()) params.push_back(span);
      auto grads = grad_child.parameters();
      for (auto span : grad_parent.parameters()) grads.push_back(span);
      adam.step(std::move(params), std::move(grads));
    }
    if (log) log->epoch_loss.push_back(total / static_cast<double>(problems.size()));
  }
  return model;
}

}  // namespace docforest
