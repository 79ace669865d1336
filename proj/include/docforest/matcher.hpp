#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "docforest/document.hpp"
#include "docforest/features.hpp"
#include "docforest/matrix.hpp"
#include "docforest/model.hpp"
#include "docforest/rules.hpp"

namespace docforest {

// Child-role and parent-role embeddings of every entity of a document, rows in
// entity order.
struct DocumentEmbeddings {
  Matrix child;
  Matrix parent;
};

inline DocumentEmbeddings embed_document(const MatchModel& model, const Document& doc,
                                         const EmbeddingTable* external = nullptr) {
  auto feats = build_document_features(doc, model.features, external);
  const std::size_t E = model.embedding_dim();
  DocumentEmbeddings out{Matrix(doc.size(), E), Matrix(doc.size(), E)};
  for (std::size_t i = 0; i < doc.size(); ++i) {
    auto c = encode(model.child_encoder, feats[i]);
    auto p = encode(model.parent_encoder, feats[i]);
    std::copy(c.begin(), c.end(), out.child.row(i).begin());
    std::copy(p.begin(), p.end(), out.parent.row(i).begin());
  }
  return out;
}

// Best candidate row for a child embedding. Ties go to the candidate earliest
// in `order_key` (smaller wins). `candidates` must be nonempty.
inline std::size_t best_candidate(std::span<const double> child, const Matrix& parents,
                                  std::span<const std::size_t> candidates, std::span<const std::size_t> order_key) {
  std::size_t best = candidates.front();
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t j : candidates) {
    double sc = dot(child, parents.row(j));
    if (sc > best_score || (sc == best_score && order_key[j] < order_key[best])) {
      best = j;
      best_score = sc;
    }
  }
  return best;
}

// Candidate parents of entity `child`: every other entity, narrowed to the
// allowed parent categories when `restrict` is set and a fixed dependency
// exists for the child's category.
inline std::vector<std::size_t> candidate_parents(const Document& doc, std::size_t child, bool restrict,
                                                  const RuleConfig& cfg = default_rule_config()) {
  const auto* allowed = restrict ? cfg.allowed_parents(doc[child].category) : nullptr;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < doc.size(); ++j) {
    if (j == child) continue;
    if (allowed) {
      const Category& c = doc[j].category;
      if (!c.is_known() || !allowed->count(*c.known())) continue;
    }
    out.push_back(j);
  }
  return out;
}

namespace detail {

inline void check_candidates(const Entity& child, std::span<const Entity> candidates) {
  if (candidates.empty()) throw std::invalid_argument("no parent candidates for '" + child.id + "'");
  for (const Entity& c : candidates) {
    if (c.id == child.id) throw std::invalid_argument("child '" + child.id + "' listed among its own candidates");
  }
}

}  // namespace detail

// Cosine between the child-role embedding of `child` and the parent-role
// embedding of each candidate. The margin is a training device and is not
// applied here. Geometry is normalized against `doc`.
inline std::vector<double> score_candidates(const MatchModel& model, const Entity& child,
                                            std::span<const Entity> candidates, const Document& doc,
                                            const EmbeddingTable* external = nullptr) {
  detail::check_candidates(child, candidates);
  PageExtents pages(doc);
  auto ext = [&](const Entity& e) { return external ? external->find(doc.doc_id(), e.id) : nullptr; };
  auto fc = encode(model.child_encoder, build_feature_vector(child, pages, model.features, ext(child)));
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const Entity& c : candidates) {
    auto fp = encode(model.parent_encoder, build_feature_vector(c, pages, model.features, ext(c)));
    scores.push_back(dot(fc, fp));
  }
  return scores;
}

// Highest-scoring candidate; ties break by reading order (which ends in id).
inline std::string predict_parent(const MatchModel& model, const Entity& child, std::span<const Entity> candidates,
                                  const Document& doc, const EmbeddingTable* external = nullptr) {
  auto scores = score_candidates(model, child, candidates, doc, external);
  std::size_t best = 0;
  for (std::size_t j = 1; j < candidates.size(); ++j) {
    if (scores[j] > scores[best] || (scores[j] == scores[best] && reading_before(candidates[j], candidates[best]))) {
      best = j;
    }
  }
  return candidates[best].id;
}

}  // namespace docforest
