#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "docforest/document.hpp"
#include "docforest/error.hpp"
#include "docforest/features.hpp"
#include "docforest/matcher.hpp"
#include "docforest/model.hpp"
#include "docforest/rules.hpp"

namespace docforest {

struct ParseOptions {
  bool rules_enabled = true;
  const EmbeddingTable* external = nullptr;
};

// Full per-document parse. With rules enabled, rule decisions are final and
// the matcher only resolves the residual; otherwise the matcher decides every
// entity over all other entities. Entities without candidates become ROOT.
inline Assignment parse_hierarchy(const Document& doc, const MatchModel& model, const ParseOptions& opts = {}) {
  model.check();
  Assignment out;
  std::vector<std::size_t> todo;
  if (opts.rules_enabled) {
    auto rules = apply_all_rules(doc);
    out = std::move(rules.assignment);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (rules.residual.count(doc[i].id)) todo.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < doc.size(); ++i) todo.push_back(i);
  }
  if (todo.empty()) return out;

  auto emb = embed_document(model, doc, opts.external);
  auto rank = reading_rank(doc);
  for (std::size_t i : todo) {
    auto cands = candidate_parents(doc, i, opts.rules_enabled);
    Decision d{ParentRef::root(), Provenance::kMatcher};
    if (!cands.empty()) d.parent = ParentRef::entity(doc[best_candidate(emb.child.row(i), emb.parent, cands, rank)].id);
    out[doc[i].id] = d;
  }
  return out;
}

struct ForestReport {
  std::vector<std::vector<std::string>> cycles;
  std::size_t orphans = 0;  // entities assigned ROOT
};

// Every directed cycle of the parent graph. Each cycle starts at its
// smallest id and follows parent links; cycles are sorted.
inline ForestReport check_forest(const Document& doc, const Assignment& a) {
  std::vector<std::string> missing;
  for (const Entity& e : doc.entities()) {
    if (!a.count(e.id)) missing.push_back(e.id);
  }
  if (!missing.empty()) {
    std::string msg = doc.doc_id() + ": assignment missing entities:";
    for (const auto& id : missing) msg += " " + id;
    throw ValidationError(msg);
  }

  ForestReport r;
  const std::size_t n = doc.size();
  std::vector<std::optional<std::size_t>> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Decision& d = a.at(doc[i].id);
    if (d.parent.is_root()) {
      ++r.orphans;
    } else {
      next[i] = doc.find(d.parent.id());
    }
  }

  // 0 = unvisited, 1 = on current walk, 2 = done
  std::vector<int> state(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start]) continue;
    std::vector<std::size_t> walk;
    std::optional<std::size_t> cur = start;
    while (cur && state[*cur] == 0) {
      state[*cur] = 1;
      walk.push_back(*cur);
      cur = next[*cur];
    }
    if (cur && state[*cur] == 1) {
      auto it = std::find(walk.begin(), walk.end(), *cur);
      std::vector<std::string> cycle;
      for (; it != walk.end(); ++it) cycle.push_back(doc[*it].id);
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      r.cycles.push_back(std::move(cycle));
    }
    for (auto v : walk) state[v] = 2;
  }
  std::sort(r.cycles.begin(), r.cycles.end());
  return r;
}

}  // namespace docforest
