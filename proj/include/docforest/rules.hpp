#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "docforest/category.hpp"
#include "docforest/document.hpp"
#include "docforest/error.hpp"

namespace docforest {

struct RuleConfig {
  // section, subsection, subsubsection, subsubsubsection, paragraph -> levels 1..5
  std::array<KnownCategory, 5> chain_levels;
  std::map<KnownCategory, std::set<KnownCategory>> fixed_deps;
  std::set<KnownCategory> no_parent_set;

  // 1-based chain level, or 0 for categories outside the chain.
  int chain_level(const Category& c) const {
    if (!c.is_known()) return 0;
    for (std::size_t i = 0; i < chain_levels.size(); ++i) {
      if (chain_levels[i] == *c.known()) return static_cast<int>(i) + 1;
    }
    return 0;
  }

  bool is_no_parent(const Category& c) const { return c.is_known() && no_parent_set.count(*c.known()) > 0; }

  const std::set<KnownCategory>* allowed_parents(const Category& c) const {
    if (!c.is_known()) return nullptr;
    auto it = fixed_deps.find(*c.known());
    return it == fixed_deps.end() ? nullptr : &it->second;
  }

  // True for categories whose placement is governed by rule 3 geometry.
  static bool is_caption(const Category& c) {
    return c.is(KnownCategory::kTableCaption) || c.is(KnownCategory::kFigureCaption);
  }
};

inline const RuleConfig& default_rule_config() {
  using K = KnownCategory;
  static const RuleConfig cfg = [] {
    RuleConfig c;
    c.chain_levels = {K::kSection, K::kSubsection, K::kSubsubsection, K::kSubsubsubsection, K::kParagraph};
    c.no_parent_set = {K::kAbstract,     K::kAppendixList,   K::kCross,           K::kFigure,
                       K::kFormTitle,    K::kListOfFigures,  K::kListOfTables,    K::kOther,
                       K::kReferences,   K::kReportTitle,    K::kSection,         K::kSummary,
                       K::kTable,        K::kTableOfContents, K::kTitle};
    c.fixed_deps[K::kTableCaption] = {K::kTable};
    c.fixed_deps[K::kFigureCaption] = {K::kFigure};
    c.fixed_deps[K::kForm] = {K::kSummary, K::kAbstract, K::kSection, K::kSubsection, K::kSubsubsection,
                              K::kSubsubsubsection};
    c.fixed_deps[K::kList] = {K::kParagraph, K::kSection, K::kSubsection, K::kSubsubsection, K::kSubsubsubsection};
    c.fixed_deps[K::kFormBody] = {K::kFormTitle, K::kSummary,       K::kAbstract,        K::kSection,
                                  K::kSubsection, K::kSubsubsection, K::kSubsubsubsection};
    return c;
  }();
  return cfg;
}

inline nlohmann::json to_json(const RuleConfig& cfg) {
  nlohmann::json j;
  nlohmann::json chain = nlohmann::json::array();
  for (std::size_t i = 0; i < cfg.chain_levels.size(); ++i) {
    chain.push_back({{"category", to_string(cfg.chain_levels[i])}, {"level", i + 1}});
  }
  j["chain_levels"] = chain;
  nlohmann::json roots = nlohmann::json::array();
  for (auto c : cfg.no_parent_set) roots.push_back(to_string(c));
  j["no_parent_set"] = roots;
  nlohmann::json deps = nlohmann::json::object();
  for (const auto& [child, parents] : cfg.fixed_deps) {
    nlohmann::json ps = nlohmann::json::array();
    for (auto p : parents) ps.push_back(to_string(p));
    deps[std::string(to_string(child))] = ps;
  }
  j["fixed_deps"] = deps;
  return j;
}

// Rule 1: categories that never have a parent.
inline Assignment apply_root_rule(const Document& doc, const RuleConfig& cfg = default_rule_config()) {
  Assignment out;
  for (const Entity& e : doc.entities()) {
    if (cfg.is_no_parent(e.category)) out[e.id] = {ParentRef::root(), Provenance::kRule1};
  }
  return out;
}

// Rule 2: each chain entity below section level attaches to the nearest
// preceding chain entity of a strictly smaller level (levels may be skipped).
inline Assignment apply_section_chain_rule(const Document& doc, const RuleConfig& cfg = default_rule_config()) {
  Assignment out;
  // last_seen[k] = id of the latest chain entity of level k in reading order so far
  std::array<std::optional<std::size_t>, 6> last_seen{};
  std::array<std::size_t, 6> last_rank{};
  auto order = reading_order_indices(doc);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const Entity& e = doc[order[r]];
    int level = cfg.chain_level(e.category);
    if (level == 0) continue;
    if (level >= 2) {
      std::optional<std::size_t> best;
      std::size_t best_rank = 0;
      for (int k = 1; k < level; ++k) {
        if (last_seen[k] && (!best || last_rank[k] > best_rank)) {
          best = last_seen[k];
          best_rank = last_rank[k];
        }
      }
      out[e.id] = {best ? ParentRef::entity(doc[*best].id) : ParentRef::root(), Provenance::kRule2};
    }
    last_seen[level] = order[r];
    last_rank[level] = r;
  }
  return out;
}

// Rule 3: fixed parent categories. Only entities listed in `residual` are
// considered. Forms, lists and form bodies with no allowed parent anywhere in
// the document are left unassigned for the matcher.
inline Assignment apply_fixed_dependency_rule(const Document& doc, const std::set<std::string>& residual,
                                              const RuleConfig& cfg = default_rule_config()) {
  Assignment out;
  auto rank = reading_rank(doc);

  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Entity& child = doc[i];
    if (!residual.count(child.id)) continue;
    const auto* allowed = cfg.allowed_parents(child.category);
    if (!allowed) continue;

    auto admissible = [&](std::size_t j) {
      return j != i && doc[j].category.is_known() && allowed->count(*doc[j].category.known()) > 0;
    };

    std::optional<std::size_t> parent;
    if (RuleConfig::is_caption(child.category)) {
      // Nearest on the same page by bbox-center distance; ties by reading order.
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < doc.size(); ++j) {
        if (!admissible(j) || doc[j].page != child.page) continue;
        double d = center_distance(child.bbox, doc[j].bbox);
        if (d < best || (parent && d == best && rank[j] < rank[*parent])) {
          best = d;
          parent = j;
        }
      }
    }
    if (!parent) {
      // Nearest preceding in reading order, then nearest following.
      std::optional<std::size_t> before, after;
      for (std::size_t j = 0; j < doc.size(); ++j) {
        if (!admissible(j)) continue;
        if (rank[j] < rank[i]) {
          if (!before || rank[j] > rank[*before]) before = j;
        } else if (!after || rank[j] < rank[*after]) {
          after = j;
        }
      }
      parent = before ? before : after;
    }

    if (parent) {
      out[child.id] = {ParentRef::entity(doc[*parent].id), Provenance::kRule3};
    } else if (RuleConfig::is_caption(child.category)) {
      out[child.id] = {ParentRef::root(), Provenance::kRule3};
    }
  }
  return out;
}

struct RuleOutcome {
  Assignment assignment;
  std::set<std::string> residual;
};

namespace detail {

inline void merge_disjoint(Assignment& into, const Assignment& from, const char* rule) {
  for (const auto& [id, d] : from) {
    if (!into.emplace(id, d).second) {
      throw ConsistencyError(std::string(rule) + " re-assigned entity '" + id + "'");
    }
  }
}

}  // namespace detail

inline RuleOutcome apply_all_rules(const Document& doc, const RuleConfig& cfg = default_rule_config()) {
  RuleOutcome out;
  detail::merge_disjoint(out.assignment, apply_root_rule(doc, cfg), "rule1");
  detail::merge_disjoint(out.assignment, apply_section_chain_rule(doc, cfg), "rule2");

  std::set<std::string> residual;
  for (const Entity& e : doc.entities()) {
    if (!out.assignment.count(e.id)) residual.insert(e.id);
  }
  detail::merge_disjoint(out.assignment, apply_fixed_dependency_rule(doc, residual, cfg), "rule3");

  for (const Entity& e : doc.entities()) {
    if (!out.assignment.count(e.id)) out.residual.insert(e.id);
  }
  return out;
}

}  // namespace docforest
