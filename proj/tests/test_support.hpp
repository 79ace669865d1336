#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "docforest/docforest.hpp"

namespace docforest::testing {

inline Entity make_entity(std::string id, std::string category, std::int64_t page, BBox box,
                          std::optional<std::string> text = std::nullopt) {
  Entity e;
  e.id = std::move(id);
  e.category = Category(std::move(category));
  e.page = page;
  e.bbox = box;
  e.text = std::move(text);
  return e;
}

// Entity stacked at row `row` of a single-column page.
inline Entity row_entity(std::string id, std::string category, int row, std::int64_t page = 0) {
  double y = 100.0 + 60.0 * row;
  return make_entity(std::move(id), std::move(category), page, {100, y, 500, y + 40});
}

inline Document make_doc(std::vector<Entity> entities, std::string id = "d") {
  return Document(std::move(id), std::move(entities));
}

inline const std::vector<std::string>& all_known_categories() {
  static const std::vector<std::string> v = [] {
    std::vector<std::string> out;
    for (auto n : kCategoryNames) out.emplace_back(n);
    return out;
  }();
  return v;
}

// Small random document over the full vocabulary plus an unknown label.
// Coordinates come from coarse grids so reading-order and distance ties occur.
inline Document random_small_document(Rng& rng, std::size_t max_entities, const std::string& id = "rand") {
  auto n = static_cast<std::size_t>(rng.range(1, static_cast<std::int64_t>(max_entities)));
  std::vector<Entity> ents;
  const auto& cats = all_known_categories();
  for (std::size_t i = 0; i < n; ++i) {
    std::string cat = rng.bernoulli(0.1) ? "note" : cats[static_cast<std::size_t>(rng.range(0, cats.size() - 1))];
    double x0 = 50.0 * static_cast<double>(rng.range(0, 4));
    double y0 = 100.0 * static_cast<double>(rng.range(0, 5));
    double w = 50.0 * static_cast<double>(rng.range(1, 4));
    double h = 20.0 * static_cast<double>(rng.range(1, 3));
    ents.push_back(make_entity("n" + std::to_string(rng.range(0, 99)) + "_" + std::to_string(i), cat, rng.range(0, 2),
                               {x0, y0, x0 + w, y0 + h}, rng.bernoulli(0.8) ? std::optional<std::string>("t") : std::nullopt));
  }
  return Document(id, std::move(ents));
}

inline Document shuffled(const Document& doc, Rng& rng) {
  auto ents = doc.entities();
  rng.shuffle(ents);
  return Document(doc.doc_id(), std::move(ents));
}

// Brute-force reading of the three rule groups, written against the rule
// text without the engine's data structures: every (child, candidate) pair
// is examined.
struct OracleResult {
  std::map<std::string, std::pair<std::optional<std::string>, std::string>> decided;  // id -> (parent|ROOT, rule)
  std::set<std::string> residual;
};

inline OracleResult brute_force_rules(const Document& doc) {
  static const std::set<std::string> roots = {"abstract", "appendix_list", "cross", "figure", "form_title",
                                              "list_of_figures", "list_of_tables", "other", "references",
                                              "report_title", "section", "summary", "table", "table_of_contents",
                                              "title"};
  static const std::map<std::string, int> level = {
      {"section", 1}, {"subsection", 2}, {"subsubsection", 3}, {"subsubsubsection", 4}, {"paragraph", 5}};
  static const std::map<std::string, std::set<std::string>> deps = {
      {"table_caption", {"table"}},
      {"figure_caption", {"figure"}},
      {"form", {"summary", "abstract", "section", "subsection", "subsubsection", "subsubsubsection"}},
      {"list", {"paragraph", "section", "subsection", "subsubsection", "subsubsubsection"}},
      {"form_body",
       {"form_title", "summary", "abstract", "section", "subsection", "subsubsection", "subsubsubsection"}}};

  auto key = [](const Entity& e) { return std::make_tuple(e.page, e.bbox.y0, e.bbox.x0, e.id); };
  auto before = [&](const Entity& a, const Entity& b) { return key(a) < key(b); };

  OracleResult r;
  const auto& ents = doc.entities();
  for (const Entity& c : ents) {
    const std::string& cat = c.category.name();
    if (roots.count(cat)) {
      r.decided[c.id] = {std::nullopt, "rule1"};
      continue;
    }
    if (auto lv = level.find(cat); lv != level.end()) {
      const Entity* best = nullptr;
      for (const Entity& p : ents) {
        auto pl = level.find(p.category.name());
        if (&p == &c || pl == level.end() || pl->second >= lv->second || !before(p, c)) continue;
        if (!best || before(*best, p)) best = &p;
      }
      r.decided[c.id] = {best ? std::optional(best->id) : std::nullopt, "rule2"};
      continue;
    }
    auto dp = deps.find(cat);
    if (dp == deps.end()) {
      r.residual.insert(c.id);
      continue;
    }
    const auto& allowed = dp->second;
    bool caption = cat == "table_caption" || cat == "figure_caption";
    const Entity* best = nullptr;
    if (caption) {
      for (const Entity& p : ents) {
        if (&p == &c || !allowed.count(p.category.name()) || p.page != c.page) continue;
        if (!best) {
          best = &p;
          continue;
        }
        double d = std::hypot((p.bbox.x0 + p.bbox.x1) / 2 - (c.bbox.x0 + c.bbox.x1) / 2,
                              (p.bbox.y0 + p.bbox.y1) / 2 - (c.bbox.y0 + c.bbox.y1) / 2);
        double bd = std::hypot((best->bbox.x0 + best->bbox.x1) / 2 - (c.bbox.x0 + c.bbox.x1) / 2,
                               (best->bbox.y0 + best->bbox.y1) / 2 - (c.bbox.y0 + c.bbox.y1) / 2);
        if (d < bd || (d == bd && before(p, *best))) best = &p;
      }
    }
    if (!best) {
      for (const Entity& p : ents) {
        if (&p == &c || !allowed.count(p.category.name()) || !before(p, c)) continue;
        if (!best || before(*best, p)) best = &p;
      }
    }
    if (!best) {
      for (const Entity& p : ents) {
        if (&p == &c || !allowed.count(p.category.name()) || before(p, c)) continue;
        if (!best || before(p, *best)) best = &p;
      }
    }
    if (best) r.decided[c.id] = {best->id, "rule3"};
    else if (caption) r.decided[c.id] = {std::nullopt, "rule3"};
    else r.residual.insert(c.id);
  }
  return r;
}

// Number of disagreements between the engine and the oracle.
inline std::size_t oracle_mismatches(const Document& doc) {
  auto engine = apply_all_rules(doc);
  auto oracle = brute_force_rules(doc);
  std::size_t bad = 0;
  if (engine.residual != oracle.residual) ++bad;
  if (engine.assignment.size() != oracle.decided.size()) ++bad;
  for (const auto& [id, want] : oracle.decided) {
    auto it = engine.assignment.find(id);
    if (it == engine.assignment.end()) {
      ++bad;
      continue;
    }
    const Decision& got = it->second;
    bool parent_ok = want.first ? (!got.parent.is_root() && got.parent.id() == *want.first) : got.parent.is_root();
    if (!parent_ok || to_string(got.provenance) != want.second) ++bad;
  }
  return bad;
}

inline void normalize_rows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double n = norm(m.row(r));
    for (double& v : m.row(r)) v /= n;
  }
}

inline MatchBatch random_batch(Rng& rng, std::size_t nc, std::size_t np, std::size_t dim) {
  MatchBatch b{Matrix(nc, dim), Matrix(np, dim), std::vector<std::size_t>(nc), {}};
  for (double& v : b.child.data()) v = rng.uniform(-1, 1);
  for (double& v : b.parent.data()) v = rng.uniform(-1, 1);
  normalize_rows(b.child);
  normalize_rows(b.parent);
  for (auto& y : b.labels) y = static_cast<std::size_t>(rng.range(0, static_cast<std::int64_t>(np) - 1));
  return b;
}

// Like random_batch, but every true pair's angle stays at least `min_angle`
// away from 0 and pi. With m > 0 the loss has a cone point where a child
// coincides with its parent, and no difference quotient resolves it.
inline MatchBatch smooth_random_batch(Rng& rng, std::size_t nc, std::size_t np, std::size_t dim,
                                      double min_angle = 0.05, std::size_t* rejected = nullptr) {
  const double lo = std::cos(std::numbers::pi - min_angle), hi = std::cos(min_angle);
  for (;;) {
    auto b = random_batch(rng, nc, np, dim);
    bool ok = true;
    for (std::size_t i = 0; i < nc && ok; ++i) {
      double c = dot(b.child.row(i), b.parent.row(b.labels[i]));
      ok = c > lo && c < hi;
    }
    if (ok) return b;
    if (rejected) ++*rejected;
  }
}

struct GradCheck {
  double max_rel_error = 0;
};

// Fourth-order central differences with step h on every child and parent
// coordinate. Relative error uses max(|analytic|, |numeric|, floor) in the
// denominator so entries whose true gradient is ~0 are judged by absolute
// error below the floor.
inline GradCheck finite_difference_check(const MatchBatch& batch, double s, double m, double h = 1e-5,
                                         double floor = 1e-3) {
  auto analytic = margin_loss_backward(batch, s, m);
  GradCheck out;
  auto probe = [&](Matrix MatchBatch::*which, const Matrix& grad) {
    for (std::size_t k = 0; k < (batch.*which).data().size(); ++k) {
      auto f = [&](double d) {
        MatchBatch shifted = batch;
        (shifted.*which).data()[k] += d;
        return margin_loss_forward(shifted, s, m);
      };
      double num = (8 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12 * h);
      double ana = grad.data()[k];
      double rel = std::abs(num - ana) / std::max({std::abs(num), std::abs(ana), floor});
      out.max_rel_error = std::max(out.max_rel_error, rel);
    }
  };
  probe(&MatchBatch::child, analytic.d_child);
  probe(&MatchBatch::parent, analytic.d_parent);
  return out;
}

}  // namespace docforest::testing
