#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "docforest/category.hpp"
#include "docforest/error.hpp"

namespace docforest {

struct BBox {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double center_x() const { return 0.5 * (x0 + x1); }
  double center_y() const { return 0.5 * (y0 + y1); }

  friend bool operator==(const BBox&, const BBox&) = default;
};

inline double center_distance(const BBox& a, const BBox& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

// A parent decision: either another entity's id or the ROOT sentinel.
class ParentRef {
 public:
  static ParentRef root() { return ParentRef(); }
  static ParentRef entity(std::string id) { return ParentRef(std::move(id)); }

  bool is_root() const { return !id_.has_value(); }
  const std::string& id() const { return *id_; }

  friend bool operator==(const ParentRef&, const ParentRef&) = default;

 private:
  ParentRef() = default;
  explicit ParentRef(std::string id) : id_(std::move(id)) {}
  std::optional<std::string> id_;
};

inline std::string to_string(const ParentRef& p) { return p.is_root() ? "ROOT" : p.id(); }

struct Entity {
  std::string id;
  Category category;
  std::int64_t page = 0;
  BBox bbox;
  std::optional<std::string> text;
  // Absent means unlabeled; ROOT means labeled as having no parent.
  std::optional<ParentRef> gold_parent;
};

class Document {
 public:
  Document() = default;
  Document(std::string doc_id, std::vector<Entity> entities)
      : doc_id_(std::move(doc_id)), entities_(std::move(entities)) {
    for (std::size_t i = 0; i < entities_.size(); ++i) index_.emplace(entities_[i].id, i);
  }

  const std::string& doc_id() const { return doc_id_; }
  const std::vector<Entity>& entities() const { return entities_; }
  std::size_t size() const { return entities_.size(); }
  const Entity& operator[](std::size_t i) const { return entities_[i]; }

  // Position of the entity with this id, if any. With duplicate ids the first wins.
  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Entity& at(std::string_view id) const {
    auto pos = find(id);
    if (!pos) throw std::out_of_range("no entity '" + std::string(id) + "' in " + doc_id_);
    return entities_[*pos];
  }

 private:
  std::string doc_id_;
  std::vector<Entity> entities_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class Provenance { kRule1, kRule2, kRule3, kMatcher };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kRule1: return "rule1";
    case Provenance::kRule2: return "rule2";
    case Provenance::kRule3: return "rule3";
    case Provenance::kMatcher: return "matcher";
  }
  return "?";
}

inline std::optional<Provenance> parse_provenance(std::string_view s) {
  if (s == "rule1") return Provenance::kRule1;
  if (s == "rule2") return Provenance::kRule2;
  if (s == "rule3") return Provenance::kRule3;
  if (s == "matcher") return Provenance::kMatcher;
  return std::nullopt;
}

struct Decision {
  ParentRef parent = ParentRef::root();
  Provenance provenance = Provenance::kMatcher;

  friend bool operator==(const Decision&, const Decision&) = default;
};

// Per-entity parent decisions for one document, keyed by entity id.
using Assignment = std::map<std::string, Decision>;

// Scan order: page, then top edge, then left edge, then id.
inline bool reading_before(const Entity& a, const Entity& b) {
  if (a.page != b.page) return a.page < b.page;
  if (a.bbox.y0 != b.bbox.y0) return a.bbox.y0 < b.bbox.y0;
  if (a.bbox.x0 != b.bbox.x0) return a.bbox.x0 < b.bbox.x0;
  return a.id < b.id;
}

// Entity positions sorted by reading_before.
inline std::vector<std::size_t> reading_order_indices(const Document& doc) {
  std::vector<std::size_t> order(doc.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return reading_before(doc[a], doc[b]); });
  return order;
}

inline std::vector<std::string> reading_order(const Document& doc) {
  std::vector<std::string> ids;
  ids.reserve(doc.size());
  for (std::size_t i : reading_order_indices(doc)) ids.push_back(doc[i].id);
  return ids;
}

// rank[i] = position of entity i in reading order.
inline std::vector<std::size_t> reading_rank(const Document& doc) {
  auto order = reading_order_indices(doc);
  std::vector<std::size_t> rank(doc.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

struct Violation {
  std::string entity_id;  // empty for document-level violations
  std::string rule;

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::vector<Violation> validate_document(const Document& doc) {
  std::vector<Violation> out;
  if (doc.size() == 0) out.push_back({"", "document has no entities"});
  std::unordered_map<std::string, int> seen;
  for (const Entity& e : doc.entities()) {
    if (++seen[e.id] == 2) out.push_back({e.id, "duplicate entity id"});
  }
  for (const Entity& e : doc.entities()) {
    const BBox& b = e.bbox;
    if (!std::isfinite(b.x0) || !std::isfinite(b.y0) || !std::isfinite(b.x1) || !std::isfinite(b.y1)) {
      out.push_back({e.id, "bbox has non-finite coordinate"});
    } else {
      if (b.x0 > b.x1) out.push_back({e.id, "bbox x0 > x1"});
      if (b.y0 > b.y1) out.push_back({e.id, "bbox y0 > y1"});
    }
    if (e.page < 0) out.push_back({e.id, "negative page"});
    if (e.gold_parent && !e.gold_parent->is_root()) {
      if (e.gold_parent->id() == e.id) {
        out.push_back({e.id, "entity is its own gold parent"});
      } else if (!doc.find(e.gold_parent->id())) {
        out.push_back({e.id, "gold parent '" + e.gold_parent->id() + "' not in document"});
      }
    }
  }
  return out;
}

// Checks an assignment against the document it decides.
inline std::vector<Violation> validate_assignment(const Document& doc, const Assignment& a) {
  std::vector<Violation> out;
  for (const auto& [id, d] : a) {
    if (!doc.find(id)) out.push_back({id, "assigned entity not in document"});
    if (d.parent.is_root()) continue;
    if (d.parent.id() == id) out.push_back({id, "entity assigned as its own parent"});
    else if (!doc.find(d.parent.id())) out.push_back({id, "assigned parent not in document"});
  }
  return out;
}

}  // namespace docforest
