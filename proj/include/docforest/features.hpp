#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "docforest/category.hpp"
#include "docforest/document.hpp"
#include "docforest/error.hpp"

namespace docforest {

// Feature layout, in order:
//   [0, 10)              geometry: page_norm, x0, y0, x1, y1, width, height,
//                        center_x, center_y, text_length_norm
//   [10, 35)             category one-hot (24 known + unknown bucket)
//   [35, 35 + hash_dim)  hashed character n-grams, L2-normalized
// Disabled blocks are zero-filled so the dimension never changes.
struct FeatureConfig {
  std::size_t text_hash_dim = 64;
  std::set<int> ngram_sizes = {2, 3};
  bool include_geometry = true;
  bool category_onehot = true;

  static constexpr std::size_t kGeometryDim = 10;
  static constexpr std::size_t kCategoryDim = kNumKnownCategories + 1;

  std::size_t dim() const { return kGeometryDim + kCategoryDim + text_hash_dim; }
  std::size_t hash_offset() const { return kGeometryDim + kCategoryDim; }

  void validate() const {
    if (text_hash_dim < 1) throw ConfigError("text_hash_dim must be >= 1");
    for (int n : ngram_sizes) {
      if (n < 1) throw ConfigError("n-gram sizes must be >= 1");
    }
  }

  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

inline nlohmann::json to_json(const FeatureConfig& c) {
  return {{"text_hash_dim", c.text_hash_dim},
          {"ngram_sizes", std::vector<int>(c.ngram_sizes.begin(), c.ngram_sizes.end())},
          {"include_geometry", c.include_geometry},
          {"category_onehot", c.category_onehot}};
}

inline FeatureConfig feature_config_from_json(const nlohmann::json& j) {
  FeatureConfig c;
  try {
    c.text_hash_dim = j.at("text_hash_dim").get<std::size_t>();
    auto sizes = j.at("ngram_sizes").get<std::vector<int>>();
    c.ngram_sizes = std::set<int>(sizes.begin(), sizes.end());
    c.include_geometry = j.at("include_geometry").get<bool>();
    c.category_onehot = j.at("category_onehot").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("feature_config: ") + e.what());
  }
  c.validate();
  return c;
}

// Text lengths saturate at this many bytes.
inline constexpr double kTextLengthScale = 500.0;

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counts of character n-grams hashed into `dim` buckets, then L2-normalized.
// Empty text yields the zero vector.
inline std::vector<double> hash_ngrams(std::string_view text, const std::set<int>& sizes, std::size_t dim) {
  std::vector<double> v(dim, 0.0);
  for (int n : sizes) {
    auto len = static_cast<std::size_t>(n);
    if (text.size() < len) continue;
    for (std::size_t i = 0; i + len <= text.size(); ++i) {
      v[fnv1a(text.substr(i, len), static_cast<std::uint64_t>(n)) % dim] += 1.0;
    }
  }
  double norm = 0;
  for (double x : v) norm += x * x;
  if (norm > 0) {
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

// Externally computed text embeddings that replace the hash block, keyed by
// (doc_id, entity_id).
class EmbeddingTable {
 public:
  void add(std::string doc_id, std::string entity_id, std::vector<double> emb) {
    table_[{std::move(doc_id), std::move(entity_id)}] = std::move(emb);
  }

  const std::vector<double>* find(const std::string& doc_id, const std::string& entity_id) const {
    auto it = table_.find({doc_id, entity_id});
    return it == table_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return table_.size(); }

  // Every embedding must match the hash block width.
  void check_dim(std::size_t dim) const {
    for (const auto& [key, emb] : table_) {
      if (emb.size() != dim) {
        throw ConfigError("embedding for " + key.first + "/" + key.second + " has dimension " +
                          std::to_string(emb.size()) + ", expected " + std::to_string(dim));
      }
    }
  }

 private:
  std::map<std::pair<std::string, std::string>, std::vector<double>> table_;
};

inline EmbeddingTable read_embeddings(std::istream& in) {
  EmbeddingTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      t.add(j.at("doc_id").get<std::string>(), j.at("entity_id").get<std::string>(),
            j.at("embedding").get<std::vector<double>>());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("embeddings line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return t;
}

inline EmbeddingTable read_embeddings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_embeddings(in);
}

// Per-page extents (max x1, max y1) and the largest page index of a document.
struct PageExtents {
  std::map<std::int64_t, std::pair<double, double>> extent;
  std::int64_t max_page = 0;

  explicit PageExtents(const Document& doc) {
    for (const Entity& e : doc.entities()) {
      auto [it, inserted] = extent.try_emplace(e.page, e.bbox.x1, e.bbox.y1);
      if (!inserted) {
        it->second.first = std::max(it->second.first, e.bbox.x1);
        it->second.second = std::max(it->second.second, e.bbox.y1);
      }
      max_page = std::max(max_page, e.page);
    }
  }
};

inline std::vector<double> build_feature_vector(const Entity& entity, const PageExtents& pages,
                                                const FeatureConfig& cfg,
                                                const std::vector<double>* external = nullptr) {
  std::vector<double> x(cfg.dim(), 0.0);

  if (cfg.include_geometry) {
    auto [w, h] = pages.extent.at(entity.page);
    auto nx = [w = w](double v) { return w > 0 ? v / w : 0.0; };
    auto ny = [h = h](double v) { return h > 0 ? v / h : 0.0; };
    const BBox& b = entity.bbox;
    x[0] = static_cast<double>(entity.page) / static_cast<double>(std::max<std::int64_t>(1, pages.max_page));
    x[1] = nx(b.x0);
    x[2] = ny(b.y0);
    x[3] = nx(b.x1);
    x[4] = ny(b.y1);
    x[5] = nx(b.width());
    x[6] = ny(b.height());
    x[7] = nx(b.center_x());
    x[8] = ny(b.center_y());
    std::size_t len = entity.text ? entity.text->size() : 0;
    x[9] = std::min(1.0, static_cast<double>(len) / kTextLengthScale);
  }

  if (cfg.category_onehot) x[FeatureConfig::kGeometryDim + entity.category.index()] = 1.0;

  std::size_t off = cfg.hash_offset();
  if (external) {
    if (external->size() != cfg.text_hash_dim) {
      throw ConfigError("external embedding for '" + entity.id + "' has wrong dimension");
    }
    std::copy(external->begin(), external->end(), x.begin() + static_cast<std::ptrdiff_t>(off));
  } else if (entity.text && !entity.text->empty()) {
    auto hashed = hash_ngrams(*entity.text, cfg.ngram_sizes, cfg.text_hash_dim);
    std::copy(hashed.begin(), hashed.end(), x.begin() + static_cast<std::ptrdiff_t>(off));
  }
  return x;
}

inline std::vector<double> build_feature_vector(const Entity& entity, const Document& doc, const FeatureConfig& cfg,
                                                const EmbeddingTable* embeddings = nullptr) {
  const std::vector<double>* ext = embeddings ? embeddings->find(doc.doc_id(), entity.id) : nullptr;
  return build_feature_vector(entity, PageExtents(doc), cfg, ext);
}

// Feature vectors for every entity of a document, in entity order.
inline std::vector<std::vector<double>> build_document_features(const Document& doc, const FeatureConfig& cfg,
                                                                const EmbeddingTable* embeddings = nullptr) {
  PageExtents pages(doc);
  std::vector<std::vector<double>> out;
  out.reserve(doc.size());
  for (const Entity& e : doc.entities()) {
    const std::vector<double>* ext = embeddings ? embeddings->find(doc.doc_id(), e.id) : nullptr;
    out.push_back(build_feature_vector(e, pages, cfg, ext));
  }
  return out;
}

}  // namespace docforest
