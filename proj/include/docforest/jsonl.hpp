#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "docforest/document.hpp"
#include "docforest/error.hpp"

namespace docforest {

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& obj, const char* field, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected a JSON object");
  auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + field + "'");
  return *it;
}

inline std::string require_string(const nlohmann::json& obj, const char* field, const std::string& where) {
  const auto& v = require(obj, field, where);
  if (!v.is_string()) throw ParseError(where + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

}  // namespace detail

// Parses one corpus line and validates it. Unknown categories are admitted.
inline Document parse_document(const nlohmann::json& rec) {
  std::string doc_id = detail::require_string(rec, "doc_id", "document");
  const auto& ents = detail::require(rec, "entities", doc_id);
  if (!ents.is_array()) throw ParseError(doc_id + ": field 'entities' must be an array");

  std::vector<Entity> entities;
  entities.reserve(ents.size());
  for (std::size_t i = 0; i < ents.size(); ++i) {
    const auto& je = ents[i];
    std::string where = doc_id + ".entities[" + std::to_string(i) + "]";
    Entity e;
    e.id = detail::require_string(je, "id", where);
    e.category = Category(detail::require_string(je, "category", where));

    const auto& page = detail::require(je, "page", where);
    if (!page.is_number_integer()) throw ParseError(where + ": field 'page' must be an integer");
    e.page = page.get<std::int64_t>();

    const auto& bbox = detail::require(je, "bbox", where);
    if (!bbox.is_array() || bbox.size() != 4) throw ParseError(where + ": field 'bbox' must be [x0,y0,x1,y1]");
    for (const auto& c : bbox) {
      if (!c.is_number()) throw ParseError(where + ": field 'bbox' must hold numbers");
    }
    e.bbox = {bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(), bbox[3].get<double>()};

    if (auto it = je.find("text"); it != je.end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError(where + ": field 'text' must be a string or null");
      e.text = it->get<std::string>();
    }
    if (auto it = je.find("parent_id"); it != je.end()) {
      if (it->is_null()) {
        e.gold_parent = ParentRef::root();
      } else if (it->is_string()) {
        e.gold_parent = ParentRef::entity(it->get<std::string>());
      } else {
        throw ParseError(where + ": field 'parent_id' must be a string or null");
      }
    }
    entities.push_back(std::move(e));
  }

  Document doc(std::move(doc_id), std::move(entities));
  auto violations = validate_document(doc);
  if (!violations.empty()) {
    std::string msg = doc.doc_id() + ": invalid document:";
    for (const auto& v : violations) msg += " [" + (v.entity_id.empty() ? "-" : v.entity_id) + ": " + v.rule + "]";
    throw ValidationError(msg);
  }
  return doc;
}

inline Document parse_document(const std::string& line) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_document(rec);
}

inline Document parse_document(const char* line) { return parse_document(std::string(line)); }

inline nlohmann::json to_json(const Document& doc) {
  nlohmann::json ents = nlohmann::json::array();
  for (const Entity& e : doc.entities()) {
    nlohmann::json je;
    je["id"] = e.id;
    je["category"] = e.category.name();
    je["page"] = e.page;
    je["bbox"] = {e.bbox.x0, e.bbox.y0, e.bbox.x1, e.bbox.y1};
    je["text"] = e.text ? nlohmann::json(*e.text) : nlohmann::json(nullptr);
    if (e.gold_parent) {
      je["parent_id"] = e.gold_parent->is_root() ? nlohmann::json(nullptr) : nlohmann::json(e.gold_parent->id());
    }
    ents.push_back(std::move(je));
  }
  nlohmann::json rec;
  rec["doc_id"] = doc.doc_id();
  rec["entities"] = std::move(ents);
  return rec;
}

inline std::string serialize_document(const Document& doc) { return to_json(doc).dump(); }

inline std::vector<Document> read_corpus(std::istream& in) {
  std::vector<Document> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      docs.push_back(parse_document(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return docs;
}

inline std::vector<Document> read_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_corpus(in);
}

inline void write_corpus(std::ostream& out, const std::vector<Document>& docs) {
  for (const auto& d : docs) out << serialize_document(d) << '\n';
}

// One line of prediction output.
struct PredictionRecord {
  std::string doc_id;
  std::string entity_id;
  Decision decision;
};

inline void write_predictions(std::ostream& out, const Document& doc, const Assignment& a) {
  // Entities are written in input order so output is stable across runs.
  for (const Entity& e : doc.entities()) {
    const Decision& d = a.at(e.id);
    nlohmann::json rec;
    rec["doc_id"] = doc.doc_id();
    rec["entity_id"] = e.id;
    rec["parent_id"] = d.parent.is_root() ? nlohmann::json(nullptr) : nlohmann::json(d.parent.id());
    rec["provenance"] = to_string(d.provenance);
    out << rec.dump() << '\n';
  }
}

inline PredictionRecord parse_prediction(const std::string& line) {
  nlohmann::json rec;
  try {
    rec = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  PredictionRecord p;
  p.doc_id = detail::require_string(rec, "doc_id", "prediction");
  p.entity_id = detail::require_string(rec, "entity_id", "prediction");
  const auto& parent = detail::require(rec, "parent_id", "prediction");
  if (parent.is_null()) p.decision.parent = ParentRef::root();
  else if (parent.is_string()) p.decision.parent = ParentRef::entity(parent.get<std::string>());
  else throw ParseError("prediction: field 'parent_id' must be a string or null");
  auto prov = parse_provenance(detail::require_string(rec, "provenance", "prediction"));
  if (!prov) throw ParseError("prediction: unknown provenance");
  p.decision.provenance = *prov;
  return p;
}

inline std::vector<PredictionRecord> read_predictions(std::istream& in) {
  std::vector<PredictionRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_prediction(line));
  }
  return out;
}

}  // namespace docforest
