#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "docforest/document.hpp"
#include "docforest/error.hpp"
#include "docforest/jsonl.hpp"
#include "docforest/model.hpp"
#include "docforest/pipeline.hpp"
#include "docforest/synth.hpp"

namespace docforest {

// Predictions for a corpus, keyed by doc_id.
using CorpusPredictions = std::map<std::string, Assignment>;

inline CorpusPredictions group_predictions(const std::vector<PredictionRecord>& records) {
  CorpusPredictions out;
  for (const auto& r : records) out[r.doc_id][r.entity_id] = r.decision;
  return out;
}

// Selects which labeled entities are scored. Unset scores all of them.
using EntityFilter = std::function<bool(const Document&, const Entity&)>;

inline EntityFilter category_filter(std::set<std::string> names) {
  return [names = std::move(names)](const Document&, const Entity& e) { return names.count(e.category.name()) > 0; };
}

struct AccuracyResult {
  std::size_t correct = 0;
  std::size_t total = 0;
  double value() const { return total ? static_cast<double>(correct) / static_cast<double>(total) : 0.0; }
};

// Fraction of labeled entities whose predicted parent equals the gold one.
// ROOT matches only an explicit null label; unlabeled entities are skipped.
inline AccuracyResult accuracy_counts(const CorpusPredictions& preds, const std::vector<Document>& gold,
                                      const EntityFilter& filter = {}) {
  AccuracyResult r;
  std::vector<std::string> missing;
  for (const Document& doc : gold) {
    auto it = preds.find(doc.doc_id());
    for (const Entity& e : doc.entities()) {
      if (!e.gold_parent) continue;
      if (filter && !filter(doc, e)) continue;
      const Decision* d = nullptr;
      if (it != preds.end()) {
        auto jt = it->second.find(e.id);
        if (jt != it->second.end()) d = &jt->second;
      }
      if (!d) {
        missing.push_back(doc.doc_id() + "/" + e.id);
        continue;
      }
      ++r.total;
      if (d->parent == *e.gold_parent) ++r.correct;
    }
  }
  if (!missing.empty()) {
    std::string msg = "missing predictions for " + std::to_string(missing.size()) + " labeled entities:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw ValidationError(msg);
  }
  return r;
}

inline double accuracy(const CorpusPredictions& preds, const std::vector<Document>& gold,
                       const EntityFilter& filter = {}) {
  return accuracy_counts(preds, gold, filter).value();
}

inline CorpusPredictions predict_corpus(const std::vector<Document>& docs, const MatchModel& model,
                                        const ParseOptions& opts) {
  CorpusPredictions out;
  for (const auto& d : docs) out[d.doc_id()] = parse_hierarchy(d, model, opts);
  return out;
}

struct SplitScores {
  double val = 0;
  double test = 0;
};

struct MethodComparison {
  SplitScores loss_only;
  SplitScores loss_greedy;
};

inline MethodComparison compare_methods(const CorpusSplit& corpus, const MatchModel& model,
                                        const EntityFilter& filter = {}, const EmbeddingTable* external = nullptr) {
  MethodComparison r;
  for (bool rules : {false, true}) {
    ParseOptions opts{rules, external};
    SplitScores& s = rules ? r.loss_greedy : r.loss_only;
    s.val = accuracy(predict_corpus(corpus.val, model, opts), corpus.val, filter);
    s.test = accuracy(predict_corpus(corpus.test, model, opts), corpus.test, filter);
  }
  return r;
}

inline nlohmann::json to_json(const MethodComparison& c) {
  return {{"loss_only", {{"val", c.loss_only.val}, {"test", c.loss_only.test}}},
          {"loss_greedy", {{"val", c.loss_greedy.val}, {"test", c.loss_greedy.test}}}};
}

inline MethodComparison comparison_from_json(const nlohmann::json& j) {
  MethodComparison c;
  try {
    c.loss_only = {j.at("loss_only").at("val").get<double>(), j.at("loss_only").at("test").get<double>()};
    c.loss_greedy = {j.at("loss_greedy").at("val").get<double>(), j.at("loss_greedy").at("test").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("comparison report: ") + e.what());
  }
  return c;
}

inline std::string format_table(const MethodComparison& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "Method        | val      | test\n"
                "--------------+----------+---------\n"
                "loss only     | %.5f  | %.5f\n"
                "loss+greedy   | %.5f  | %.5f\n",
                c.loss_only.val, c.loss_only.test, c.loss_greedy.val, c.loss_greedy.test);
  return buf;
}

}  // namespace docforest
