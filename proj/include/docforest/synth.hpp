#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "docforest/category.hpp"
#include "docforest/document.hpp"
#include "docforest/error.hpp"
#include "docforest/jsonl.hpp"
#include "docforest/random.hpp"
#include "docforest/rules.hpp"

namespace docforest {

// Category label of the matcher-only blocks the generator emits.
inline constexpr std::string_view kNoteCategory = "note";

struct GenConfig {
  std::size_t num_docs = 250;
  std::size_t entities_min = 20;
  std::size_t entities_max = 60;
  std::size_t pages_min = 2;
  std::size_t pages_max = 6;
  std::uint64_t seed = 42;
  double matcher_fraction = 0.3;
  double layout_noise = 0.002;

  void validate() const {
    if (num_docs == 0) throw ConfigError("num_docs must be positive");
    if (entities_min < 1 || entities_min > entities_max) throw ConfigError("entities_per_doc range is empty");
    if (pages_min < 1 || pages_min > pages_max) throw ConfigError("pages_per_doc range is empty");
    if (!(matcher_fraction >= 0 && matcher_fraction <= 1)) throw ConfigError("matcher_fraction must be in [0,1]");
    if (!(layout_noise >= 0) || !std::isfinite(layout_noise)) throw ConfigError("layout_noise must be >= 0");
  }
};

inline nlohmann::json to_json(const GenConfig& c) {
  return {{"num_docs", c.num_docs},
          {"entities_per_doc", {c.entities_min, c.entities_max}},
          {"pages_per_doc", {c.pages_min, c.pages_max}},
          {"seed", c.seed},
          {"matcher_fraction", c.matcher_fraction},
          {"layout_noise", c.layout_noise}};
}

// Missing keys keep their defaults.
inline GenConfig gen_config_from_json(const nlohmann::json& j) {
  GenConfig c;
  try {
    if (j.contains("num_docs")) c.num_docs = j.at("num_docs").get<std::size_t>();
    if (j.contains("entities_per_doc")) {
      auto r = j.at("entities_per_doc").get<std::array<std::size_t, 2>>();
      c.entities_min = r[0];
      c.entities_max = r[1];
    }
    if (j.contains("pages_per_doc")) {
      auto r = j.at("pages_per_doc").get<std::array<std::size_t, 2>>();
      c.pages_min = r[0];
      c.pages_max = r[1];
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("matcher_fraction")) c.matcher_fraction = j.at("matcher_fraction").get<double>();
    if (j.contains("layout_noise")) c.layout_noise = j.at("layout_noise").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("generator config: ") + e.what());
  }
  c.validate();
  return c;
}

struct CorpusSplit {
  std::vector<Document> train;
  std::vector<Document> val;
  std::vector<Document> test;
};

namespace synth {

// Page geometry in pixels (A4 at 150 dpi).
inline constexpr double kPageWidth = 1240;
inline constexpr double kPageHeight = 1754;
inline constexpr double kMarginX = 120;
inline constexpr double kMarginY = 110;
inline constexpr double kGap = 18;
// Notes sit at most this many blocks below the heading they were placed after.
inline constexpr std::int64_t kMaxNoteOffset = 2;
// Keywords per heading.
inline constexpr int kTopicWords = 2;

inline constexpr std::array<std::string_view, 103> kWords = {
    "ore", "grade", "drilling", "tonnes", "assay", "deposit", "mineral", "resource",
    "tenement", "exploration", "sample", "gold", "copper", "nickel", "hole", "depth",
    "interval", "geology", "survey", "licence", "estimate", "reserve", "program", "results",
    "shaft", "tailings", "processing", "recovery", "metallurgy", "project", "area", "site",
    "quarterly", "annual", "water", "environment", "rehabilitation", "core", "trench", "anomaly",
    "lithium", "zinc", "silver", "cobalt", "iron", "bauxite", "uranium", "coal",
    "seam", "pit", "stope", "decline", "portal", "haulage", "crusher", "mill",
    "flotation", "leach", "heap", "concentrate", "smelter", "refinery", "royalty", "permit",
    "heritage", "native", "title", "lease", "boundary", "grid", "magnetic", "gravity",
    "seismic", "soil", "stream", "sediment", "rock", "chip", "geochemical", "geophysical",
    "airborne", "ground", "reverse", "circulation", "diamond", "aircore", "collar", "azimuth",
    "dip", "logging", "density", "moisture", "hydrology", "groundwater", "bore", "dewatering",
    "closure", "stakeholder", "safety", "incident", "budget", "expenditure", "forecast",
};

inline constexpr std::array<std::string_view, 24> kFillerWords = {
    "see",      "refer",   "values",  "reported", "below",   "above",   "as",       "per",
    "figures",  "are",     "subject", "to",       "change",  "includes", "excludes", "only",
    "subject",  "revised", "pending", "review",   "approx",  "where",   "applicable", "data"};

struct Block {
  Category category;
  std::optional<std::string> text;
  double height = 0;
  double x0 = 0;
  double width = 0;
  int group = -1;                   // blocks sharing a group never split across pages
  std::optional<std::size_t> link;  // construction parent (captions)
  bool note = false;
  std::vector<std::string_view> topic;  // heading keywords; notes echo their parent's
};

inline std::string words(Rng& rng, int lo, int hi) {
  int n = static_cast<int>(rng.range(lo, hi));
  std::string s;
  for (int i = 0; i < n; ++i) {
    if (i) s += ' ';
    s += kWords[static_cast<std::size_t>(rng.range(0, kWords.size() - 1))];
  }
  return s;
}

inline std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

class DocumentBuilder {
 public:
  DocumentBuilder(Rng rng, const GenConfig& cfg, std::string doc_id)
      : rng_(std::move(rng)), cfg_(cfg), doc_id_(std::move(doc_id)) {}

  Document build() {
    const auto n_total = static_cast<std::size_t>(rng_.range(static_cast<std::int64_t>(cfg_.entities_min),
                                                            static_cast<std::int64_t>(cfg_.entities_max)));
    pages_ = static_cast<std::size_t>(
        rng_.range(static_cast<std::int64_t>(cfg_.pages_min), static_cast<std::int64_t>(cfg_.pages_max)));
    auto n_notes = static_cast<std::size_t>(std::llround(cfg_.matcher_fraction * static_cast<double>(n_total)));
    n_notes = std::min(n_notes, n_total > 2 ? n_total - 2 : 0);
    emit_structure(n_total - n_notes);
    insert_notes(n_notes);
    layout();
    return finish();
  }

 private:
  std::size_t add(KnownCategory c, std::optional<std::string> text, double h, double x0, double w, int group = -1) {
    Block b;
    b.category = Category(c);
    b.text = std::move(text);
    b.height = h;
    b.x0 = x0;
    b.width = w;
    b.group = group;
    blocks_.push_back(std::move(b));
    return blocks_.size() - 1;
  }

  std::string heading_text(int level) {
    ++numbering_[static_cast<std::size_t>(level - 1)];
    for (std::size_t k = static_cast<std::size_t>(level); k < numbering_.size(); ++k) numbering_[k] = 0;
    std::string num;
    for (int k = 0; k < level; ++k) {
      if (k) num += '.';
      num += std::to_string(std::max(1, numbering_[static_cast<std::size_t>(k)]));
    }
    topic_.clear();
    for (int k = 0; k < kTopicWords; ++k) topic_.push_back(kWords[static_cast<std::size_t>(rng_.range(0, kWords.size() - 1))]);
    std::string text = num;
    for (auto w : topic_) text += " " + capitalized(std::string(w));
    return text;
  }

  void heading(int level) {
    static constexpr std::array<KnownCategory, 4> kLevels = {KnownCategory::kSection, KnownCategory::kSubsection,
                                                             KnownCategory::kSubsubsection,
                                                             KnownCategory::kSubsubsubsection};
    double h = 44.0 - 4.0 * level + rng_.uniform(0, 6);
    auto i = add(kLevels[static_cast<std::size_t>(level - 1)], heading_text(level), h, kMarginX,
                 rng_.uniform(260, 760));
    blocks_[i].topic = topic_;
    depth_ = level;
  }

  double full_width() { return kPageWidth - 2 * kMarginX - rng_.uniform(0, 40); }

  void emit_structure(std::size_t budget) {
    auto left = [&] { return budget - std::min(budget, blocks_.size()); };

    add(KnownCategory::kReportTitle, capitalized(words(rng_, 3, 7)), rng_.uniform(60, 90), kMarginX + 80,
        rng_.uniform(600, 900));
    if (left() > 6 && rng_.bernoulli(0.4)) {
      add(KnownCategory::kTableOfContents, "Contents " + words(rng_, 10, 30), rng_.uniform(200, 420), kMarginX,
          full_width());
    }
    if (left() > 6 && rng_.bernoulli(0.5)) {
      add(rng_.bernoulli(0.5) ? KnownCategory::kSummary : KnownCategory::kAbstract,
          capitalized(words(rng_, 20, 60)), rng_.uniform(120, 260), kMarginX, full_width());
    }
    if (left() > 0) heading(1);

    std::size_t float_groups = 0;  // figures + tables; at most one of each per page
    int group = 0;
    while (left() > 0) {
      double r = rng_.uniform();
      std::size_t room = left();
      if (r < 0.14) {
        // Heading: never more than one level deeper than the current one.
        int max_level = std::min(4, depth_ + 1);
        heading(static_cast<int>(rng_.range(1, max_level)));
      } else if (r < 0.58) {
        add(KnownCategory::kParagraph, capitalized(words(rng_, 15, 80)) + ".", rng_.uniform(60, 220), kMarginX,
            full_width());
      } else if (r < 0.66) {
        add(KnownCategory::kList, "- " + words(rng_, 4, 10) + "\n- " + words(rng_, 4, 10), rng_.uniform(60, 160),
            kMarginX + 30, full_width() - 30);
      } else if (r < 0.74 && float_groups < pages_) {
        ++float_groups;
        ++group;
        double w = rng_.uniform(500, 900);
        double x0 = (kPageWidth - w) / 2;
        auto fig = add(KnownCategory::kFigure, std::nullopt, rng_.uniform(280, 520), x0, w, group);
        if (room >= 2 && rng_.bernoulli(0.8)) {
          ++figures_;
          auto cap = add(KnownCategory::kFigureCaption, "Figure " + std::to_string(figures_) + ": " + words(rng_, 3, 9),
                         rng_.uniform(24, 40), kMarginX + 60, rng_.uniform(400, 800), group);
          blocks_[cap].link = fig;
        }
      } else if (r < 0.81 && float_groups < pages_) {
        ++float_groups;
        ++group;
        std::optional<std::size_t> cap;
        if (room >= 2 && rng_.bernoulli(0.8)) {
          ++tables_;
          cap = add(KnownCategory::kTableCaption, "Table " + std::to_string(tables_) + ": " + words(rng_, 3, 9),
                    rng_.uniform(24, 40), kMarginX + 60, rng_.uniform(400, 800), group);
        }
        auto tab = add(KnownCategory::kTable, words(rng_, 10, 40), rng_.uniform(180, 420), kMarginX, full_width(),
                       group);
        if (cap) blocks_[*cap].link = tab;
      } else if (r < 0.88) {
        ++group;
        if (room >= 2 && rng_.bernoulli(0.6)) {
          add(KnownCategory::kFormTitle, capitalized(words(rng_, 2, 4)) + " form", rng_.uniform(30, 44), kMarginX,
              rng_.uniform(300, 600), group);
          std::size_t bodies = std::min<std::size_t>(room - 1, static_cast<std::size_t>(rng_.range(1, 2)));
          for (std::size_t k = 0; k < bodies; ++k) {
            add(KnownCategory::kFormBody, capitalized(words(rng_, 1, 2)) + ": " + words(rng_, 1, 3),
                rng_.uniform(60, 150), kMarginX, full_width(), group);
          }
        } else {
          add(KnownCategory::kForm, capitalized(words(rng_, 4, 12)), rng_.uniform(150, 300), kMarginX, full_width());
        }
      } else if (r < 0.92) {
        add(KnownCategory::kFormBody, capitalized(words(rng_, 1, 2)) + ": " + words(rng_, 1, 3),
            rng_.uniform(60, 150), kMarginX, full_width());
      } else {
        static constexpr std::array<KnownCategory, 7> kMisc = {
            KnownCategory::kOther,         KnownCategory::kCross,         KnownCategory::kReferences,
            KnownCategory::kAppendixList,  KnownCategory::kListOfFigures, KnownCategory::kListOfTables,
            KnownCategory::kTitle};
        auto c = kMisc[static_cast<std::size_t>(rng_.range(0, kMisc.size() - 1))];
        add(c, capitalized(words(rng_, 2, 12)), rng_.uniform(30, 160), kMarginX, full_width());
      }
    }
    blocks_.resize(std::min(blocks_.size(), budget));
    // A trailing caption whose table was truncated away loses its link.
    for (auto& b : blocks_) {
      if (b.link && *b.link >= blocks_.size()) b.link.reset();
    }
  }

  // Each note lands a few blocks after some heading, never inside a group.
  void insert_notes(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<std::size_t> headings;
      for (std::size_t i = 0; i < blocks_.size(); ++i) {
        int level = default_rule_config().chain_level(blocks_[i].category);
        if (level >= 1 && level <= 4) headings.push_back(i);
      }
      if (headings.empty()) return;
      std::size_t pos = headings[static_cast<std::size_t>(rng_.range(0, static_cast<std::int64_t>(headings.size()) - 1))] + 1;
      for (auto skip = rng_.range(0, kMaxNoteOffset); skip > 0 && pos < blocks_.size(); --skip) ++pos;
      while (pos < blocks_.size() && blocks_[pos].group >= 0 && blocks_[pos - 1].group == blocks_[pos].group) ++pos;
      Block b;
      b.category = Category(std::string(kNoteCategory));
      b.height = rng_.uniform(36, 90);
      b.x0 = kMarginX + 40;
      b.width = rng_.uniform(500, 900);
      b.note = true;
      for (auto& other : blocks_) {
        if (other.link && *other.link >= pos) ++*other.link;
      }
      blocks_.insert(blocks_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(b));
    }
  }

  void layout() {
    // Units: maximal runs of blocks sharing a group id.
    std::vector<std::pair<std::size_t, std::size_t>> units;  // [begin, end)
    for (std::size_t i = 0; i < blocks_.size();) {
      std::size_t j = i + 1;
      while (j < blocks_.size() && blocks_[i].group >= 0 && blocks_[j].group == blocks_[i].group) ++j;
      units.emplace_back(i, j);
      i = j;
    }
    auto has = [&](std::size_t u, KnownCategory c) {
      for (std::size_t b = units[u].first; b < units[u].second; ++b) {
        if (blocks_[b].category.is(c)) return true;
      }
      return false;
    };

    // Required cuts keep at most one figure and one table per page.
    std::set<std::size_t> cuts;  // a cut at u starts a new page with unit u
    bool fig = false, tab = false;
    for (std::size_t u = 0; u < units.size(); ++u) {
      bool uf = has(u, KnownCategory::kFigure), ut = has(u, KnownCategory::kTable);
      if ((uf && fig) || (ut && tab)) {
        cuts.insert(u);
        fig = tab = false;
      }
      fig = fig || uf;
      tab = tab || ut;
    }
    // Fill up to the target page count with evenly spread cuts.
    std::size_t want = std::min(pages_, units.size()) - 1;
    for (std::size_t k = 1; k < pages_ && cuts.size() < want; ++k) {
      auto ideal = static_cast<std::size_t>(std::llround(static_cast<double>(k * units.size()) / pages_));
      for (std::size_t d = 0; d < units.size() && cuts.size() < want; ++d) {
        if (ideal + d >= 1 && ideal + d < units.size() && cuts.insert(ideal + d).second) break;
        if (ideal >= d + 1 && ideal - d < units.size() && cuts.insert(ideal - d).second) break;
      }
    }

    std::vector<std::vector<std::size_t>> pages(1);
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (cuts.count(u)) pages.emplace_back();
      for (std::size_t b = units[u].first; b < units[u].second; ++b) pages.back().push_back(b);
    }

    page_of_.assign(blocks_.size(), 0);
    boxes_.assign(blocks_.size(), BBox{});
    const double usable = kPageHeight - 2 * kMarginY;
    const double max_jx = cfg_.layout_noise * kPageWidth;
    const double max_jy = std::min(cfg_.layout_noise * kPageHeight, kGap / 3);
    for (std::size_t p = 0; p < pages.size(); ++p) {
      double total = 0;
      for (auto b : pages[p]) total += blocks_[b].height;
      double gaps = kGap * static_cast<double>(pages[p].size() - 1);
      double scale = total + gaps > usable ? (usable - gaps) / total : 1.0;
      double y = kMarginY;
      for (auto b : pages[p]) {
        const Block& blk = blocks_[b];
        double h = blk.height * scale;
        double jx = rng_.uniform(-max_jx, max_jx);
        double jy = rng_.uniform(-max_jy, max_jy);
        double x0 = std::clamp(blk.x0 + jx, 0.0, kPageWidth - blk.width);
        boxes_[b] = {x0, y + jy, x0 + blk.width, y + jy + h};
        page_of_[b] = p;
        y += h + kGap;
      }
    }
  }

  Document finish() {
    const RuleConfig& rules = default_rule_config();
    const std::size_t n = blocks_.size();
    std::vector<std::string> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "e%03zu", i);
      ids[i] = buf;
    }

    std::vector<Entity> entities(n);
    // Latest block (in flow order) of each known category seen so far.
    std::array<std::optional<std::size_t>, kNumKnownCategories> latest{};
    std::array<std::optional<std::size_t>, 6> chain_latest{};
    for (std::size_t i = 0; i < n; ++i) {
      const Block& b = blocks_[i];
      Entity& e = entities[i];
      e.id = ids[i];
      e.category = b.category;
      e.page = static_cast<std::int64_t>(page_of_[i]);
      e.bbox = boxes_[i];
      e.text = b.text;

      std::optional<std::size_t> parent;
      int level = rules.chain_level(b.category);
      if (b.note) {
        parent = nearest_heading_above(i);
        e.text = note_text(parent ? blocks_[*parent].topic : std::vector<std::string_view>{});
      } else if (rules.is_no_parent(b.category)) {
        parent.reset();
      } else if (level >= 2) {
        for (int k = 1; k < level; ++k) {
          if (chain_latest[k] && (!parent || *chain_latest[k] > *parent)) parent = chain_latest[k];
        }
      } else if (b.link) {
        parent = b.link;
      } else if (const auto* allowed = rules.allowed_parents(b.category)) {
        for (auto c : *allowed) {
          auto l = latest[static_cast<std::size_t>(c)];
          if (l && (!parent || *l > *parent)) parent = l;
        }
      }
      e.gold_parent = parent ? ParentRef::entity(ids[*parent]) : ParentRef::root();

      if (b.category.is_known()) latest[static_cast<std::size_t>(*b.category.known())] = i;
      if (level > 0) chain_latest[level] = i;
    }
    rng_.shuffle(entities);
    return Document(doc_id_, std::move(entities));
  }

  // Notes mention the keywords of the heading they annotate among filler words.
  std::string note_text(const std::vector<std::string_view>& topic) {
    std::string s = "Note:";
    int filler = static_cast<int>(rng_.range(2, 8));
    std::size_t next_topic = 0;
    for (int k = 0; k < filler || next_topic < topic.size(); ++k) {
      bool use_topic = next_topic < topic.size() && (k >= filler || rng_.bernoulli(0.4));
      s += ' ';
      s += use_topic ? topic[next_topic++]
                     : kFillerWords[static_cast<std::size_t>(rng_.range(0, kFillerWords.size() - 1))];
    }
    return s;
  }

  // Section-family heading (levels 1-4) before block i whose center is
  // nearest, with pages stacked vertically.
  std::optional<std::size_t> nearest_heading_above(std::size_t i) const {
    auto gy = [&](std::size_t b) { return static_cast<double>(page_of_[b]) * kPageHeight + boxes_[b].center_y(); };
    std::optional<std::size_t> best;
    double best_d = 0;
    for (std::size_t j = 0; j < i; ++j) {
      int level = default_rule_config().chain_level(blocks_[j].category);
      if (level < 1 || level > 4) continue;
      double d = std::hypot(boxes_[j].center_x() - boxes_[i].center_x(), gy(j) - gy(i));
      if (!best || d <= best_d) {
        best = j;
        best_d = d;
      }
    }
    return best;
  }

  Rng rng_;
  const GenConfig& cfg_;
  std::string doc_id_;
  std::size_t pages_ = 1;
  std::vector<Block> blocks_;
  std::vector<std::size_t> page_of_;
  std::vector<BBox> boxes_;
  std::array<int, 4> numbering_{};
  std::vector<std::string_view> topic_;
  int depth_ = 1;
  int figures_ = 0;
  int tables_ = 0;
};

}  // namespace synth

inline Document generate_document(Rng rng, const GenConfig& cfg, std::string doc_id) {
  return synth::DocumentBuilder(std::move(rng), cfg, std::move(doc_id)).build();
}

// Labeled synthetic corpus split 70/15/15 by document. Each document draws
// from its own stream forked off the seed.
inline CorpusSplit generate_corpus(const GenConfig& cfg) {
  cfg.validate();
  Rng master(cfg.seed);
  std::vector<Document> docs;
  docs.reserve(cfg.num_docs);
  for (std::size_t d = 0; d < cfg.num_docs; ++d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "doc_%05zu", d);
    docs.push_back(generate_document(master.fork(d), cfg, buf));
  }

  std::vector<std::size_t> order(docs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  master.shuffle(order);
  std::size_t n_train = docs.size() * 70 / 100;
  std::size_t n_val = docs.size() * 15 / 100;
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::sort(order.begin() + static_cast<std::ptrdiff_t>(n_train),
            order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  std::sort(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), order.end());

  CorpusSplit split;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& dst = k < n_train ? split.train : (k < n_train + n_val ? split.val : split.test);
    dst.push_back(std::move(docs[order[k]]));
  }
  return split;
}

inline nlohmann::json manifest(const GenConfig& cfg, const CorpusSplit& split) {
  auto ids = [](const std::vector<Document>& docs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& d : docs) a.push_back(d.doc_id());
    return a;
  };
  return {{"seed", cfg.seed},
          {"config", to_json(cfg)},
          {"split", {{"train", ids(split.train)}, {"val", ids(split.val)}, {"test", ids(split.test)}}}};
}

// Writes train.jsonl, val.jsonl, test.jsonl and manifest.json into `dir`.
inline void write_corpus_dir(const std::string& dir, const GenConfig& cfg, const CorpusSplit& split) {
  std::filesystem::create_directories(dir);
  auto write = [&](const char* name, const std::vector<Document>& docs) {
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw ConfigError("cannot write into " + dir);
    write_corpus(out, docs);
  };
  write("train.jsonl", split.train);
  write("val.jsonl", split.val);
  write("test.jsonl", split.test);
  std::ofstream out(std::filesystem::path(dir) / "manifest.json");
  out << manifest(cfg, split).dump(2) << '\n';
}

inline CorpusSplit read_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  auto read = [&](const char* name) {
    auto p = fs::path(dir) / name;
    return fs::exists(p) ? read_corpus_file(p.string()) : std::vector<Document>{};
  };
  CorpusSplit s{read("train.jsonl"), read("val.jsonl"), read("test.jsonl")};
  if (s.train.empty() && s.val.empty() && s.test.empty()) throw ParseError("no corpus files in " + dir);
  return s;
}

}  // namespace docforest
