#include <gtest/gtest.h>

#include "test_support.hpp"

namespace docforest {
namespace {

using testing::make_doc;
using testing::row_entity;

MatchModel model(std::uint64_t seed = 1) {
  FeatureConfig fc;
  fc.text_hash_dim = 8;
  return make_model(fc, {10, 5}, 16.0, 0.2, seed);
}

TEST(ParseHierarchy, RulesOnCompositeMatchesRuleEngine) {
  auto doc = make_doc({row_entity("s", "section", 0), row_entity("ss", "subsection", 1), row_entity("t", "table", 2),
                       row_entity("tc", "table_caption", 3)});
  EXPECT_EQ(parse_hierarchy(doc, model()), apply_all_rules(doc).assignment);
}

TEST(ParseHierarchy, LossOnlyIsAllMatcher) {
  auto doc = make_doc({row_entity("s", "section", 0), row_entity("p", "paragraph", 1), row_entity("n", "note", 2)});
  auto a = parse_hierarchy(doc, model(), {.rules_enabled = false});
  ASSERT_EQ(a.size(), 3u);
  for (const auto& [id, d] : a) {
    EXPECT_EQ(d.provenance, Provenance::kMatcher);
    EXPECT_FALSE(d.parent.is_root());
    EXPECT_NE(d.parent.id(), id);
  }
}

TEST(ParseHierarchy, SingleEntityIsRoot) {
  auto doc = make_doc({row_entity("n", "note", 0)});
  for (bool rules : {true, false}) {
    auto a = parse_hierarchy(doc, model(), {.rules_enabled = rules});
    EXPECT_EQ(a.at("n"), (Decision{ParentRef::root(), Provenance::kMatcher}));
  }
}

TEST(ParseHierarchy, RestrictedResidualWithoutCandidatesIsRoot) {
  auto doc = make_doc({row_entity("t", "table", 0), row_entity("f", "form", 1)});
  auto a = parse_hierarchy(doc, model());
  EXPECT_EQ(a.at("f"), (Decision{ParentRef::root(), Provenance::kMatcher}));
}

TEST(ParseHierarchy, DimensionMismatchIsConfigError) {
  auto m = model();
  m.features.text_hash_dim = 9;
  EXPECT_THROW(parse_hierarchy(make_doc({row_entity("n", "note", 0)}), m), ConfigError);
}

TEST(ParseHierarchy, RulesWinRegardlessOfModelAndAreComplete) {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    auto doc = testing::random_small_document(rng, 12);
    auto rules = apply_all_rules(doc);
    for (std::uint64_t seed : {1u, 2u}) {
      auto a = parse_hierarchy(doc, model(seed));
      EXPECT_EQ(a.size(), doc.size());
      EXPECT_TRUE(validate_assignment(doc, a).empty());
      for (const auto& [id, d] : rules.assignment) EXPECT_EQ(a.at(id), d);
      EXPECT_EQ(parse_hierarchy(doc, model(seed), {.rules_enabled = false}).size(), doc.size());
    }
  }
}

TEST(CheckForest, TwoCycle) {
  auto doc = make_doc({row_entity("a", "note", 0), row_entity("b", "note", 1)});
  Assignment a{{"a", {ParentRef::entity("b"), Provenance::kMatcher}}, {"b", {ParentRef::entity("a"), Provenance::kMatcher}}};
  auto r = check_forest(doc, a);
  ASSERT_EQ(r.cycles.size(), 1u);
  EXPECT_EQ(r.cycles[0], (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(r.orphans, 0u);
}

TEST(CheckForest, AllRoot) {
  auto doc = make_doc({row_entity("a", "note", 0), row_entity("b", "note", 1), row_entity("c", "note", 2)});
  Assignment a;
  for (const auto& e : doc.entities()) a[e.id] = {ParentRef::root(), Provenance::kMatcher};
  auto r = check_forest(doc, a);
  EXPECT_TRUE(r.cycles.empty());
  EXPECT_EQ(r.orphans, 3u);
}

TEST(CheckForest, IncompleteAssignmentIsError) {
  auto doc = make_doc({row_entity("a", "note", 0), row_entity("b", "note", 1)});
  Assignment a{{"a", {ParentRef::root(), Provenance::kMatcher}}};
  EXPECT_THROW(check_forest(doc, a), ValidationError);
}

TEST(CheckForest, CycleWithTailAndSelfLoop) {
  auto doc = make_doc({row_entity("a", "note", 0), row_entity("b", "note", 1), row_entity("c", "note", 2),
                       row_entity("d", "note", 3)});
  // d -> c -> b -> c ... ; a -> a
  Assignment x{{"a", {ParentRef::entity("a"), Provenance::kMatcher}},
               {"b", {ParentRef::entity("c"), Provenance::kMatcher}},
               {"c", {ParentRef::entity("b"), Provenance::kMatcher}},
               {"d", {ParentRef::entity("c"), Provenance::kMatcher}}};
  auto r = check_forest(doc, x);
  EXPECT_EQ(r.cycles, (std::vector<std::vector<std::string>>{{"a"}, {"b", "c"}}));
}

TEST(CheckForest, RuleAssignmentsOnGeneratedCorpusAreAcyclic) {
  GenConfig cfg;
  cfg.num_docs = 40;
  cfg.matcher_fraction = 0.0;
  auto split = generate_corpus(cfg);
  for (const auto& d : split.train) {
    auto a = parse_hierarchy(d, model());
    EXPECT_TRUE(check_forest(d, a).cycles.empty()) << d.doc_id();
  }
}

}  // namespace
}  // namespace docforest
