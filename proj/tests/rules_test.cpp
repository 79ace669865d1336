#include <gtest/gtest.h>

#include "test_support.hpp"

namespace docforest {
namespace {

using testing::make_doc;
using testing::make_entity;
using testing::row_entity;

ParentRef E(const char* id) { return ParentRef::entity(id); }

TEST(RuleConfig, MatchesPublishedRuleSets) {
  const auto& cfg = default_rule_config();
  EXPECT_EQ(cfg.no_parent_set.size(), 15u);
  EXPECT_EQ(cfg.fixed_deps.size(), 5u);
  EXPECT_EQ(cfg.chain_levels[0], KnownCategory::kSection);
  EXPECT_EQ(cfg.chain_levels[4], KnownCategory::kParagraph);
  EXPECT_EQ(cfg.fixed_deps.at(KnownCategory::kForm).size(), 6u);
  EXPECT_EQ(cfg.fixed_deps.at(KnownCategory::kList).size(), 5u);
  EXPECT_EQ(cfg.fixed_deps.at(KnownCategory::kFormBody).size(), 7u);
  // The three rule groups cover disjoint categories.
  for (auto c : cfg.no_parent_set) EXPECT_FALSE(cfg.fixed_deps.count(c));
  for (std::size_t k = 1; k < 5; ++k) {
    EXPECT_FALSE(cfg.no_parent_set.count(cfg.chain_levels[k]));
    EXPECT_FALSE(cfg.fixed_deps.count(cfg.chain_levels[k]));
  }
}

TEST(RootRule, FigureIsRootParagraphUntouched) {
  auto doc = make_doc({row_entity("f", "figure", 0), row_entity("p", "paragraph", 1)});
  auto a = apply_root_rule(doc);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a.at("f"), (Decision{ParentRef::root(), Provenance::kRule1}));
}

TEST(RootRule, NoRootCategoriesGivesEmpty) {
  EXPECT_TRUE(apply_root_rule(make_doc({row_entity("p", "paragraph", 0)})).empty());
}

TEST(RootRule, AllFifteenAreRoot) {
  std::vector<Entity> ents;
  int i = 0;
  for (auto c : default_rule_config().no_parent_set) {
    ents.push_back(row_entity("e" + std::to_string(i), std::string(to_string(c)), i));
    ++i;
  }
  auto a = apply_root_rule(make_doc(ents));
  EXPECT_EQ(a.size(), 15u);
  for (const auto& [id, d] : a) EXPECT_TRUE(d.parent.is_root()) << id;
}

TEST(SectionChain, NestsByLevel) {
  auto doc = make_doc({row_entity("A", "section", 0), row_entity("B", "subsection", 1), row_entity("C", "paragraph", 2)});
  auto a = apply_section_chain_rule(doc);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.at("B").parent, E("A"));
  EXPECT_EQ(a.at("C").parent, E("B"));
  EXPECT_EQ(a.at("C").provenance, Provenance::kRule2);
}

TEST(SectionChain, NearestPrecedingHigherLevel) {
  auto doc = make_doc({row_entity("A", "section", 0), row_entity("B", "subsection", 1), row_entity("C", "subsection", 2),
                       row_entity("D", "paragraph", 3)});
  auto a = apply_section_chain_rule(doc);
  EXPECT_EQ(a.at("C").parent, E("A"));
  EXPECT_EQ(a.at("D").parent, E("C"));
}

TEST(SectionChain, LonelyParagraphIsRoot) {
  // Hand walk: nothing precedes P, so no entity of a smaller level exists.
  auto a = apply_section_chain_rule(make_doc({row_entity("P", "paragraph", 0)}));
  EXPECT_EQ(a.at("P"), (Decision{ParentRef::root(), Provenance::kRule2}));
}

TEST(SectionChain, SkipsLevelsAndIgnoresSameLevel) {
  auto doc = make_doc({row_entity("S", "section", 0), row_entity("P1", "paragraph", 1), row_entity("P2", "paragraph", 2),
                       row_entity("X", "subsubsubsection", 3)});
  auto a = apply_section_chain_rule(doc);
  EXPECT_EQ(a.at("P1").parent, E("S"));
  EXPECT_EQ(a.at("P2").parent, E("S"));
  EXPECT_EQ(a.at("X").parent, E("S"));
}

TEST(FixedDependency, CaptionToTable) {
  auto doc = make_doc({row_entity("T", "table", 0), row_entity("C", "table_caption", 1)});
  auto a = apply_fixed_dependency_rule(doc, {"C"});
  EXPECT_EQ(a.at("C"), (Decision{E("T"), Provenance::kRule3}));
}

TEST(FixedDependency, FormToSection) {
  auto doc = make_doc({row_entity("S", "section", 0), row_entity("F", "form", 1)});
  auto a = apply_fixed_dependency_rule(doc, {"F"});
  EXPECT_EQ(a.at("F").parent, E("S"));
}

TEST(FixedDependency, OrphanCaptionIsRoot) {
  auto a = apply_fixed_dependency_rule(make_doc({row_entity("C", "figure_caption", 0)}), {"C"});
  EXPECT_EQ(a.at("C"), (Decision{ParentRef::root(), Provenance::kRule3}));
}

TEST(FixedDependency, CaptionPrefersSamePageGeometry) {
  // F1 precedes C in reading order but F2, below C, is closer.
  auto doc = make_doc({make_entity("F1", "figure", 0, {0, 0, 100, 100}), make_entity("C", "figure_caption", 0, {0, 400, 100, 420}),
                       make_entity("F2", "figure", 0, {0, 440, 100, 460})});
  EXPECT_EQ(apply_fixed_dependency_rule(doc, {"C"}).at("C").parent, E("F2"));
}

TEST(FixedDependency, CaptionFallsBackAcrossPages) {
  auto doc = make_doc({make_entity("F0", "figure", 0, {0, 0, 10, 10}), make_entity("F1", "figure", 1, {0, 0, 10, 10}),
                       make_entity("C", "figure_caption", 2, {0, 0, 10, 10}), make_entity("F3", "figure", 3, {0, 0, 10, 10})});
  EXPECT_EQ(apply_fixed_dependency_rule(doc, {"C"}).at("C").parent, E("F1"));

  auto later = make_doc({make_entity("C", "table_caption", 0, {0, 0, 10, 10}), make_entity("T", "table", 2, {0, 0, 10, 10})});
  EXPECT_EQ(apply_fixed_dependency_rule(later, {"C"}).at("C").parent, E("T"));
}

TEST(FixedDependency, CaptionDistanceTieBreaksByReadingOrder) {
  auto doc = make_doc({make_entity("Fb", "figure", 0, {0, 0, 10, 10}), make_entity("C", "figure_caption", 0, {0, 20, 10, 30}),
                       make_entity("Fa", "figure", 0, {0, 40, 10, 50})});
  EXPECT_EQ(apply_fixed_dependency_rule(doc, {"C"}).at("C").parent, E("Fb"));
}

TEST(FixedDependency, ListFallsBackToFollowing) {
  auto doc = make_doc({row_entity("L", "list", 0), row_entity("P", "paragraph", 1), row_entity("Q", "paragraph", 2)});
  EXPECT_EQ(apply_fixed_dependency_rule(doc, {"L"}).at("L").parent, E("P"));
}

TEST(FixedDependency, FormWithoutAllowedParentStaysResidual) {
  auto doc = make_doc({row_entity("T", "table", 0), row_entity("F", "form", 1)});
  EXPECT_TRUE(apply_fixed_dependency_rule(doc, {"F"}).empty());
  auto all = apply_all_rules(doc);
  EXPECT_EQ(all.residual, (std::set<std::string>{"F"}));
}

TEST(FixedDependency, OnlyResidualEntitiesConsidered) {
  auto doc = make_doc({row_entity("T", "table", 0), row_entity("C", "table_caption", 1)});
  EXPECT_TRUE(apply_fixed_dependency_rule(doc, {}).empty());
}

TEST(AllRules, CompositeExample) {
  auto doc = make_doc({row_entity("s", "section", 0), row_entity("ss", "subsection", 1), row_entity("t", "table", 2),
                       row_entity("tc", "table_caption", 3)});
  auto out = apply_all_rules(doc);
  EXPECT_TRUE(out.residual.empty());
  EXPECT_EQ(out.assignment.at("s"), (Decision{ParentRef::root(), Provenance::kRule1}));
  EXPECT_EQ(out.assignment.at("ss"), (Decision{E("s"), Provenance::kRule2}));
  EXPECT_EQ(out.assignment.at("t"), (Decision{ParentRef::root(), Provenance::kRule1}));
  EXPECT_EQ(out.assignment.at("tc"), (Decision{E("t"), Provenance::kRule3}));
}

TEST(AllRules, UnknownCategoryIsResidual) {
  auto out = apply_all_rules(make_doc({row_entity("x", "sidebar", 0)}));
  EXPECT_TRUE(out.assignment.empty());
  EXPECT_EQ(out.residual, (std::set<std::string>{"x"}));
}

TEST(AllRules, OverlapIsConsistencyError) {
  // A rule configuration whose groups overlap must be caught, not merged.
  RuleConfig bad = default_rule_config();
  bad.no_parent_set.insert(KnownCategory::kSubsection);
  auto doc = make_doc({row_entity("s", "section", 0), row_entity("ss", "subsection", 1)});
  EXPECT_THROW(apply_all_rules(doc, bad), ConsistencyError);
}

TEST(AllRules, AgreesWithBruteForceOracle) {
  Rng rng(1234);
  for (int trial = 0; trial < 500; ++trial) {
    auto doc = testing::random_small_document(rng, 10);
    ASSERT_EQ(testing::oracle_mismatches(doc), 0u) << serialize_document(doc);
  }
}

TEST(AllRules, IdempotentPermutationInvariantAndSound) {
  Rng rng(99);
  const auto& cfg = default_rule_config();
  for (int trial = 0; trial < 200; ++trial) {
    auto doc = testing::random_small_document(rng, 15);
    auto first = apply_all_rules(doc);
    auto again = apply_all_rules(doc);
    EXPECT_EQ(first.assignment, again.assignment);
    auto shuffled = apply_all_rules(testing::shuffled(doc, rng));
    EXPECT_EQ(first.assignment, shuffled.assignment);
    EXPECT_EQ(first.residual, shuffled.residual);
    EXPECT_TRUE(validate_assignment(doc, first.assignment).empty());

    for (const auto& [id, d] : first.assignment) {
      const Entity& child = doc.at(id);
      switch (d.provenance) {
        case Provenance::kRule1:
          EXPECT_TRUE(d.parent.is_root());
          break;
        case Provenance::kRule2:
          if (!d.parent.is_root()) {
            EXPECT_LT(cfg.chain_level(doc.at(d.parent.id()).category), cfg.chain_level(child.category));
            EXPECT_TRUE(reading_before(doc.at(d.parent.id()), child));
          }
          break;
        case Provenance::kRule3:
          if (!d.parent.is_root()) {
            EXPECT_TRUE(cfg.allowed_parents(child.category)->count(*doc.at(d.parent.id()).category.known()));
          }
          break;
        case Provenance::kMatcher:
          ADD_FAILURE() << "rules never produce matcher decisions";
      }
    }
  }
}

TEST(RuleConfig, DumpsAsJson) {
  auto j = to_json(default_rule_config());
  EXPECT_EQ(j["no_parent_set"].size(), 15u);
  EXPECT_EQ(j["chain_levels"].size(), 5u);
  EXPECT_EQ(j["chain_levels"][4]["category"], "paragraph");
  EXPECT_EQ(j["fixed_deps"]["table_caption"], nlohmann::json::array({"table"}));
}

}  // namespace
}  // namespace docforest
