#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace docforest {

// The closed vocabulary of entity categories. Order is stable: it defines the
// one-hot layout in feature vectors and must not be reordered.
enum class KnownCategory : int {
  kAbstract,
  kAppendixList,
  kCross,
  kFigure,
  kFormTitle,
  kListOfFigures,
  kListOfTables,
  kOther,
  kReferences,
  kReportTitle,
  kSection,
  kSummary,
  kTable,
  kTableOfContents,
  kTitle,
  kSubsection,
  kSubsubsection,
  kSubsubsubsection,
  kParagraph,
  kTableCaption,
  kFigureCaption,
  kForm,
  kList,
  kFormBody,
};

inline constexpr std::size_t kNumKnownCategories = 24;

inline constexpr std::array<std::string_view, kNumKnownCategories> kCategoryNames = {
    "abstract",        "appendix_list",  "cross",          "figure",
    "form_title",      "list_of_figures", "list_of_tables", "other",
    "references",      "report_title",   "section",        "summary",
    "table",           "table_of_contents", "title",        "subsection",
    "subsubsection",   "subsubsubsection", "paragraph",    "table_caption",
    "figure_caption",  "form",           "list",           "form_body",
};

inline std::string_view to_string(KnownCategory c) {
  return kCategoryNames[static_cast<std::size_t>(c)];
}

inline std::optional<KnownCategory> lookup_category(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<KnownCategory>(i);
  }
  return std::nullopt;
}

// A category label as it appeared in the input. Strings outside the known
// vocabulary are kept verbatim and flagged unknown.
class Category {
 public:
  Category() = default;
  explicit Category(std::string name) : name_(std::move(name)), known_(lookup_category(name_)) {}
  Category(KnownCategory c) : name_(to_string(c)), known_(c) {}  // NOLINT: implicit by intent

  const std::string& name() const { return name_; }
  bool is_known() const { return known_.has_value(); }
  std::optional<KnownCategory> known() const { return known_; }

  bool is(KnownCategory c) const { return known_ == c; }

  // Slot in the one-hot block: 0..23 for known, 24 for the unknown bucket.
  std::size_t index() const {
    return known_ ? static_cast<std::size_t>(*known_) : kNumKnownCategories;
  }

  friend bool operator==(const Category& a, const Category& b) { return a.name_ == b.name_; }

 private:
  std::string name_;
  std::optional<KnownCategory> known_;
};

}  // namespace docforest
