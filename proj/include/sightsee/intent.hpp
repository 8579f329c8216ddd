#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sightsee/embedding_store.hpp"
#include "sightsee/tokenizer.hpp"
#include "sightsee/wrd.hpp"

namespace sightsee {

// Declaration order doubles as the tie-break order.
enum class IntentCategory {
  kPrice,
  kOpeningHours,
  kOpeningDays,
  kStation,
  kHighway,
  kParking,
  kNoQuestion,
};

inline constexpr std::array<IntentCategory, 7> kAllCategories = {
    IntentCategory::kPrice,       IntentCategory::kOpeningHours,
    IntentCategory::kOpeningDays, IntentCategory::kStation,
    IntentCategory::kHighway,     IntentCategory::kParking,
    IntentCategory::kNoQuestion,
};

// Snake-case key used in every data file ("price", "opening_hours", ...).
std::string_view to_key(IntentCategory c);
std::optional<IntentCategory> parse_category(std::string_view key);

struct KeywordRule {
  std::string keyword;
  IntentCategory category;
};

// Lines of "keyword<TAB>category"; '#' lines and blank lines are skipped.
std::vector<KeywordRule> load_rules(std::istream& in);
std::vector<KeywordRule> load_rules_file(const std::string& path);

// Turns an utterance into the token list WRD sees: the tokenizer's output with
// the embedding vocabulary as a secondary lexicon and punctuation removed.
class Segmenter {
 public:
  Segmenter(Gazetteer gazetteer, const EmbeddingTable& table);
  std::vector<std::string> operator()(std::string_view text) const;

 private:
  Gazetteer gazetteer_;
  Lexicon vocabulary_;
};

struct ReferenceSentence {
  std::string text;
  IntentCategory category;
  SentenceDistribution distribution;
};

class ReferenceSet {
 public:
  static constexpr std::size_t kPerCategory = 4;

  // Requires exactly four sentences for each of the seven categories, each
  // with at least one in-vocabulary token. Throws std::invalid_argument.
  static ReferenceSet build(
      const std::vector<std::pair<IntentCategory, std::string>>& entries,
      const Segmenter& segmenter, const EmbeddingTable& table);

  // Sorted by category, file order kept within a category.
  const std::vector<ReferenceSentence>& sentences() const { return sentences_; }

 private:
  std::vector<ReferenceSentence> sentences_;
};

// Lines of "category<TAB>sentence".
std::vector<std::pair<IntentCategory, std::string>> load_references(
    std::istream& in);
std::vector<std::pair<IntentCategory, std::string>> load_references_file(
    const std::string& path);

enum class Stage { kKeyword, kWrd, kFallback };
std::string_view to_string(Stage s);
std::optional<Stage> parse_stage(std::string_view s);

struct ClassificationResult {
  IntentCategory category = IntentCategory::kNoQuestion;
  Stage stage = Stage::kFallback;
  std::optional<double> distance;
  std::optional<std::string> matched;

  bool operator==(const ClassificationResult&) const = default;
};

std::optional<ClassificationResult> classify_keyword(
    std::string_view utterance, const std::vector<KeywordRule>& rules);

// Nearest reference by WRD. An utterance with no in-vocabulary token falls
// back to NoQuestion with stage Fallback.
ClassificationResult classify_wrd(std::string_view utterance,
                                  const ReferenceSet& refs,
                                  const EmbeddingTable& table,
                                  const Segmenter& segmenter);

// Keyword rules first, WRD second.
ClassificationResult classify(std::string_view utterance,
                              const std::vector<KeywordRule>& rules,
                              const ReferenceSet& refs,
                              const EmbeddingTable& table,
                              const Segmenter& segmenter);

// Rules, references and the embedding table bundled for repeated use. The
// table must outlive the classifier.
class IntentClassifier {
 public:
  IntentClassifier(std::vector<KeywordRule> rules, ReferenceSet refs,
                   const EmbeddingTable& table, Segmenter segmenter)
      : rules_(std::move(rules)),
        refs_(std::move(refs)),
        table_(table),
        segmenter_(std::move(segmenter)) {}

  ClassificationResult classify(std::string_view utterance) const {
    return sightsee::classify(utterance, rules_, refs_, table_, segmenter_);
  }
  ClassificationResult classify_wrd(std::string_view utterance) const {
    return sightsee::classify_wrd(utterance, refs_, table_, segmenter_);
  }

  const std::vector<KeywordRule>& rules() const { return rules_; }
  const ReferenceSet& references() const { return refs_; }
  const EmbeddingTable& table() const { return table_; }
  const Segmenter& segmenter() const { return segmenter_; }

 private:
  std::vector<KeywordRule> rules_;
  ReferenceSet refs_;
  const EmbeddingTable& table_;
  Segmenter segmenter_;
};

}  // namespace sightsee
