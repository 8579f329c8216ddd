#include "sightsee/intent.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace sightsee {

namespace {

constexpr std::array<std::string_view, 7> kCategoryKeys = {
    "price",   "opening_hours", "opening_days", "station",
    "highway", "parking",       "no_question",
};

std::string trim(std::string_view s) {
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
  return std::string(s);
}

// Splits "left<TAB>right" data lines; returns false for blank/comment lines.
bool split_tab_line(std::string line, std::size_t line_no, std::string& left,
                    std::string& right) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (trim(line).empty() || line.front() == '#') return false;
  auto tab = line.find('\t');
  if (tab == std::string::npos) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": expected a TAB-separated pair");
  }
  left = trim(std::string_view(line).substr(0, tab));
  right = trim(std::string_view(line).substr(tab + 1));
  if (left.empty() || right.empty()) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": empty field");
  }
  return true;
}

IntentCategory require_category(const std::string& key, std::size_t line_no) {
  auto c = parse_category(key);
  if (!c) {
    throw std::invalid_argument("line " + std::to_string(line_no) +
                                ": unknown category '" + key + "'");
  }
  return *c;
}

}  // namespace

std::string_view to_key(IntentCategory c) {
  return kCategoryKeys[static_cast<std::size_t>(c)];
}

std::optional<IntentCategory> parse_category(std::string_view key) {
  for (std::size_t i = 0; i < kCategoryKeys.size(); ++i) {
    if (kCategoryKeys[i] == key) return kAllCategories[i];
  }
  return std::nullopt;
}

std::vector<KeywordRule> load_rules(std::istream& in) {
  std::vector<KeywordRule> rules;
  std::string line, keyword, key;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!split_tab_line(line, line_no, keyword, key)) continue;
    rules.push_back({keyword, require_category(key, line_no)});
  }
  return rules;
}

std::vector<KeywordRule> load_rules_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rules file: " + path);
  return load_rules(in);
}

std::vector<std::pair<IntentCategory, std::string>> load_references(
    std::istream& in) {
  std::vector<std::pair<IntentCategory, std::string>> refs;
  std::string line, key, sentence;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    if (!split_tab_line(line, line_no, key, sentence)) continue;
    refs.emplace_back(require_category(key, line_no), sentence);
  }
  return refs;
}

std::vector<std::pair<IntentCategory, std::string>> load_references_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open references file: " + path);
  return load_references(in);
}

Segmenter::Segmenter(Gazetteer gazetteer, const EmbeddingTable& table)
    : gazetteer_(std::move(gazetteer)) {
  for (const auto& token : table.tokens()) vocabulary_.insert(token);
}

std::vector<std::string> Segmenter::operator()(std::string_view text) const {
  std::vector<std::string> words;
  for (auto& t : tokenize(text, gazetteer_, &vocabulary_)) {
    if (t.tag != TokenTag::kPunctuation) words.push_back(std::move(t.surface));
  }
  return words;
}

ReferenceSet ReferenceSet::build(
    const std::vector<std::pair<IntentCategory, std::string>>& entries,
    const Segmenter& segmenter, const EmbeddingTable& table) {
  std::array<std::size_t, 7> counts{};
  ReferenceSet set;
  for (const auto& [category, text] : entries) {
    ++counts[static_cast<std::size_t>(category)];
    try {
      set.sentences_.push_back(
          {text, category, sentence_to_distribution(segmenter(text), table)});
    } catch (const AllOutOfVocabulary&) {
      throw std::invalid_argument("reference sentence '" + text +
                                  "' has no in-vocabulary token");
    }
  }
  for (IntentCategory c : kAllCategories) {
    std::size_t n = counts[static_cast<std::size_t>(c)];
    if (n != kPerCategory) {
      throw std::invalid_argument(
          "category '" + std::string(to_key(c)) + "' has " + std::to_string(n) +
          " reference sentences, expected " + std::to_string(kPerCategory));
    }
  }
  std::stable_sort(set.sentences_.begin(), set.sentences_.end(),
                   [](const ReferenceSentence& a, const ReferenceSentence& b) {
                     return a.category < b.category;
                   });
  return set;
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kKeyword:
      return "keyword";
    case Stage::kWrd:
      return "wrd";
    case Stage::kFallback:
      return "fallback";
  }
  return "?";
}

std::optional<Stage> parse_stage(std::string_view s) {
  if (s == "keyword") return Stage::kKeyword;
  if (s == "wrd") return Stage::kWrd;
  if (s == "fallback") return Stage::kFallback;
  return std::nullopt;
}

std::optional<ClassificationResult> classify_keyword(
    std::string_view utterance, const std::vector<KeywordRule>& rules) {
  for (const auto& rule : rules) {
    if (!rule.keyword.empty() &&
        utterance.find(rule.keyword) != std::string_view::npos) {
      return ClassificationResult{rule.category, Stage::kKeyword, std::nullopt,
                                  rule.keyword};
    }
  }
  return std::nullopt;
}

ClassificationResult classify_wrd(std::string_view utterance,
                                  const ReferenceSet& refs,
                                  const EmbeddingTable& table,
                                  const Segmenter& segmenter) {
  SentenceDistribution query;
  try {
    query = sentence_to_distribution(segmenter(utterance), table);
  } catch (const AllOutOfVocabulary&) {
    return ClassificationResult{IntentCategory::kNoQuestion, Stage::kFallback,
                                std::nullopt, std::nullopt};
  }

  const ReferenceSentence* best = nullptr;
  double best_distance = 0.0;
  for (const auto& ref : refs.sentences()) {
    double d = wrd_distance(query, ref.distribution);
    if (best == nullptr || d < best_distance) {
      best = &ref;
      best_distance = d;
    }
  }
  if (best == nullptr) {
    throw std::invalid_argument("reference set is empty");
  }
  return ClassificationResult{best->category, Stage::kWrd, best_distance,
                              best->text};
}

ClassificationResult classify(std::string_view utterance,
                              const std::vector<KeywordRule>& rules,
                              const ReferenceSet& refs,
                              const EmbeddingTable& table,
                              const Segmenter& segmenter) {
  if (auto hit = classify_keyword(utterance, rules)) return *hit;
  return classify_wrd(utterance, refs, table, segmenter);
}

}  // namespace sightsee
