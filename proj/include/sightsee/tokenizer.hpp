#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace sightsee {

enum class TokenTag { kProperNoun, kWord, kPunctuation };

std::string_view to_string(TokenTag tag);

struct Token {
  std::string surface;
  // Half-open [begin, end) in code points of the input.
  std::size_t begin = 0;
  std::size_t end = 0;
  TokenTag tag = TokenTag::kWord;

  bool operator==(const Token&) const = default;
};

// A set of strings matched greedily, longest first. Used both for proper
// nouns and for vocabulary-driven segmentation.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws std::invalid_argument on an empty or duplicate entry.
  explicit Lexicon(const std::vector<std::string>& entries);

  void insert(std::string_view entry);
  bool contains(std::u32string_view s) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::size_t longest() const { return longest_; }

  // Length in code points of the longest entry starting at text[pos] that
  // ends no later than `limit`; 0 when none matches.
  std::size_t match_at(std::u32string_view text, std::size_t pos,
                       std::size_t limit) const;

 private:
  std::unordered_set<std::u32string> entries_;
  std::size_t longest_ = 0;
};

using Gazetteer = Lexicon;

// One entry per line, UTF-8. Blank lines and lines starting with '#' are
// skipped; repeated lines are rejected.
Gazetteer load_gazetteer(std::istream& in);
Gazetteer load_gazetteer_file(const std::string& path);

// Splits on whitespace, then scans each chunk left to right. Punctuation
// characters become their own tokens; at every other position the longest
// gazetteer entry wins and becomes a ProperNoun; leftover characters gather
// into maximal Word runs.
//
// When `vocabulary` is given, a Word run that is not itself a vocabulary entry
// is further cut by longest vocabulary match, so unsegmented text can be
// looked up word by word.
std::vector<Token> tokenize(std::string_view text, const Gazetteer& gazetteer,
                            const Lexicon* vocabulary = nullptr);

std::vector<std::string> extract_proper_nouns(const std::vector<Token>& tokens);

inline constexpr std::string_view kDefaultSpot = "そこ";

// First proper noun of the reply, or `fallback` when the customer said
// nothing or named no known place.
std::string memorable_spot(const std::optional<std::string>& utterance,
                           const Gazetteer& gazetteer,
                           std::string_view fallback = kDefaultSpot);

}  // namespace sightsee
