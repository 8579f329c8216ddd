#include "sightsee/tokenizer.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

#include "sightsee/utf8.hpp"

namespace sightsee {

std::string_view to_string(TokenTag tag) {
  switch (tag) {
    case TokenTag::kProperNoun:
      return "ProperNoun";
    case TokenTag::kWord:
      return "Word";
    case TokenTag::kPunctuation:
      return "Punctuation";
  }
  return "?";
}

Lexicon::Lexicon(const std::vector<std::string>& entries) {
  for (const auto& e : entries) {
    if (contains(utf8::decode(e))) {
      throw std::invalid_argument("duplicate lexicon entry '" + e + "'");
    }
    insert(e);
  }
}

void Lexicon::insert(std::string_view entry) {
  std::u32string cps = utf8::decode(entry);
  if (cps.empty()) throw std::invalid_argument("empty lexicon entry");
  longest_ = std::max(longest_, cps.size());
  entries_.insert(std::move(cps));
}

bool Lexicon::contains(std::u32string_view s) const {
  return entries_.count(std::u32string(s)) != 0;
}

std::size_t Lexicon::match_at(std::u32string_view text, std::size_t pos,
                              std::size_t limit) const {
  if (entries_.empty() || pos >= limit) return 0;
  std::size_t max_len = std::min(longest_, limit - pos);
  std::u32string probe;
  for (std::size_t len = max_len; len > 0; --len) {
    probe.assign(text.substr(pos, len));
    if (entries_.count(probe) != 0) return len;
  }
  return 0;
}

Gazetteer load_gazetteer(std::istream& in) {
  std::vector<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    entries.push_back(line);
  }
  return Gazetteer(entries);
}

Gazetteer load_gazetteer_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open gazetteer file: " + path);
  return load_gazetteer(in);
}

namespace {

class TokenSink {
 public:
  TokenSink(std::u32string_view text, const Lexicon* vocabulary,
            std::vector<Token>& out)
      : text_(text), vocabulary_(vocabulary), out_(out) {}

  void emit(std::size_t begin, std::size_t end, TokenTag tag) {
    out_.push_back(
        Token{utf8::encode(text_.substr(begin, end - begin)), begin, end, tag});
  }

  void emit_word_run(std::size_t begin, std::size_t end) {
    if (begin >= end) return;
    auto run = text_.substr(begin, end - begin);
    if (vocabulary_ == nullptr || vocabulary_->contains(run)) {
      emit(begin, end, TokenTag::kWord);
      return;
    }
    std::size_t pending = begin;
    std::size_t q = begin;
    while (q < end) {
      std::size_t len = vocabulary_->match_at(text_, q, end);
      if (len == 0) {
        ++q;
        continue;
      }
      if (pending < q) emit(pending, q, TokenTag::kWord);
      emit(q, q + len, TokenTag::kWord);
      q += len;
      pending = q;
    }
    if (pending < end) emit(pending, end, TokenTag::kWord);
  }

 private:
  std::u32string_view text_;
  const Lexicon* vocabulary_;
  std::vector<Token>& out_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text, const Gazetteer& gazetteer,
                            const Lexicon* vocabulary) {
  std::vector<Token> tokens;
  const std::u32string cps = utf8::decode(text);
  const std::u32string_view view(cps);
  TokenSink sink(view, vocabulary, tokens);

  std::size_t p = 0;
  while (p < view.size()) {
    if (utf8::is_space(view[p])) {
      ++p;
      continue;
    }
    std::size_t chunk_end = p;
    while (chunk_end < view.size() && !utf8::is_space(view[chunk_end])) {
      ++chunk_end;
    }

    std::size_t word_start = p;
    while (p < chunk_end) {
      std::size_t len = gazetteer.match_at(view, p, chunk_end);
      if (len > 0) {
        sink.emit_word_run(word_start, p);
        sink.emit(p, p + len, TokenTag::kProperNoun);
        p += len;
        word_start = p;
      } else if (utf8::is_punctuation(view[p])) {
        sink.emit_word_run(word_start, p);
        sink.emit(p, p + 1, TokenTag::kPunctuation);
        ++p;
        word_start = p;
      } else {
        ++p;
      }
    }
    sink.emit_word_run(word_start, chunk_end);
  }
  return tokens;
}

std::vector<std::string> extract_proper_nouns(const std::vector<Token>& tokens) {
  std::vector<std::string> nouns;
  for (const auto& t : tokens) {
    if (t.tag == TokenTag::kProperNoun) nouns.push_back(t.surface);
  }
  return nouns;
}

std::string memorable_spot(const std::optional<std::string>& utterance,
                           const Gazetteer& gazetteer,
                           std::string_view fallback) {
  if (fallback.empty()) fallback = kDefaultSpot;
  if (!utterance) return std::string(fallback);
  auto nouns = extract_proper_nouns(tokenize(*utterance, gazetteer));
  if (nouns.empty()) return std::string(fallback);
  return nouns.front();
}

}  // namespace sightsee
