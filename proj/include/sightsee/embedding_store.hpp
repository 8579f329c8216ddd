#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace sightsee {

struct WordVector {
  std::string token;
  std::vector<double> components;
  double norm = 0.0;
};

class EmbeddingFormatError : public std::runtime_error {
 public:
  enum class Kind {
    kMalformedHeader,
    kDimensionMismatch,
    kDuplicateToken,
    kNonNumeric,
    kCountMismatch,
    kZeroNorm,
  };

  EmbeddingFormatError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Token -> vector store. Immutable once loaded, so concurrent readers need no
// locking.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension);

  // Throws EmbeddingFormatError on duplicate token, wrong dimension or a
  // zero-norm vector.
  void add(std::string token, std::vector<double> components);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  // Tokens in insertion order.
  const std::vector<std::string>& tokens() const { return order_; }

  const WordVector* find(const std::string& token) const;

  bool operator==(const EmbeddingTable& other) const;

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, WordVector> entries_;
  std::vector<std::string> order_;
};

// Reads the word2vec text layout: "<count> <dim>" then one "token v1 .. vd"
// row per word.
EmbeddingTable load_embeddings(std::istream& in);
EmbeddingTable load_embeddings_file(const std::string& path);

// Writes the same layout with round-trip precision.
void save_embeddings(const EmbeddingTable& table, std::ostream& out);

std::optional<WordVector> lookup(const EmbeddingTable& table,
                                 const std::string& token);

double euclidean_norm(std::span<const double> v);

// dot(u,v) / (|u| |v|), clamped to [-1, 1]. Throws std::invalid_argument on a
// zero-norm input or a length mismatch.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(const WordVector& u, const WordVector& v);

}  // namespace sightsee
