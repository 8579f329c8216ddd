#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sightsee/embedding_store.hpp"
#include "sightsee/transport.hpp"

namespace sightsee {

// A sentence as a bag of unit directions weighted by embedding norm.
struct SentenceDistribution {
  std::vector<std::string> tokens;
  std::vector<double> mass;
  std::vector<std::vector<double>> directions;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
};

// Thrown when no token of a sentence has an embedding.
class AllOutOfVocabulary : public std::runtime_error {
 public:
  AllOutOfVocabulary() : std::runtime_error("every token is out of vocabulary") {}
};

// Drops tokens missing from the table. Mass is norm_i / sum of norms, with the
// sum taken in token-sorted order so that reordering the input cannot change
// a single bit of the result.
SentenceDistribution sentence_to_distribution(
    const std::vector<std::string>& tokens, const EmbeddingTable& table);

// Word Rotator's Distance: EMD between the two mass vectors under the cost
// 1 - cos(direction_i, direction_j). Lies in [0, 2].
double wrd_distance(const SentenceDistribution& a, const SentenceDistribution& b);

}  // namespace sightsee
