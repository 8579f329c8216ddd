#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sightsee/embedding_store.hpp"

namespace testing_support {

inline std::string data_file(const std::string& name) {
  return std::string(SIGHTSEE_DATA_DIR) + "/" + name;
}

inline std::string golden_file(const std::string& name) {
  return std::string(SIGHTSEE_TEST_DIR) + "/golden/" + name;
}

inline sightsee::EmbeddingTable make_table(
    std::size_t dim,
    const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  sightsee::EmbeddingTable table(dim);
  for (const auto& [token, v] : rows) table.add(token, v);
  return table;
}

// Tokens "w0".."w{size-1}" with Gaussian components.
inline sightsee::EmbeddingTable random_table(std::mt19937_64& rng, std::size_t size,
                                             std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  sightsee::EmbeddingTable table(dim);
  for (std::size_t k = 0; k < size; ++k) {
    std::vector<double> v(dim);
    for (auto& x : v) x = normal(rng);
    table.add("w" + std::to_string(k), std::move(v));
  }
  return table;
}

inline std::vector<std::string> random_sentence(std::mt19937_64& rng,
                                                std::size_t vocab,
                                                std::size_t min_len,
                                                std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> word(0, vocab - 1);
  std::vector<std::string> out(len(rng));
  for (auto& t : out) t = "w" + std::to_string(word(rng));
  return out;
}

}  // namespace testing_support
