#include "sightsee/wrd.hpp"

#include <algorithm>
#include <numeric>

namespace sightsee {

namespace {

std::vector<std::size_t> canonical_order(const std::vector<std::string>& tokens) {
  std::vector<std::size_t> order(tokens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return tokens[a] < tokens[b];
  });
  return order;
}

}  // namespace

SentenceDistribution sentence_to_distribution(
    const std::vector<std::string>& tokens, const EmbeddingTable& table) {
  SentenceDistribution dist;
  std::vector<double> norms;
  for (const auto& token : tokens) {
    const WordVector* wv = table.find(token);
    if (wv == nullptr) continue;
    dist.tokens.push_back(token);
    norms.push_back(wv->norm);
    std::vector<double> dir(wv->components.size());
    for (std::size_t k = 0; k < dir.size(); ++k) {
      dir[k] = wv->components[k] / wv->norm;
    }
    dist.directions.push_back(std::move(dir));
  }
  if (dist.empty()) throw AllOutOfVocabulary();

  double total = 0.0;
  for (std::size_t idx : canonical_order(dist.tokens)) total += norms[idx];
  dist.mass.reserve(norms.size());
  for (double n : norms) dist.mass.push_back(n / total);
  return dist;
}

double wrd_distance(const SentenceDistribution& a, const SentenceDistribution& b) {
  if (a.empty() || b.empty()) throw AllOutOfVocabulary();
  const auto order_a = canonical_order(a.tokens);
  const auto order_b = canonical_order(b.tokens);

  std::vector<double> mass_a;
  std::vector<double> mass_b;
  for (std::size_t i : order_a) mass_a.push_back(a.mass[i]);
  for (std::size_t j : order_b) mass_b.push_back(b.mass[j]);

  CostMatrix cost(a.size(), b.size());
  for (std::size_t r = 0; r < order_a.size(); ++r) {
    for (std::size_t c = 0; c < order_b.size(); ++c) {
      cost(r, c) = 1.0 - cosine(std::span<const double>(a.directions[order_a[r]]),
                                std::span<const double>(b.directions[order_b[c]]));
    }
  }
  double d = solve_emd(Histogram(std::move(mass_a)), Histogram(std::move(mass_b)),
                       cost)
                 .cost;
  return std::clamp(d, 0.0, 2.0);
}

}  // namespace sightsee
