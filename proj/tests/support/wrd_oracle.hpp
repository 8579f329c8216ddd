#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sightsee/embedding_store.hpp"
#include "support/transport_oracle.hpp"

namespace oracle {

// Independent WRD: mass and cost built straight from raw components, solved
// by vertex enumeration.
inline double oracle_wrd(const std::vector<std::string>& a, const std::vector<std::string>& b,
                  const sightsee::EmbeddingTable& table) {
  auto side = [&](const std::vector<std::string>& s) {
    std::vector<std::vector<double>> vecs;
    std::vector<double> norms;
    for (const auto& t : s) {
      const sightsee::WordVector* v = table.find(t);
      if (!v) continue;
      double sq = 0.0;
      for (double c : v->components) sq += c * c;
      vecs.push_back(v->components);
      norms.push_back(std::sqrt(sq));
    }
    double total = 0.0;
    for (double n : norms) total += n;
    for (auto& n : norms) n /= total;
    return std::pair{vecs, norms};
  };
  auto [va, ma] = side(a);
  auto [vb, mb] = side(b);
  Instance inst{ma, mb, {}};
  for (const auto& x : va) {
    inst.cost.emplace_back();
    for (const auto& y : vb) {
      double dot = 0.0, nx = 0.0, ny = 0.0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        dot += x[k] * y[k];
        nx += x[k] * x[k];
        ny += y[k] * y[k];
      }
      inst.cost.back().push_back(1.0 - dot / std::sqrt(nx * ny));
    }
  }
  return min_cost(inst);
}

}  // namespace oracle
