#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sightsee {

// Dense row-major matrix of nonnegative costs.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  CostMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

class TransportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Probability vector. Sums within 1e-9 of one are rescaled exactly onto the
// simplex; anything further off is rejected.
class Histogram {
 public:
  static constexpr double kSumTolerance = 1e-9;

  // Throws TransportError on empty input, negative or non-finite weights, or
  // a sum outside tolerance.
  explicit Histogram(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

struct TransportPlan {
  CostMatrix flows;
  double cost = 0.0;
};

// Exact earth mover's distance by the transportation simplex. Start basis is
// the northwest-corner rule; the entering cell is the first negative reduced
// cost in row-major order and the leaving cell the lowest-index minimum on
// the cycle, so identical inputs always take identical pivots.
TransportPlan solve_emd(const Histogram& source, const Histogram& target,
                        const CostMatrix& cost);

}  // namespace sightsee
