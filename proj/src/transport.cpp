#include "sightsee/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace sightsee {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw TransportError("cost matrix data does not match its shape");
  }
}

CostMatrix::CostMatrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw TransportError("ragged cost matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CostMatrix CostMatrix::transposed() const {
  CostMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Histogram::Histogram(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw TransportError("histogram must not be empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw TransportError("histogram weights must be finite and nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw TransportError("histogram sums to " + std::to_string(sum) +
                         ", expected 1");
  }
  if (sum != 1.0) {
    for (double& w : weights_) w /= sum;
  }
}

namespace {

// Basis bookkeeping for an n x m transportation tableau. Rows are graph nodes
// 0..n-1, columns n..n+m-1; basic cells are the tree edges.
class Tableau {
 public:
  Tableau(const Histogram& source, const Histogram& target, const CostMatrix& cost)
      : n_(source.size()),
        m_(target.size()),
        cost_(cost),
        flow_(n_, m_),
        basic_(n_ * m_, false),
        u_(n_),
        v_(m_) {
    northwest_corner(source, target);
  }

  void optimize() {
    double scale = 1.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) scale = std::max(scale, cost_(i, j));
    }
    const double tolerance = 1e-12 * scale;
    const std::size_t max_pivots = 1000 + 100 * n_ * m_ * (n_ + m_);

    for (std::size_t pivots = 0;; ++pivots) {
      if (pivots > max_pivots) {
        throw std::runtime_error("transportation simplex failed to converge");
      }
      compute_potentials();
      std::size_t entering = kNone;
      for (std::size_t cell = 0; cell < n_ * m_ && entering == kNone; ++cell) {
        if (basic_[cell]) continue;
        std::size_t i = cell / m_;
        std::size_t j = cell % m_;
        if (cost_(i, j) - u_[i] - v_[j] < -tolerance) entering = cell;
      }
      if (entering == kNone) return;
      pivot(entering);
    }
  }

  TransportPlan plan() const {
    TransportPlan plan{flow_, 0.0};
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) plan.cost += flow_(i, j) * cost_(i, j);
    }
    return plan;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void northwest_corner(const Histogram& source, const Histogram& target) {
    std::vector<double> supply = source.weights();
    std::vector<double> demand = target.weights();
    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
      double x = std::min(supply[i], demand[j]);
      flow_(i, j) = x;
      basic_[i * m_ + j] = true;
      supply[i] -= x;
      demand[j] -= x;
      if (i == n_ - 1 && j == m_ - 1) break;
      if (i == n_ - 1) {
        ++j;
      } else if (j == m_ - 1 || supply[i] <= demand[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n_ + m_);
    for (std::size_t cell = 0; cell < n_ * m_; ++cell) {
      if (!basic_[cell]) continue;
      std::size_t i = cell / m_;
      std::size_t j = cell % m_;
      adj[i].push_back(n_ + j);
      adj[n_ + j].push_back(i);
    }
    return adj;
  }

  // u_i + v_j = c_ij on every basic cell, anchored at u_0 = 0.
  void compute_potentials() {
    auto adj = adjacency();
    std::vector<bool> seen(n_ + m_, false);
    std::queue<std::size_t> queue;
    u_[0] = 0.0;
    seen[0] = true;
    queue.push(0);
    while (!queue.empty()) {
      std::size_t node = queue.front();
      queue.pop();
      for (std::size_t next : adj[node]) {
        if (seen[next]) continue;
        seen[next] = true;
        if (node < n_) {
          v_[next - n_] = cost_(node, next - n_) - u_[node];
        } else {
          u_[next] = cost_(next, node - n_) - v_[node - n_];
        }
        queue.push(next);
      }
    }
  }

  // Tree path from row node `from` to column node `to`, as a list of cells.
  std::vector<std::size_t> tree_path(std::size_t from, std::size_t to) const {
    auto adj = adjacency();
    std::vector<std::size_t> parent(n_ + m_, kNone);
    std::queue<std::size_t> queue;
    parent[from] = from;
    queue.push(from);
    while (!queue.empty() && parent[to] == kNone) {
      std::size_t node = queue.front();
      queue.pop();
      for (std::size_t next : adj[node]) {
        if (parent[next] != kNone) continue;
        parent[next] = node;
        queue.push(next);
      }
    }
    if (parent[to] == kNone) {
      throw std::logic_error("transport basis is not a spanning tree");
    }
    std::vector<std::size_t> cells;
    for (std::size_t node = to; node != from; node = parent[node]) {
      std::size_t prev = parent[node];
      std::size_t row = node < n_ ? node : prev;
      std::size_t col = node < n_ ? prev - n_ : node - n_;
      cells.push_back(row * m_ + col);
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
  }

  void pivot(std::size_t entering) {
    const std::size_t ei = entering / m_;
    const std::size_t ej = entering % m_;
    // Path cells alternate in sign; the one touching column ej is a donor.
    std::vector<std::size_t> path = tree_path(ei, n_ + ej);
    const std::size_t k = path.size();

    double theta = std::numeric_limits<double>::infinity();
    std::size_t leaving = kNone;
    for (std::size_t t = 0; t < k; ++t) {
      bool donor = (k - 1 - t) % 2 == 0;
      if (!donor) continue;
      double x = flow_(path[t] / m_, path[t] % m_);
      if (x < theta || (x == theta && path[t] < leaving)) {
        theta = x;
        leaving = path[t];
      }
    }

    for (std::size_t t = 0; t < k; ++t) {
      double& x = flow_(path[t] / m_, path[t] % m_);
      bool donor = (k - 1 - t) % 2 == 0;
      x = donor ? x - theta : x + theta;
    }
    flow_(ei, ej) = theta;
    flow_(leaving / m_, leaving % m_) = 0.0;
    basic_[leaving] = false;
    basic_[entering] = true;
  }

  std::size_t n_;
  std::size_t m_;
  const CostMatrix& cost_;
  CostMatrix flow_;
  std::vector<bool> basic_;
  std::vector<double> u_;
  std::vector<double> v_;
};

}  // namespace

TransportPlan solve_emd(const Histogram& source, const Histogram& target,
                        const CostMatrix& cost) {
  if (cost.rows() != source.size() || cost.cols() != target.size()) {
    throw TransportError("cost matrix is " + std::to_string(cost.rows()) + "x" +
                         std::to_string(cost.cols()) + " but histograms have " +
                         std::to_string(source.size()) + " and " +
                         std::to_string(target.size()) + " bins");
  }
  for (std::size_t i = 0; i < cost.rows(); ++i) {
    for (std::size_t j = 0; j < cost.cols(); ++j) {
      double c = cost(i, j);
      if (!std::isfinite(c) || c < 0.0) {
        throw TransportError("costs must be finite and nonnegative");
      }
    }
  }
  Tableau tableau(source, target, cost);
  tableau.optimize();
  return tableau.plan();
}

}  // namespace sightsee
