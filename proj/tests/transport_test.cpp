#include "sightsee/transport.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "support/transport_oracle.hpp"

namespace sightsee {
namespace {

std::vector<double> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) total += x = u(rng);
  for (auto& x : w) x /= total;
  return w;
}

CostMatrix random_cost(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  CostMatrix c(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) c(i, j) = u(rng);
  return c;
}

oracle::Instance to_instance(const Histogram& mu, const Histogram& nu,
                             const CostMatrix& c) {
  oracle::Instance inst{mu.weights(), nu.weights(), {}};
  for (std::size_t i = 0; i < c.rows(); ++i) {
    inst.cost.emplace_back();
    for (std::size_t j = 0; j < c.cols(); ++j) inst.cost.back().push_back(c(i, j));
  }
  return inst;
}

void expect_feasible(const TransportPlan& plan, const Histogram& mu,
                     const Histogram& nu, const CostMatrix& c) {
  double cost = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < nu.size(); ++j) {
      EXPECT_GE(plan.flows(i, j), -1e-12);
      row += plan.flows(i, j);
      cost += plan.flows(i, j) * c(i, j);
    }
    EXPECT_NEAR(row, mu[i], 1e-7);
  }
  for (std::size_t j = 0; j < nu.size(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) col += plan.flows(i, j);
    EXPECT_NEAR(col, nu[j], 1e-7);
  }
  EXPECT_LE(std::abs(cost - plan.cost), 1e-9 * std::max(1.0, std::abs(cost)));
}

TEST(SolveEmd, SingleCell) {
  Histogram mu({1.0});
  TransportPlan plan = solve_emd(mu, mu, CostMatrix{{0.3}});
  EXPECT_DOUBLE_EQ(plan.cost, 0.3);
  EXPECT_DOUBLE_EQ(plan.flows(0, 0), 1.0);
}

TEST(SolveEmd, IdentityTransport) {
  Histogram mu({0.5, 0.5});
  EXPECT_NEAR(solve_emd(mu, mu, CostMatrix{{0, 1}, {1, 0}}).cost, 0.0, 1e-12);
}

TEST(SolveEmd, ShipsTheSurplus) {
  Histogram mu({0.6, 0.4});
  Histogram nu({0.5, 0.5});
  CostMatrix c{{0, 1}, {1, 0}};
  TransportPlan plan = solve_emd(mu, nu, c);
  EXPECT_NEAR(plan.cost, 0.1, 1e-12);
  EXPECT_NEAR(plan.flows(0, 1), 0.1, 1e-12);
  expect_feasible(plan, mu, nu, c);
}

TEST(SolveEmd, RejectsBadInput) {
  EXPECT_THROW(Histogram({}), TransportError);
  EXPECT_THROW(Histogram({0.5, 0.6}), TransportError);
  EXPECT_THROW(Histogram({1.5, -0.5}), TransportError);
  EXPECT_THROW(Histogram({std::nan("")}), TransportError);
  Histogram mu({1.0});
  Histogram nu({0.5, 0.5});
  EXPECT_THROW(solve_emd(mu, nu, CostMatrix{{1.0}}), TransportError);
  EXPECT_THROW(solve_emd(mu, nu, CostMatrix{{1.0, -1.0}}), TransportError);
}

TEST(SolveEmd, RescalesFloatDust) {
  Histogram h({0.5, 0.5 + 5e-10});
  EXPECT_DOUBLE_EQ(h[0] + h[1], 1.0);
}

TEST(SolveEmdProperties, MatchesOracle) {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = dim(rng);
    std::size_t m = dim(rng);
    Histogram mu(random_weights(rng, n));
    Histogram nu(random_weights(rng, m));
    CostMatrix c = random_cost(rng, n, m);
    TransportPlan plan = solve_emd(mu, nu, c);
    EXPECT_NEAR(plan.cost, oracle::min_cost(to_instance(mu, nu, c)), 1e-6)
        << "trial " << trial;
    expect_feasible(plan, mu, nu, c);
  }
}

TEST(SolveEmdProperties, DegenerateMarginals) {
  // Equal partial sums force degenerate bases.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    Histogram mu({0.25, 0.25, 0.25, 0.25});
    Histogram nu({0.5, 0.25, 0.25});
    CostMatrix c = random_cost(rng, 4, 3);
    TransportPlan plan = solve_emd(mu, nu, c);
    EXPECT_NEAR(plan.cost, oracle::min_cost(to_instance(mu, nu, c)), 1e-9);
    expect_feasible(plan, mu, nu, c);
  }
}

TEST(SolveEmdProperties, SymmetryScalingAndZeroDiagonal) {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = dim(rng);
    std::size_t m = dim(rng);
    Histogram mu(random_weights(rng, n));
    Histogram nu(random_weights(rng, m));
    CostMatrix c = random_cost(rng, n, m);
    double cost = solve_emd(mu, nu, c).cost;
    EXPECT_NEAR(solve_emd(nu, mu, c.transposed()).cost, cost, 1e-9);

    double k = scale(rng);
    CostMatrix scaled = c;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) scaled(i, j) *= k;
    EXPECT_LE(std::abs(solve_emd(mu, nu, scaled).cost - k * cost),
              1e-9 * std::max(1.0, k * cost));

    CostMatrix square = random_cost(rng, n, n);
    for (std::size_t i = 0; i < n; ++i) square(i, i) = 0.0;
    EXPECT_NEAR(solve_emd(mu, mu, square).cost, 0.0, 1e-12);
  }
}

}  // namespace
}  // namespace sightsee
