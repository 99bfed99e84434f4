#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "potentialforge/error.hpp"
#include "potentialforge/stationary.hpp"
#include "support.hpp"

using namespace potentialforge;

namespace {

double inf_norm_gap(const std::vector<double>& a, const std::vector<double>& b) {
  return pf_test::max_abs_diff(a, b);
}

}  // namespace

TEST(Gth, TwoStateChain) {
  // pi = (b, a) / (a + b) for [[1-a, a], [b, 1-b]].
  const double a = 0.3, b = 0.1;
  const std::vector<double> pi =
      stationary_gth(DenseMatrix(2, 2, {1 - a, a, b, 1 - b}));
  EXPECT_NEAR(pi[0], b / (a + b), 1e-15);
  EXPECT_NEAR(pi[1], a / (a + b), 1e-15);
}

TEST(Gibbs, StableAtLargeBeta) {
  const std::vector<double> p{0.0, 1.0, 2.0};
  const std::vector<double> mu = gibbs(p, 1000.0);
  EXPECT_NEAR(mu[2], 1.0, 1e-15);
  EXPECT_EQ(mu[0], 0.0);
  const std::vector<double> flat = gibbs(p, 0.0);
  for (double m : flat) EXPECT_NEAR(m, 1.0 / 3.0, 1e-15);
}

TEST(Stationary, IdenticalInterestAtLnTwo) {
  const Dims d{2, 2};
  const GameFunction p = GameFunction::full(d, {0, 1, 1, 2});
  const NetworkedGame g = NetworkedGame(d, {{1}, {0}}).with_utilities({p, p});
  const StationaryResult r = exact_stationary(g, std::log(2.0), Learner::kLogit);
  ASSERT_TRUE(r.irreducible);
  const std::vector<double> expected{1.0 / 9, 2.0 / 9, 2.0 / 9, 4.0 / 9};
  EXPECT_LE(inf_norm_gap(r.distribution, expected), 1e-15);
}

TEST(Stationary, BetaZeroIsUniform) {
  std::mt19937_64 gen(1);
  const auto pg = pf_test::random_potential_game(gen, {3, 2, 2});
  const StationaryResult r = exact_stationary(pg.game, 0.0, Learner::kLogit);
  for (double m : r.distribution) EXPECT_NEAR(m, 1.0 / 12.0, 1e-15);
}

TEST(Stationary, LogitMatchesGibbsOnRandomPotentialGames) {
  std::mt19937_64 gen(83);
  std::uniform_int_distribution<std::size_t> kd(2, 4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> k(2 + trial % 3);
    for (auto& c : k) c = kd(gen);
    const auto pg = pf_test::random_potential_game(gen, k);
    for (double beta : {0.0, 0.5, 2.0}) {
      const StationaryResult r = exact_stationary(pg.game, beta, Learner::kLogit);
      ASSERT_TRUE(r.irreducible);
      EXPECT_LE(inf_norm_gap(r.distribution, gibbs(pg.potential, beta)), 1e-10);
    }
  }
}

TEST(Stationary, LogitDetailedBalance) {
  std::mt19937_64 gen(89);
  const auto pg = pf_test::random_potential_game(gen, {3, 2, 3});
  const double beta = 1.4;
  const DenseMatrix m = transition_matrix(pg.game, beta, Learner::kLogit, std::nullopt);
  const std::vector<double> mu = gibbs(pg.potential, beta);
  for (std::size_t x = 0; x < m.rows(); ++x) {
    double sum = 0.0;
    for (std::size_t y = 0; y < m.cols(); ++y) {
      EXPECT_GE(m(x, y), 0.0);
      sum += m(x, y);
      EXPECT_NEAR(mu[x] * m(x, y), mu[y] * m(y, x), 1e-12);
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Stationary, BrlMatchesGibbsOnReachableProfiles) {
  std::mt19937_64 gen(97);
  const auto pg = pf_test::random_potential_game(gen, {3, 3});
  const Dims& d = pg.game.dims();
  // Reversible path restriction on both players; strategy 2 of player 2 is
  // isolated, which splits the chain into closed classes.
  const Restriction r(d, {{{0, 1}, {0, 1, 2}, {1, 2}},
                          {{0, 1}, {0, 1}, {2}}});
  const double beta = 0.9;
  const StationaryResult res =
      exact_stationary(pg.game, beta, Learner::kBinaryRestrictive, r);
  EXPECT_FALSE(res.irreducible);
  ASSERT_EQ(res.components.size(), 2u);
  EXPECT_TRUE(res.distribution.empty());
  for (const StationaryComponent& c : res.components) {
    std::vector<double> local;
    for (std::size_t s : c.states) local.push_back(pg.potential[s]);
    EXPECT_LE(inf_norm_gap(c.probabilities, gibbs(local, beta)), 1e-12);
  }
  // First class: player 2 on strategies {0,1}; second: player 2 on 2.
  EXPECT_EQ(res.components[0].states, (std::vector<std::size_t>{0, 1, 3, 4, 6, 7}));
  EXPECT_EQ(res.components[1].states, (std::vector<std::size_t>{2, 5, 8}));
}

TEST(Stationary, TransientStatesGetZeroMass) {
  // Player 1 can enter strategy 1 from 0 but never leave: 0 is transient.
  const Dims d{2};
  const NetworkedGame g =
      NetworkedGame(d, {{}}).with_utilities({GameFunction::full(d, {0, 0})});
  const Restriction r(d, {{{0, 1}, {1}}});
  const StationaryResult res =
      exact_stationary(g, 1.0, Learner::kBinaryRestrictive, r);
  EXPECT_FALSE(res.irreducible);
  ASSERT_EQ(res.components.size(), 1u);
  EXPECT_EQ(res.distribution, (std::vector<double>{0.0, 1.0}));
}

TEST(Stationary, CapExceeded) {
  std::mt19937_64 gen(3);
  const auto pg = pf_test::random_potential_game(gen, {3, 3});
  EXPECT_THROW(exact_stationary(pg.game, 1.0, Learner::kLogit, std::nullopt, 8),
               DimensionOverflow);
  EXPECT_THROW(transition_matrix(pg.game, 1.0, Learner::kLogit, std::nullopt, 8),
               DimensionOverflow);
}

TEST(Stationary, LargeBetaConcentratesOnArgmax) {
  std::mt19937_64 gen(101);
  const auto pg = pf_test::random_potential_game(gen, {3, 3, 2});
  const StationaryResult r = exact_stationary(pg.game, 60.0, Learner::kLogit);
  const std::size_t best = static_cast<std::size_t>(
      std::max_element(pg.potential.begin(), pg.potential.end()) -
      pg.potential.begin());
  EXPECT_GT(r.distribution[best], 0.99);
}
