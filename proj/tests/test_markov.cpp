#include <doctest.h>

#include <cmath>
#include <vector>

#include "netprop/graph_gen.hpp"
#include "netprop/markov.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace netprop;
using test_util::code_of;

namespace {

struct TwoNodeFixture {
  SocialNetwork net = complete_graph(2);
  OpenMindedness alpha;
  ProductConversionGraph pcg;
  Matrix p0 = Matrix::Zero(2, 2);

  TwoNodeFixture() {
    Vector a(2);
    a << 0.5, 0.5;
    alpha = make_open_mindedness(a);
    Matrix delta(2, 2);
    delta << 0.5, 0.5, 0.5, 0.5;
    pcg = decompose_conversion_graph(delta);
    p0.col(0).setOnes();  // both nodes start on product 1
  }
};

}  // namespace

TEST_CASE("consensus is invariant under the identity conversion graph") {
  RngStream rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.uniform_index(6);
    const int products = 2 + rng.uniform_index(3);
    const auto net = test_util::random_connected_graph(rng, n);
    const auto alpha = make_open_mindedness(test_util::random_alpha(rng, n));
    const auto pcg = decompose_conversion_graph(Matrix::Identity(products, products));
    const int shared = rng.uniform_index(products);
    const AgentStateVector state(n, shared);

    RngStream step_rng(trial);
    REQUIRE(step_social_self(net, alpha, pcg, state, step_rng) == state);
    REQUIRE(step_self_social(net, alpha, pcg, state, step_rng) == state);
  }
}

TEST_CASE("hand-enumerated two-node step probabilities") {
  TwoNodeFixture fx;
  const std::uint64_t samples = 100000;

  // Social-self: the social branch keeps product 1, the self branch flips
  // with probability 1/2, so P[product 2 next] = 0.5 * 0.5 = 0.25.
  const auto social_self = estimate_trajectories(ConversionOrder::SocialSelf, fx.net, fx.alpha,
                                                 fx.pcg, fx.p0, 1, samples, 7);
  const double sigma = std::sqrt(0.25 * 0.75 / static_cast<double>(samples));
  CHECK(std::abs(social_self.estimate(1, 0, 1) - 0.25) <= 3.0 * sigma);
  CHECK(std::abs(social_self.estimate(1, 1, 1) - 0.25) <= 3.0 * sigma);

  // Self-social: the self draw flips with probability 1/2; a node that
  // stays sees only product-1 neighbors, so P[product 2 next] = 0.5.
  const auto self_social = estimate_trajectories(ConversionOrder::SelfSocial, fx.net, fx.alpha,
                                                 fx.pcg, fx.p0, 1, samples, 8);
  const double sigma_half = std::sqrt(0.25 / static_cast<double>(samples));
  CHECK(std::abs(self_social.estimate(1, 0, 1) - 0.5) <= 3.0 * sigma_half);
}

TEST_CASE("alpha near one copies a neighbor almost surely") {
  const auto net = star_graph(4);
  const auto alpha = make_open_mindedness(Vector::Constant(4, 1.0 - 1e-12));
  Matrix delta(2, 2);
  delta << 0.5, 0.5, 0.5, 0.5;
  const auto pcg = decompose_conversion_graph(delta);

  // Leaves copy the hub's product, the hub copies some leaf.
  AgentStateVector state{1, 0, 0, 0};
  RngStream rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto next = step_social_self(net, alpha, pcg, state, rng);
    CHECK(next[1] == 1);
    CHECK(next[2] == 1);
    CHECK(next[3] == 1);
    CHECK(next[0] == 0);
  }
}

TEST_CASE("single product never changes state") {
  RngStream rng(77);
  const auto net = test_util::random_connected_graph(rng, 5);
  const auto alpha = make_open_mindedness(test_util::random_alpha(rng, 5));
  const auto pcg = decompose_conversion_graph(Matrix::Ones(1, 1));
  const auto traj = estimate_trajectories(ConversionOrder::SelfSocial, net, alpha, pcg,
                                          Matrix::Ones(5, 1), 10, 50, 1);
  for (int t = 0; t <= 10; ++t) {
    for (int i = 0; i < 5; ++i) REQUIRE(traj.count(t, i, 0) == 50);
  }
}

TEST_CASE("identical seeds reproduce identical counts, serial equals parallel") {
  RngStream rng(31337);
  const auto net = test_util::random_connected_graph(rng, 8);
  const auto alpha = make_open_mindedness(test_util::random_alpha(rng, 8));
  const auto pcg = decompose_conversion_graph(test_util::random_row_stochastic(rng, 3, 0.3));
  const Matrix p0 = test_util::random_probability_matrix(rng, 8, 3);

  const auto a = estimate_trajectories(ConversionOrder::SocialSelf, net, alpha, pcg, p0, 12, 500,
                                       123, ExecutionMode::Parallel);
  const auto b = estimate_trajectories(ConversionOrder::SocialSelf, net, alpha, pcg, p0, 12, 500,
                                       123, ExecutionMode::Parallel);
  const auto c = estimate_trajectories_serial(ConversionOrder::SocialSelf, net, alpha, pcg, p0,
                                              12, 500, 123);
  REQUIRE(a.counts == b.counts);
  REQUIRE(a.counts == c.counts);

  const auto d = estimate_trajectories(ConversionOrder::SelfSocial, net, alpha, pcg, p0, 12, 500,
                                       123, ExecutionMode::Parallel);
  const auto e = estimate_trajectories_serial(ConversionOrder::SelfSocial, net, alpha, pcg, p0,
                                              12, 500, 123);
  REQUIRE(d.counts == e.counts);
  CHECK(d.counts != a.counts);
}

TEST_CASE("counts partition the sample set exactly") {
  RngStream rng(4242);
  const auto net = test_util::random_connected_graph(rng, 6);
  const auto alpha = make_open_mindedness(test_util::random_alpha(rng, 6));
  const auto pcg = decompose_conversion_graph(test_util::random_row_stochastic(rng, 4, 0.4));
  const Matrix p0 = test_util::random_probability_matrix(rng, 6, 4);
  const std::uint64_t samples = 777;

  const auto traj =
      estimate_trajectories(ConversionOrder::SelfSocial, net, alpha, pcg, p0, 9, samples, 5);
  for (int t = 0; t <= 9; ++t) {
    for (int i = 0; i < 6; ++i) {
      std::uint64_t total = 0;
      for (int r = 0; r < 4; ++r) total += traj.count(t, i, r);
      REQUIRE(total == samples);
    }
  }
}

TEST_CASE("one sample at horizon zero is a one-hot draw of P0") {
  TwoNodeFixture fx;
  const auto traj = estimate_trajectories(ConversionOrder::SocialSelf, fx.net, fx.alpha, fx.pcg,
                                          fx.p0, 0, 1, 9);
  for (int i = 0; i < 2; ++i) {
    CHECK(traj.count(0, i, 0) + traj.count(0, i, 1) == 1);
    CHECK(traj.count(0, i, 0) == 1);  // all initial mass on product 1
  }
}

TEST_CASE("invalid initial distribution is rejected") {
  TwoNodeFixture fx;
  Matrix bad = Matrix::Constant(2, 2, 0.4);
  CHECK(code_of([&] {
          estimate_trajectories(ConversionOrder::SocialSelf, fx.net, fx.alpha, fx.pcg, bad, 1, 10,
                                0);
        }) == ErrorCode::InvalidInitialDistribution);
  CHECK(code_of([&] {
          estimate_trajectories(ConversionOrder::SocialSelf, fx.net, fx.alpha, fx.pcg,
                                Matrix::Ones(3, 2), 1, 10, 0);
        }) == ErrorCode::InvalidInitialDistribution);
}

TEST_CASE("products with no initial mass and no inflow stay empty") {
  // Product 2 (index) is absorbing but unreachable: the transient state
  // feeds product 1 only and P0 gives index 2 zero mass.
  Matrix delta(4, 4);
  delta << 0.6, 0.4, 0.0, 0.0,
           0.3, 0.7, 0.0, 0.0,
           0.0, 0.0, 1.0, 0.0,
           0.0, 0.8, 0.0, 0.2;
  RngStream rng(1001);
  const auto net = test_util::random_connected_graph(rng, 5, 0.4);
  const auto alpha = make_open_mindedness(test_util::random_alpha(rng, 5));
  const auto pcg = decompose_conversion_graph(delta);
  Matrix p0(5, 4);
  for (int i = 0; i < 5; ++i) {
    const double a = rng.uniform(), b = rng.uniform();
    const double u = 0.2 + 0.6 * rng.uniform();
    p0(i, 0) = u * a / (a + b);
    p0(i, 1) = u * b / (a + b);
    p0(i, 2) = 0.0;
    p0(i, 3) = 1.0 - u;
  }
  const auto traj =
      estimate_trajectories(ConversionOrder::SocialSelf, net, alpha, pcg, p0, 30, 2000, 6);
  for (int t = 0; t <= 30; ++t) {
    for (int i = 0; i < 5; ++i) REQUIRE(traj.count(t, i, 2) == 0);
  }
}

TEST_CASE("monte carlo marginals track the exact joint chain") {
  RngStream rng(860);
  Matrix k3 = Matrix::Ones(3, 3);
  k3.diagonal().setZero();
  const auto net = build_social_network(k3);
  const Vector alpha_values = test_util::random_alpha(rng, 3, 0.2, 0.8);
  const auto alpha = make_open_mindedness(alpha_values);
  const Matrix delta = test_util::random_row_stochastic(rng, 3);
  const auto pcg = decompose_conversion_graph(delta);
  const Matrix p0 = test_util::random_probability_matrix(rng, 3, 3);
  const std::uint64_t samples = 60000;

  for (const auto order : {ConversionOrder::SocialSelf, ConversionOrder::SelfSocial}) {
    const oracles::ExactChain chain(order, net, alpha_values, pcg.delta);
    const auto traj = estimate_trajectories(order, net, alpha, pcg, p0, 4, samples, 17);
    for (int t = 0; t <= 4; ++t) {
      const Matrix exact = chain.marginals_at(p0, t);
      for (int i = 0; i < 3; ++i) {
        for (int r = 0; r < 3; ++r) {
          const double p = exact(i, r);
          const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
          // 4 sigma: ~90 two-sided assertions share this sweep
          REQUIRE(std::abs(traj.estimate(t, i, r) - p) <= 4.0 * sigma + 1e-9);
        }
      }
    }
  }
}
