#include <doctest.h>

#include <array>
#include <vector>

#include "netprop/graphs.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace netprop;
using test_util::code_of;

TEST_CASE("build_social_network normalizes rows") {
  Matrix k2(2, 2);
  k2 << 0, 1, 1, 0;
  const auto net = build_social_network(k2);
  CHECK(net.normalized == k2);

  Matrix star(3, 3);
  star << 0, 1, 1, 1, 0, 0, 1, 0, 0;
  const auto s = build_social_network(star);
  CHECK(s.normalized(0, 1) == doctest::Approx(0.5));
  CHECK(s.normalized(0, 2) == doctest::Approx(0.5));
  CHECK(s.normalized(1, 0) == 1.0);
  CHECK(s.normalized(2, 0) == 1.0);
  for (int i = 0; i < 3; ++i) CHECK(s.normalized.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("build_social_network rejects invalid inputs") {
  Matrix asym(2, 2);
  asym << 0, 1, 0, 0;
  CHECK(code_of([&] { build_social_network(asym); }) == ErrorCode::NotSymmetric);

  Matrix loop(2, 2);
  loop << 1, 1, 1, 0;
  CHECK(code_of([&] { build_social_network(loop); }) == ErrorCode::SelfLoopPresent);

  Matrix disconnected = Matrix::Zero(4, 4);
  disconnected(0, 1) = disconnected(1, 0) = 1.0;
  disconnected(2, 3) = disconnected(3, 2) = 1.0;
  CHECK(code_of([&] { build_social_network(disconnected); }) == ErrorCode::Disconnected);

  Matrix isolated = Matrix::Zero(3, 3);
  isolated(0, 1) = isolated(1, 0) = 1.0;
  CHECK(code_of([&] { build_social_network(isolated); }) == ErrorCode::IsolatedNode);

  CHECK(code_of([&] { build_social_network(Matrix::Zero(2, 3)); }) ==
        ErrorCode::DimensionMismatch);

  Matrix weighted(2, 2);
  weighted << 0, 0.5, 0.5, 0;
  CHECK(code_of([&] { build_social_network(weighted); }) == ErrorCode::InvalidEntry);
}

TEST_CASE("open-mindedness must lie strictly inside (0,1)") {
  Vector good(2);
  good << 0.2, 0.9;
  CHECK_NOTHROW(make_open_mindedness(good));
  Vector bad(2);
  bad << 0.2, 1.0;
  CHECK(code_of([&] { make_open_mindedness(bad); }) == ErrorCode::InvalidEntry);
}

namespace {

Matrix paper_two_state() {
  Matrix d(2, 2);
  d << 0.6, 0.4, 0.3, 0.7;
  return d;
}

Matrix combined_structure() {
  // Two absorbing SCCs {0,1} and {2} plus one transient state 3 feeding
  // product 1.
  Matrix d(4, 4);
  d << 0.6, 0.4, 0.0, 0.0,
       0.3, 0.7, 0.0, 0.0,
       0.0, 0.0, 1.0, 0.0,
       0.0, 0.8, 0.0, 0.2;
  return d;
}

}  // namespace

TEST_CASE("decompose_conversion_graph classifies the four cases") {
  const auto case1 = decompose_conversion_graph(paper_two_state());
  CHECK(case1.case_label == DeltaCase::Case1);
  CHECK(case1.num_sccs() == 1);
  CHECK(case1.sccs[0] == std::vector<int>{0, 1});
  CHECK(case1.transient.empty());

  Matrix block_diag = Matrix::Zero(4, 4);
  block_diag.topLeftCorner(2, 2) = paper_two_state();
  block_diag(2, 2) = 0.5;
  block_diag(2, 3) = 0.5;
  block_diag(3, 2) = 0.1;
  block_diag(3, 3) = 0.9;
  const auto case3 = decompose_conversion_graph(block_diag);
  CHECK(case3.case_label == DeltaCase::Case3);
  CHECK(case3.num_sccs() == 2);
  CHECK(case3.sccs[1] == std::vector<int>{2, 3});

  const auto case4 = decompose_conversion_graph(combined_structure());
  CHECK(case4.case_label == DeltaCase::Case4);
  CHECK(case4.num_sccs() == 2);
  CHECK(case4.sccs[0] == std::vector<int>{0, 1});
  CHECK(case4.sccs[1] == std::vector<int>{2});
  CHECK(case4.transient == std::vector<int>{3});
  CHECK(case4.transient_block(0, 0) == 0.2);
  CHECK(case4.inflow_blocks[0](0, 0) == 0.0);
  CHECK(case4.inflow_blocks[0](0, 1) == 0.8);
  CHECK(case4.inflow_blocks[1](0, 0) == 0.0);

  Matrix with_transient(3, 3);
  with_transient << 0.6, 0.4, 0.0,
                    0.3, 0.7, 0.0,
                    0.5, 0.0, 0.5;
  const auto case2 = decompose_conversion_graph(with_transient);
  CHECK(case2.case_label == DeltaCase::Case2);
  CHECK(case2.transient == std::vector<int>{2});
}

TEST_CASE("decompose_conversion_graph validates and renormalizes") {
  Matrix negative(2, 2);
  negative << 1.2, -0.2, 0.5, 0.5;
  CHECK(code_of([&] { decompose_conversion_graph(negative); }) == ErrorCode::NegativeEntry);

  Matrix off(2, 2);
  off << 0.7, 0.7, 0.5, 0.5;
  CHECK(code_of([&] { decompose_conversion_graph(off); }) == ErrorCode::NotRowStochastic);

  // Rows off by less than 1e-9 are rescaled.
  Matrix close(2, 2);
  close << 0.6 + 4e-10, 0.4, 0.3, 0.7;
  const auto pcg = decompose_conversion_graph(close);
  CHECK(pcg.delta.row(0).sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("periodic absorbing SCC is flagged") {
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  const auto pcg = decompose_conversion_graph(flip);
  CHECK(pcg.case_label == DeltaCase::Case1);
  CHECK_FALSE(pcg.scc_aperiodic[0]);
  CHECK(decompose_conversion_graph(paper_two_state()).scc_aperiodic[0]);
}

TEST_CASE("block reassembly reproduces the input exactly") {
  CHECK(decompose_conversion_graph(combined_structure()).reassemble() == combined_structure());

  RngStream rng(321);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + rng.uniform_index(6);
    const Matrix delta = test_util::random_row_stochastic(rng, n, 0.45);
    const auto pcg = decompose_conversion_graph(delta);
    CHECK(pcg.reassemble() == pcg.delta);
  }
}

namespace {

// Partition signature (component id per node, ids by first appearance) so
// two partitions compare cheaply.
std::array<int, 5> partition_signature(const std::vector<std::vector<int>>& comps, int n) {
  std::array<int, 5> sig{};
  sig.fill(-1);
  int next = 0;
  for (const auto& comp : comps) {
    for (int v : comp) sig[v] = next;
    ++next;
  }
  (void)n;
  return sig;
}

}  // namespace

TEST_CASE("SCC decomposition matches the reachability oracle on every 5-node digraph") {
  // Self loops do not change the partition, so the 2^20 loop-free digraphs
  // cover all of them. The oracle is a bitmask transitive closure.
  std::vector<std::vector<int>> adj(5);
  int checked = 0;
  for (unsigned mask = 0; mask < (1u << 20); ++mask) {
    unsigned closure[5];
    int bit = 0;
    for (int i = 0; i < 5; ++i) {
      adj[i].clear();
      closure[i] = 0;
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        if (mask & (1u << bit)) {
          adj[i].push_back(j);
          closure[i] |= (1u << j);
        }
        ++bit;
      }
    }
    for (int k = 0; k < 5; ++k) {
      for (int i = 0; i < 5; ++i) {
        if (closure[i] & (1u << k)) closure[i] |= closure[k];
      }
    }
    std::array<int, 5> oracle_sig{};
    oracle_sig.fill(-1);
    int next = 0;
    for (int i = 0; i < 5; ++i) {
      if (oracle_sig[i] != -1) continue;
      oracle_sig[i] = next;
      for (int j = i + 1; j < 5; ++j) {
        if ((closure[i] & (1u << j)) && (closure[j] & (1u << i))) oracle_sig[j] = next;
      }
      ++next;
    }
    const auto got = partition_signature(strongly_connected_components(adj), 5);
    if (got != oracle_sig) {
      CAPTURE(mask);
      REQUIRE(got == oracle_sig);
    }
    ++checked;
  }
  CHECK(checked == 1 << 20);

  // Spot-check the slower generic oracle agrees with the bitmask one.
  RngStream rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::vector<int>> g(5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (rng.uniform() < 0.3) g[i].push_back(j);
      }
    }
    REQUIRE(strongly_connected_components(g) == oracles::scc_by_reachability(g));
  }
}

TEST_CASE("dominant left eigenvector for two-state chains") {
  const Vector w = dominant_left_eigenvector(paper_two_state());
  const Vector expected = oracles::two_state_stationary(0.4, 0.3);
  CHECK(w[0] == doctest::Approx(expected[0]).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(expected[1]).epsilon(1e-12));
  CHECK(w[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-12));

  Matrix m2(2, 2);
  m2 << 0.5, 0.5, 0.1, 0.9;
  const Vector w2 = dominant_left_eigenvector(m2);
  CHECK(w2[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(w2[1] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("dominant left eigenvector reports non-convergence") {
  Matrix slow(2, 2);
  slow << 0.999, 0.001, 0.0005, 0.9995;  // slow chain, uniform start far from stationary
  CHECK(code_of([&] { dominant_left_eigenvector(slow, 1e-13, 3); }) == ErrorCode::NotConverged);
}

TEST_CASE("dominant left eigenvector rejects reducible or periodic input") {
  CHECK(code_of([&] { dominant_left_eigenvector(Matrix::Identity(2, 2)); }) ==
        ErrorCode::PeriodicOrReducible);
  Matrix flip(2, 2);
  flip << 0, 1, 1, 0;
  CHECK(code_of([&] { dominant_left_eigenvector(flip); }) == ErrorCode::PeriodicOrReducible);
}

TEST_CASE("dominant left eigenvector satisfies its residual bound") {
  RngStream rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + rng.uniform_index(7);
    // Strictly positive rows: primitive by construction.
    const Matrix m = test_util::random_row_stochastic(rng, n, 0.0);
    const Vector w = dominant_left_eigenvector(m, 1e-12);
    REQUIRE(w.minCoeff() > 0.0);
    REQUIRE(std::abs(w.sum() - 1.0) < 1e-9);
    REQUIRE((m.transpose() * w - w).cwiseAbs().sum() <= 1e-12);
  }
}

TEST_CASE("mixing matrix") {
  Matrix k2(2, 2);
  k2 << 0, 1, 1, 0;
  const auto net = build_social_network(k2);
  Vector a(2);
  a << 0.5, 0.5;
  const Matrix m = mixing_matrix(net, make_open_mindedness(a));
  CHECK(m(0, 0) == doctest::Approx(0.5));
  CHECK(m(0, 1) == doctest::Approx(0.5));

  const Vector w = dominant_left_eigenvector(m);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));

  // Small alpha keeps the matrix near the identity but exactly stochastic.
  RngStream rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + rng.uniform_index(8);
    const auto g = test_util::random_connected_graph(rng, n);
    const auto alpha = make_open_mindedness(test_util::random_alpha(rng, n, 0.01, 0.99));
    const Matrix mix = mixing_matrix(g, alpha);
    REQUIRE((mix.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-12);
    REQUIRE(mix.diagonal().minCoeff() > 0.0);
  }

  Vector wrong(3);
  wrong << 0.5, 0.5, 0.5;
  CHECK(code_of([&] { mixing_matrix(net, make_open_mindedness(wrong)); }) ==
        ErrorCode::DimensionMismatch);
}
