#include "netprop/graph_gen.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "netprop/rng.hpp"

namespace netprop {

SocialNetwork complete_graph(int n) {
  if (n < 2) fail(ErrorCode::ConfigInvalid, "complete graph needs n >= 2");
  Matrix a = Matrix::Ones(n, n);
  a.diagonal().setZero();
  return build_social_network(a);
}

SocialNetwork star_graph(int n) {
  if (n < 2) fail(ErrorCode::ConfigInvalid, "star graph needs n >= 2");
  Matrix a = Matrix::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    a(0, i) = 1.0;
    a(i, 0) = 1.0;
  }
  return build_social_network(a);
}

SocialNetwork erdos_renyi_graph(int n, double p, std::uint64_t seed, int max_attempts) {
  if (n < 2 || !(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::ConfigInvalid, "erdos_renyi needs n >= 2 and p in [0,1]");
  }
  RngStream rng(seed);
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Matrix a = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.uniform() < p) {
          a(i, j) = 1.0;
          a(j, i) = 1.0;
        }
      }
    }
    try {
      return build_social_network(a);
    } catch (const Error&) {
      // disconnected or isolated draw; resample
    }
  }
  fail(ErrorCode::GenerationFailed,
       "no connected G(" + std::to_string(n) + ", " + std::to_string(p) + ") in " +
           std::to_string(max_attempts) + " attempts");
}

namespace {

using Edge = std::pair<int, int>;

// Edge indices holding a self-loop or a repeated pair.
std::vector<int> conflicting_edges(const std::vector<Edge>& edges) {
  std::map<Edge, int> first_seen;
  std::vector<int> conflicts;
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    auto [u, v] = edges[e];
    if (u == v) {
      conflicts.push_back(e);
      continue;
    }
    const Edge key{std::min(u, v), std::max(u, v)};
    const auto [it, inserted] = first_seen.emplace(key, e);
    if (!inserted) conflicts.push_back(e);
  }
  return conflicts;
}

// Degree-preserving double-edge swaps until the multigraph is simple.
// A uniform stub matching on this degree distribution almost always carries
// a handful of self-loops or hub multi-edges, so plain rejection of the
// whole matching never terminates; rewiring repairs it in a few rounds.
bool repair_to_simple(std::vector<Edge>& edges, RngStream& rng) {
  const int m = static_cast<int>(edges.size());
  std::vector<int> conflicts = conflicting_edges(edges);
  int current = static_cast<int>(conflicts.size());
  for (int round = 0; round < 200 * m && current > 0; ++round) {
    const int e = conflicts[rng.uniform_index(current)];
    int f = rng.uniform_index(m);
    if (f == e) continue;
    const Edge old_e = edges[e];
    const Edge old_f = edges[f];
    if (rng.uniform() < 0.5) {
      edges[e] = {old_e.first, old_f.second};
      edges[f] = {old_e.second, old_f.first};
    } else {
      edges[e] = {old_e.first, old_f.first};
      edges[f] = {old_e.second, old_f.second};
    }
    std::vector<int> next = conflicting_edges(edges);
    if (static_cast<int>(next.size()) > current) {
      edges[e] = old_e;
      edges[f] = old_f;
    } else {
      current = static_cast<int>(next.size());
      conflicts = std::move(next);
    }
  }
  return current == 0;
}

}  // namespace

SocialNetwork power_law_graph(int n, double exponent, std::uint64_t seed, int max_attempts) {
  constexpr int kMinDegree = 3;
  if (n < kMinDegree + 2 || !(exponent > 1.0)) {
    fail(ErrorCode::ConfigInvalid, "power_law needs n >= 5 and exponent > 1");
  }
  // Normalized degree distribution p(k) ~ k^-exponent over {3, ..., n-1};
  // the cumulative table drives inverse sampling.
  std::vector<double> cumulative;
  double total = 0.0;
  for (int k = kMinDegree; k < n; ++k) {
    total += std::pow(static_cast<double>(k), -exponent);
    cumulative.push_back(total);
  }
  for (double& c : cumulative) c /= total;

  RngStream rng(seed);
  std::vector<int> degrees(n);
  std::vector<int> stubs;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    int degree_sum = 0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
      degrees[i] = kMinDegree + static_cast<int>(it - cumulative.begin());
      degree_sum += degrees[i];
    }
    if (degree_sum % 2 != 0) continue;

    stubs.clear();
    stubs.reserve(degree_sum);
    for (int i = 0; i < n; ++i) stubs.insert(stubs.end(), degrees[i], i);
    for (int k = static_cast<int>(stubs.size()) - 1; k > 0; --k) {
      std::swap(stubs[k], stubs[rng.uniform_index(k + 1)]);
    }
    std::vector<Edge> edges;
    edges.reserve(degree_sum / 2);
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      edges.emplace_back(stubs[k], stubs[k + 1]);
    }
    if (!repair_to_simple(edges, rng)) continue;

    Matrix a = Matrix::Zero(n, n);
    for (auto [u, v] : edges) {
      a(u, v) = 1.0;
      a(v, u) = 1.0;
    }
    try {
      return build_social_network(a);
    } catch (const Error&) {
      // disconnected; resample
    }
  }
  fail(ErrorCode::GenerationFailed,
       "no simple connected power-law graph on " + std::to_string(n) + " nodes in " +
           std::to_string(max_attempts) + " attempts");
}

}  // namespace netprop
