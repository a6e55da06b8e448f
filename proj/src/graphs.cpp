#include "netprop/graphs.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace netprop {

namespace {

std::vector<std::vector<int>> adjacency_lists(const Matrix& a) {
  std::vector<std::vector<int>> out(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) > 0.0) out[i].push_back(static_cast<int>(j));
  return out;
}

bool connected_undirected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
    }
  }
  return reached == n;
}

// gcd of cycle lengths inside one strongly connected component, via BFS
// layering: aperiodic iff gcd over internal edges of (level[u]+1-level[v]) is 1.
bool component_aperiodic(const std::vector<std::vector<int>>& adj, const std::vector<int>& comp) {
  if (comp.size() == 1) {
    const int u = comp[0];
    return std::find(adj[u].begin(), adj[u].end(), u) != adj[u].end();
  }
  std::vector<int> level(adj.size(), -1);
  std::vector<char> in_comp(adj.size(), 0);
  for (int u : comp) in_comp[u] = 1;
  std::queue<int> q;
  q.push(comp[0]);
  level[comp[0]] = 0;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if (in_comp[v] && level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      }
    }
  }
  std::int64_t g = 0;
  for (int u : comp)
    for (int v : adj[u])
      if (in_comp[v]) g = std::gcd(g, static_cast<std::int64_t>(level[u]) + 1 - level[v]);
  return g == 1;
}

// Primitivity check through boolean powers: some power of the positivity
// pattern up to exponent >= n^2 must be all-ones. Bitset rows keep the
// squaring cheap.
using BitRows = std::vector<std::vector<std::uint64_t>>;

BitRows bool_pattern(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  const int words = (n + 63) / 64;
  BitRows b(n, std::vector<std::uint64_t>(words, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m(i, j) > 0.0) b[i][j / 64] |= (std::uint64_t{1} << (j % 64));
  return b;
}

BitRows bool_multiply(const BitRows& x, const BitRows& y) {
  const int n = static_cast<int>(x.size());
  const int words = static_cast<int>(x[0].size());
  BitRows out(n, std::vector<std::uint64_t>(words, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (x[i][j / 64] & (std::uint64_t{1} << (j % 64))) {
        for (int w = 0; w < words; ++w) out[i][w] |= y[j][w];
      }
    }
  }
  return out;
}

bool all_ones(const BitRows& b, int n) {
  const int words = static_cast<int>(b[0].size());
  for (int i = 0; i < n; ++i) {
    for (int w = 0; w < words; ++w) {
      std::uint64_t expect = ~std::uint64_t{0};
      if (w == words - 1 && n % 64 != 0) expect = (std::uint64_t{1} << (n % 64)) - 1;
      if (b[i][w] != expect) return false;
    }
  }
  return true;
}

bool is_primitive(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  BitRows power = bool_pattern(m);
  std::uint64_t exponent = 1;
  const std::uint64_t target = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
  while (true) {
    if (all_ones(power, n)) return true;
    if (exponent >= target) return false;
    power = bool_multiply(power, power);
    exponent *= 2;
  }
}

}  // namespace

SocialNetwork build_social_network(const Matrix& adjacency) {
  const Eigen::Index n = adjacency.rows();
  if (n != adjacency.cols()) {
    fail(ErrorCode::DimensionMismatch, "adjacency matrix must be square");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = adjacency(i, j);
      if (v != 0.0 && v != 1.0) {
        fail(ErrorCode::InvalidEntry, "adjacency entries must be 0 or 1, got (" +
                                          std::to_string(i) + "," + std::to_string(j) + ") = " +
                                          std::to_string(v));
      }
    }
  }
  if (adjacency != adjacency.transpose()) {
    fail(ErrorCode::NotSymmetric, "the network must be undirected");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency(i, i) != 0.0) {
      fail(ErrorCode::SelfLoopPresent, "node " + std::to_string(i) + " has a self loop");
    }
  }

  SocialNetwork net;
  net.n = static_cast<int>(n);
  net.adjacency = adjacency;
  net.neighbors = adjacency_lists(adjacency);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (net.neighbors[i].empty()) {
      fail(ErrorCode::IsolatedNode, "node " + std::to_string(i) + " has degree 0");
    }
  }
  if (!connected_undirected(net.neighbors)) {
    fail(ErrorCode::Disconnected, "the network must be connected");
  }

  net.normalized = adjacency;
  for (Eigen::Index i = 0; i < n; ++i) {
    net.normalized.row(i) /= static_cast<double>(net.neighbors[i].size());
  }
  return net;
}

OpenMindedness make_open_mindedness(Vector alpha) {
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0 && alpha[i] < 1.0)) {
      fail(ErrorCode::InvalidEntry,
           "open-mindedness must satisfy 0 < alpha_i < 1, got alpha[" + std::to_string(i) +
               "] = " + std::to_string(alpha[i]));
    }
  }
  return OpenMindedness{std::move(alpha)};
}

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), lowlink(n, 0), comp_of(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int next_index = 0;

  // Iterative Tarjan: frame = (node, position in its edge list).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.emplace_back(root, 0);
    while (!frames.empty()) {
      auto& [u, edge] = frames.back();
      if (edge == 0) {
        index[u] = lowlink[u] = next_index++;
        stack.push_back(u);
        on_stack[u] = 1;
      }
      bool descended = false;
      while (edge < adj[u].size()) {
        const int v = adj[u][edge];
        ++edge;
        if (index[v] == -1) {
          frames.emplace_back(v, 0);
          descended = true;
          break;
        }
        if (on_stack[v]) lowlink[u] = std::min(lowlink[u], index[v]);
      }
      if (descended) continue;
      if (lowlink[u] == index[u]) {
        std::vector<int> comp;
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
          if (w == u) break;
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
      const int finished = u;
      frames.pop_back();
      if (!frames.empty()) {
        lowlink[frames.back().first] =
            std::min(lowlink[frames.back().first], lowlink[finished]);
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

ProductConversionGraph decompose_conversion_graph(const Matrix& delta) {
  if (delta.rows() != delta.cols()) {
    fail(ErrorCode::DimensionMismatch, "conversion matrix must be square");
  }
  ProductConversionGraph pcg;
  pcg.delta = checked_row_stochastic(delta, ErrorCode::NotRowStochastic);
  pcg.products = static_cast<int>(delta.rows());

  const auto adj = adjacency_lists(pcg.delta);
  const auto comps = strongly_connected_components(adj);

  for (const auto& comp : comps) {
    double leaving = 0.0;
    std::vector<char> in_comp(pcg.products, 0);
    for (int u : comp) in_comp[u] = 1;
    for (int u : comp)
      for (int v = 0; v < pcg.products; ++v)
        if (!in_comp[v]) leaving += pcg.delta(u, v);
    if (leaving == 0.0) {
      pcg.sccs.push_back(comp);
      pcg.scc_aperiodic.push_back(component_aperiodic(adj, comp));
    } else {
      pcg.transient.insert(pcg.transient.end(), comp.begin(), comp.end());
    }
  }
  std::sort(pcg.transient.begin(), pcg.transient.end());

  const bool has_transient = !pcg.transient.empty();
  pcg.case_label = pcg.sccs.size() == 1
                       ? (has_transient ? DeltaCase::Case2 : DeltaCase::Case1)
                       : (has_transient ? DeltaCase::Case4 : DeltaCase::Case3);

  for (const auto& comp : pcg.sccs)
    pcg.permutation.insert(pcg.permutation.end(), comp.begin(), comp.end());
  pcg.permutation.insert(pcg.permutation.end(), pcg.transient.begin(), pcg.transient.end());

  for (const auto& comp : pcg.sccs) {
    const int k = static_cast<int>(comp.size());
    Matrix block(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) block(a, b) = pcg.delta(comp[a], comp[b]);
    pcg.scc_blocks.push_back(std::move(block));
  }
  const int k0 = pcg.transient_size();
  pcg.transient_block.resize(k0, k0);
  for (int a = 0; a < k0; ++a)
    for (int b = 0; b < k0; ++b)
      pcg.transient_block(a, b) = pcg.delta(pcg.transient[a], pcg.transient[b]);
  for (const auto& comp : pcg.sccs) {
    Matrix inflow(k0, static_cast<int>(comp.size()));
    for (int a = 0; a < k0; ++a)
      for (std::size_t b = 0; b < comp.size(); ++b)
        inflow(a, static_cast<int>(b)) = pcg.delta(pcg.transient[a], comp[b]);
    pcg.inflow_blocks.push_back(std::move(inflow));
  }
  return pcg;
}

Matrix ProductConversionGraph::reassemble() const {
  Matrix out = Matrix::Zero(products, products);
  int offset = 0;
  for (std::size_t l = 0; l < sccs.size(); ++l) {
    const int k = static_cast<int>(sccs[l].size());
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        out(permutation[offset + a], permutation[offset + b]) = scc_blocks[l](a, b);
    offset += k;
  }
  const int k0 = transient_size();
  for (int a = 0; a < k0; ++a)
    for (int b = 0; b < k0; ++b)
      out(transient[a], transient[b]) = transient_block(a, b);
  int scc_offset = 0;
  for (std::size_t l = 0; l < sccs.size(); ++l) {
    const int k = static_cast<int>(sccs[l].size());
    for (int a = 0; a < k0; ++a)
      for (int b = 0; b < k; ++b)
        out(transient[a], permutation[scc_offset + b]) = inflow_blocks[l](a, b);
    scc_offset += k;
  }
  return out;
}

Vector dominant_left_eigenvector(const Matrix& m, double tol, std::size_t max_iter) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) fail(ErrorCode::DimensionMismatch, "matrix must be square");
  if (!is_row_stochastic(m, 1e-9)) {
    fail(ErrorCode::NotRowStochastic, "dominant_left_eigenvector expects a row-stochastic matrix");
  }
  if (!is_primitive(m)) {
    fail(ErrorCode::PeriodicOrReducible,
         "no strictly positive boolean power up to exponent n^2");
  }

  Vector w = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < max_iter; ++k) {
    Vector image = m.transpose() * w;
    // The loop exits on the exact post-condition ||w'M - w'||_1 <= tol for
    // the vector actually returned.
    if ((image - w).cwiseAbs().sum() <= tol) return w;
    w = image / image.sum();
  }
  fail(ErrorCode::NotConverged,
       "power iteration did not reach tol within " + std::to_string(max_iter) + " iterations");
}

Matrix mixing_matrix(const SocialNetwork& net, const OpenMindedness& alpha) {
  if (alpha.alpha.size() != net.n) {
    fail(ErrorCode::DimensionMismatch, "alpha length does not match node count");
  }
  Matrix m = alpha.alpha.asDiagonal() * net.normalized;
  m.diagonal().array() += (1.0 - alpha.alpha.array());
  return m;
}

}  // namespace netprop
