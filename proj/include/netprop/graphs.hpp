#pragma once

#include <cstdint>
#include <vector>

#include "netprop/linalg.hpp"

namespace netprop {

/// Undirected, unweighted, connected social network. `normalized` is the
/// row-normalized adjacency (each row of the 0/1 adjacency divided by the
/// node degree); its diagonal is zero and every row sums to 1.
struct SocialNetwork {
  int n = 0;
  Matrix adjacency;
  Matrix normalized;
  std::vector<std::vector<int>> neighbors;
};

/// Validates symmetry, zero diagonal, minimum degree 1 and connectivity,
/// then builds the row-normalized matrix.
SocialNetwork build_social_network(const Matrix& adjacency);

/// Per-node propensity to imitate a random neighbor; every entry strictly
/// inside (0, 1).
struct OpenMindedness {
  Vector alpha;
};

OpenMindedness make_open_mindedness(Vector alpha);

enum class DeltaCase { Case1, Case2, Case3, Case4 };

inline const char* to_string(DeltaCase c) {
  switch (c) {
    case DeltaCase::Case1: return "Case1";
    case DeltaCase::Case2: return "Case2";
    case DeltaCase::Case3: return "Case3";
    case DeltaCase::Case4: return "Case4";
  }
  return "?";
}

/// Row-stochastic product-conversion graph together with its decomposition
/// into absorbing strongly connected components and a (possibly empty)
/// transient part.
///
/// `permutation[k]` is the original product index sitting at position k of
/// the block order (absorbing SCCs first, in order of smallest original
/// index, then the transient states). Blocks are cut from `delta` under
/// that re-indexing:
///   scc_blocks[l]    : k_l x k_l  transitions inside the l-th absorbing SCC
///   transient_block  : k_0 x k_0  transitions inside the transient part
///   inflow_blocks[l] : k_0 x k_l  transient -> l-th SCC transitions
struct ProductConversionGraph {
  int products = 0;
  Matrix delta;

  std::vector<std::vector<int>> sccs;   // absorbing SCCs, original indices
  std::vector<int> transient;           // original indices
  std::vector<int> permutation;         // block position -> original index
  DeltaCase case_label = DeltaCase::Case1;

  std::vector<Matrix> scc_blocks;
  Matrix transient_block;
  std::vector<Matrix> inflow_blocks;

  std::vector<bool> scc_aperiodic;      // per absorbing SCC (BFS-layer gcd)

  int num_sccs() const { return static_cast<int>(sccs.size()); }
  int transient_size() const { return static_cast<int>(transient.size()); }

  /// Rebuilds the full matrix from the stored blocks and permutation;
  /// equals `delta` entry for entry.
  Matrix reassemble() const;
};

/// Decomposes a row-stochastic matrix (rows renormalized within 1e-9, see
/// checked_row_stochastic). Absorbing SCC = strongly connected component of
/// the positive-entry digraph with no probability mass leaving it.
ProductConversionGraph decompose_conversion_graph(const Matrix& delta);

/// Strongly connected components of a digraph given as adjacency lists
/// (iterative Tarjan; components in deterministic order of smallest member).
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj);

/// Normalized dominant left eigenvector of a row-stochastic primitive
/// matrix: w' M = w', w > 0, sum(w) = 1. Primitivity is verified through a
/// strictly positive boolean power with exponent up to n^2; reducible or
/// periodic inputs raise PeriodicOrReducible. Power iteration starts from
/// the uniform vector.
Vector dominant_left_eigenvector(const Matrix& m, double tol = 1e-12,
                                 std::size_t max_iter = 1'000'000);

/// M = diag(alpha) * A_normalized + I - diag(alpha). Row-stochastic with a
/// strictly positive diagonal; primitive whenever the network is connected.
Matrix mixing_matrix(const SocialNetwork& net, const OpenMindedness& alpha);

}  // namespace netprop
