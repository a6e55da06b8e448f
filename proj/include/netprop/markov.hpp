#pragma once

#include <cstdint>
#include <vector>

#include "netprop/graphs.hpp"
#include "netprop/rng.hpp"

namespace netprop {

/// Realized product index (0-based) per node.
using AgentStateVector = std::vector<int>;

enum class ConversionOrder { SocialSelf, SelfSocial };
enum class ExecutionMode { Serial, Parallel };

/// One synchronous step of the social-then-self chain: each node, reading
/// the previous state vector, imitates a uniformly random neighbor with
/// probability alpha_i and otherwise transitions by its row of delta.
AgentStateVector step_social_self(const SocialNetwork& net, const OpenMindedness& alpha,
                                  const ProductConversionGraph& pcg,
                                  const AgentStateVector& state, RngStream& rng);

/// Self-then-social order: the node first transitions by its delta row;
/// only if that draw kept its product does it imitate a random neighbor
/// (with probability alpha_i).
AgentStateVector step_self_social(const SocialNetwork& net, const OpenMindedness& alpha,
                                  const ProductConversionGraph& pcg,
                                  const AgentStateVector& state, RngStream& rng);

/// Monte Carlo estimate of the per-node adoption probabilities. Counts are
/// exact integers: for every (t, i) the counts over products sum to
/// `samples`, so the frequency rows are an exact partition.
struct EmpiricalTrajectory {
  int horizon = 0;
  int n = 0;
  int products = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> counts;  // (horizon+1) x n x R, row-major

  std::uint64_t count(int t, int i, int r) const {
    return counts[(static_cast<std::size_t>(t) * n + i) * products + r];
  }
  double estimate(int t, int i, int r) const {
    return static_cast<double>(count(t, i, r)) / static_cast<double>(samples);
  }
};

/// Runs `samples` independent paths, each drawing node i's initial product
/// from row i of P0 and owning the stream (seed, sample_index). Serial and
/// parallel execution produce bit-identical counts; the parallel kernel
/// reduces per-thread integer count tensors.
EmpiricalTrajectory estimate_trajectories(ConversionOrder order, const SocialNetwork& net,
                                          const OpenMindedness& alpha,
                                          const ProductConversionGraph& pcg, const Matrix& P0,
                                          int horizon, std::uint64_t samples, std::uint64_t seed,
                                          ExecutionMode mode = ExecutionMode::Parallel);

/// Plain-loop reference implementation used to validate the parallel kernel.
EmpiricalTrajectory estimate_trajectories_serial(ConversionOrder order, const SocialNetwork& net,
                                                 const OpenMindedness& alpha,
                                                 const ProductConversionGraph& pcg,
                                                 const Matrix& P0, int horizon,
                                                 std::uint64_t samples, std::uint64_t seed);

}  // namespace netprop
