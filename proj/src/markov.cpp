#include "netprop/markov.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "netprop/ncpm.hpp"

namespace netprop {

namespace {

// Cumulative-sum inversion over a probability row. Ties break toward the
// lowest index and zero-probability entries are never selected; a draw
// falling into the rounding tail lands on the last positive entry.
int sample_row(const Matrix& rows, int row, double u) {
  const int cols = static_cast<int>(rows.cols());
  double acc = 0.0;
  int last_positive = -1;
  for (int s = 0; s < cols; ++s) {
    const double p = rows(row, s);
    if (p <= 0.0) continue;
    acc += p;
    last_positive = s;
    if (u < acc) return s;
  }
  return last_positive;
}

void step_in_place(ConversionOrder order, const SocialNetwork& net, const Vector& alpha,
                   const Matrix& delta, const AgentStateVector& state, AgentStateVector& next,
                   RngStream& rng) {
  const int n = net.n;
  for (int i = 0; i < n; ++i) {
    const int r = state[i];
    const auto& nbrs = net.neighbors[i];
    if (order == ConversionOrder::SocialSelf) {
      if (rng.uniform() < alpha[i]) {
        next[i] = state[nbrs[rng.uniform_index(static_cast<int>(nbrs.size()))]];
      } else {
        next[i] = sample_row(delta, r, rng.uniform());
      }
    } else {
      const int drawn = sample_row(delta, r, rng.uniform());
      if (drawn != r) {
        next[i] = drawn;
      } else if (rng.uniform() < alpha[i]) {
        next[i] = state[nbrs[rng.uniform_index(static_cast<int>(nbrs.size()))]];
      } else {
        next[i] = r;
      }
    }
  }
}

void validate_state(const AgentStateVector& state, int n, int products) {
  if (static_cast<int>(state.size()) != n) {
    fail(ErrorCode::DimensionMismatch, "state vector length does not match node count");
  }
  for (int i = 0; i < n; ++i) {
    if (state[i] < 0 || state[i] >= products) {
      fail(ErrorCode::InvalidEntry, "state[" + std::to_string(i) + "] out of product range");
    }
  }
}

void run_sample_path(ConversionOrder order, const SocialNetwork& net, const Vector& alpha,
                     const Matrix& delta, const Matrix& P0, int horizon, RngStream& rng,
                     AgentStateVector& state, AgentStateVector& next,
                     std::uint64_t* counts, int products) {
  const int n = net.n;
  for (int i = 0; i < n; ++i) state[i] = sample_row(P0, i, rng.uniform());
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(i) * products + state[i]];
  for (int t = 1; t <= horizon; ++t) {
    step_in_place(order, net, alpha, delta, state, next, rng);
    state.swap(next);
    std::uint64_t* slab = counts + static_cast<std::size_t>(t) * n * products;
    for (int i = 0; i < n; ++i) ++slab[static_cast<std::size_t>(i) * products + state[i]];
  }
}

EmpiricalTrajectory make_result(int horizon, int n, int products, std::uint64_t samples,
                                std::uint64_t seed) {
  EmpiricalTrajectory out;
  out.horizon = horizon;
  out.n = n;
  out.products = products;
  out.samples = samples;
  out.seed = seed;
  out.counts.assign(static_cast<std::size_t>(horizon + 1) * n * products, 0);
  return out;
}

Matrix validated_p0(const Matrix& P0, const SocialNetwork& net,
                    const ProductConversionGraph& pcg) {
  if (P0.rows() != net.n || P0.cols() != pcg.products) {
    fail(ErrorCode::InvalidInitialDistribution, "P0 must be n x R");
  }
  try {
    return checked_probability_matrix(P0);
  } catch (const Error& e) {
    fail(ErrorCode::InvalidInitialDistribution, e.what());
  }
}

}  // namespace

AgentStateVector step_social_self(const SocialNetwork& net, const OpenMindedness& alpha,
                                  const ProductConversionGraph& pcg,
                                  const AgentStateVector& state, RngStream& rng) {
  validate_state(state, net.n, pcg.products);
  AgentStateVector next(net.n);
  step_in_place(ConversionOrder::SocialSelf, net, alpha.alpha, pcg.delta, state, next, rng);
  return next;
}

AgentStateVector step_self_social(const SocialNetwork& net, const OpenMindedness& alpha,
                                  const ProductConversionGraph& pcg,
                                  const AgentStateVector& state, RngStream& rng) {
  validate_state(state, net.n, pcg.products);
  AgentStateVector next(net.n);
  step_in_place(ConversionOrder::SelfSocial, net, alpha.alpha, pcg.delta, state, next, rng);
  return next;
}

EmpiricalTrajectory estimate_trajectories_serial(ConversionOrder order, const SocialNetwork& net,
                                                 const OpenMindedness& alpha,
                                                 const ProductConversionGraph& pcg,
                                                 const Matrix& P0, int horizon,
                                                 std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) fail(ErrorCode::ConfigInvalid, "samples must be >= 1");
  if (horizon < 0) fail(ErrorCode::ConfigInvalid, "horizon must be >= 0");
  const Matrix p0 = validated_p0(P0, net, pcg);
  EmpiricalTrajectory out = make_result(horizon, net.n, pcg.products, samples, seed);

  AgentStateVector state(net.n), next(net.n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    RngStream rng(seed, s);
    run_sample_path(order, net, alpha.alpha, pcg.delta, p0, horizon, rng, state, next,
                    out.counts.data(), pcg.products);
  }
  return out;
}

EmpiricalTrajectory estimate_trajectories(ConversionOrder order, const SocialNetwork& net,
                                          const OpenMindedness& alpha,
                                          const ProductConversionGraph& pcg, const Matrix& P0,
                                          int horizon, std::uint64_t samples, std::uint64_t seed,
                                          ExecutionMode mode) {
  if (mode == ExecutionMode::Serial) {
    return estimate_trajectories_serial(order, net, alpha, pcg, P0, horizon, samples, seed);
  }
  if (samples == 0) fail(ErrorCode::ConfigInvalid, "samples must be >= 1");
  if (horizon < 0) fail(ErrorCode::ConfigInvalid, "horizon must be >= 0");
  const Matrix p0 = validated_p0(P0, net, pcg);
  EmpiricalTrajectory out = make_result(horizon, net.n, pcg.products, samples, seed);
  const std::size_t total = out.counts.size();
  const std::int64_t count = static_cast<std::int64_t>(samples);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(total, 0);
    AgentStateVector state(net.n), next(net.n);
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < count; ++s) {
      RngStream rng(seed, static_cast<std::uint64_t>(s));
      run_sample_path(order, net, alpha.alpha, pcg.delta, p0, horizon, rng, state, next,
                      local.data(), pcg.products);
    }
// Integer merges commute, so the counts match the serial reference exactly
// regardless of thread count or schedule.
#pragma omp critical
    {
      for (std::size_t k = 0; k < total; ++k) out.counts[k] += local[k];
    }
  }
  return out;
}

}  // namespace netprop
