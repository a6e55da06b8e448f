// Times the OpenMP kernels against their serial reference implementations
// and verifies that both produce identical results.

#include <omp.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include "netprop/games.hpp"
#include "netprop/graph_gen.hpp"
#include "netprop/markov.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace netprop;

  std::uint64_t samples = 20000;
  int horizon = 50;
  int nodes = 100;
  int trials = 20000;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const std::string value = argv[i + 1];
    if (flag == "--samples") samples = std::stoull(value);
    else if (flag == "--horizon") horizon = std::stoi(value);
    else if (flag == "--nodes") nodes = std::stoi(value);
    else if (flag == "--trials") trials = std::stoi(value);
  }

  std::printf("threads available: %d\n", omp_get_max_threads());

  // Monte Carlo trajectory estimation.
  const SocialNetwork net = erdos_renyi_graph(nodes, 0.1, 7);
  Vector alpha_values(nodes);
  RngStream alpha_rng(11);
  for (int i = 0; i < nodes; ++i) alpha_values[i] = 0.1 + 0.8 * alpha_rng.uniform();
  const OpenMindedness alpha = make_open_mindedness(alpha_values);
  Matrix delta(4, 4);
  delta << 0.6, 0.4, 0.0, 0.0,
           0.3, 0.7, 0.0, 0.0,
           0.0, 0.0, 1.0, 0.0,
           0.0, 0.8, 0.0, 0.2;
  const ProductConversionGraph pcg = decompose_conversion_graph(delta);
  const Matrix p0 = Matrix::Constant(nodes, 4, 0.25);

  std::printf("\nmonte carlo estimation: n=%d, R=4, horizon=%d, samples=%llu\n", nodes, horizon,
              static_cast<unsigned long long>(samples));
  auto start = Clock::now();
  const auto serial = estimate_trajectories_serial(ConversionOrder::SocialSelf, net, alpha, pcg,
                                                   p0, horizon, samples, 42);
  const double serial_time = seconds_since(start);
  start = Clock::now();
  const auto parallel = estimate_trajectories(ConversionOrder::SocialSelf, net, alpha, pcg, p0,
                                              horizon, samples, 42, ExecutionMode::Parallel);
  const double parallel_time = seconds_since(start);
  const bool counts_match = serial.counts == parallel.counts;
  std::printf("  serial   : %8.3f s\n", serial_time);
  std::printf("  openmp   : %8.3f s  (speedup %.2fx)\n", parallel_time,
              serial_time / parallel_time);
  std::printf("  identical: %s\n", counts_match ? "yes" : "NO");

  // Best-response deviation scan.
  GameConfig gc;
  gc.net = complete_graph(5);
  Vector a5(5);
  a5 << 0.8, 0.85, 0.75, 0.84, 0.76;
  gc.alpha = make_open_mindedness(a5);
  gc.budgets = Vector(2);
  gc.budgets << 600, 900;
  gc.gamma = 100;
  gc.mode = GameMode::SeedingQuality;
  const Matrix p_game = Matrix::Constant(5, 2, 0.5);
  const Allocation nash = nash_seeding_quality(gc, p_game);
  const double steps[] = {0.01, 0.1};

  std::printf("\nbest-response deviation scan: %d trials\n", trials);
  start = Clock::now();
  const auto scan_serial =
      best_response_check(gc, p_game, nash, 0, trials, steps, 99, ExecutionMode::Serial);
  const double scan_serial_time = seconds_since(start);
  start = Clock::now();
  const auto scan_parallel =
      best_response_check(gc, p_game, nash, 0, trials, steps, 99, ExecutionMode::Parallel);
  const double scan_parallel_time = seconds_since(start);
  std::printf("  serial   : %8.3f s\n", scan_serial_time);
  std::printf("  openmp   : %8.3f s  (speedup %.2fx)\n", scan_parallel_time,
              scan_serial_time / scan_parallel_time);
  std::printf("  identical: %s\n",
              scan_serial.max_gain == scan_parallel.max_gain ? "yes" : "NO");

  return counts_match && scan_serial.max_gain == scan_parallel.max_gain ? 0 : 1;
}
