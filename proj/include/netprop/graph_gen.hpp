#pragma once

#include <cstdint>

#include "netprop/graphs.hpp"

namespace netprop {

SocialNetwork complete_graph(int n);

/// Star with node 0 as the center.
SocialNetwork star_graph(int n);

/// G(n, p), resampled until connected (GenerationFailed after max_attempts).
SocialNetwork erdos_renyi_graph(int n, double p, std::uint64_t seed, int max_attempts = 100);

/// Configuration model on a degree sequence drawn from p(k) proportional to
/// k^-exponent over k in {3, ..., n-1}; matchings with self-loops or
/// multi-edges are rejected and the whole draw repeats until the graph is
/// simple and connected.
SocialNetwork power_law_graph(int n, double exponent, std::uint64_t seed,
                              int max_attempts = 1000);

}  // namespace netprop
