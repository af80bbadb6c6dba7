#pragma once

#include <vector>

#include "netcover/compatibility.hpp"
#include "netcover/coverage.hpp"
#include "netcover/network.hpp"

namespace netcover {

enum class SeedMode { ExactBnB, Greedy };

// Partition of a subset of edges into clusters, one device each; each
// cluster is a compatible set and the total touched weight is maximised.
struct SeedAssignment {
  std::vector<std::vector<int>> clusters;  // edge indices, per device
  std::vector<Point> positions;            // minimax center per cluster
  double ilp_value = 0.0;                  // sum of assigned edge weights
  bool optimal = false;                    // false when the node limit hit
  bool certified = false;  // every cluster re-checked geometrically
  long long nodes_explored = 0;
};

// Exact depth-first branch-and-bound over edges in decreasing weighted
// length; prunes with the pair/triple tables and a remaining-weight bound.
// Falls back to the greedy result when the node limit is exceeded.
SeedAssignment solve_seed_ilp(const Network& net, const Ball& ball, int p,
                              const IncompatibilityTable& table, SeedMode mode,
                              long long node_limit = 10'000'000);

// One device per non-empty cluster at its minimax center; optional compass
// polish against the still-uncovered part of the network.
Placement seed_to_placement(const SeedAssignment& seed, const Network& net,
                            const Ball& ball, bool polish = false);

}  // namespace netcover
