#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netcover/geometry.hpp"
#include "netcover/network.hpp"

namespace netcover {

struct SolverConfig {
  int random_seeds = 200;
  uint64_t rng_seed = 0;
  double step_tol = 0.0;            // 0 -> 1e-6 * R
  int max_pair_witness_seeds = 2000;  // heaviest edge pairs first
};

struct SingleSolution {
  Point position;
  double objective = 0.0;
  std::vector<int> touched;  // edges whose ball intersection is non-empty
  std::vector<std::pair<double, double>> lambdas;  // aligned with touched
};

// Covered weighted length of a device at X: sums w*L*(hi-lo) over all
// edges the ball intersects.
double objective_at(const Point& x, const Network& net, const Ball& ball);

// Multistart compass search. Seeds: every node, every edge midpoint, the
// midpoints of close edge pairs, plus uniform random points in the node
// bounding disk. Deterministic for a fixed config.
SingleSolution solve_single(const Network& net, const Ball& ball,
                            const SolverConfig& cfg = {});
SingleSolution solve_single_serial(const Network& net, const Ball& ball,
                                   const SolverConfig& cfg = {});

// Exhaustive grid sweep over the expanded bounding box with compass-search
// polish on the best cells. Deterministic; used as a quality reference.
SingleSolution oracle_single(const Network& net, const Ball& ball, int grid_n);

// Single compass search from one start point.
SingleSolution polish_from(const Point& start, const Network& net,
                           const Ball& ball, double step_tol = 0.0);

// Shared helper: fills touched/lambdas for a final position.
SingleSolution solution_at(const Point& x, const Network& net, const Ball& ball);

}  // namespace netcover
