#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netcover/coverage.hpp"
#include "netcover/network.hpp"
#include "netcover/single_device.hpp"
#include "netcover/trim.hpp"

namespace netcover {

enum class Problem { MNLCLP, PSNLCLP };
enum class Strategy { Heuristic, SeedPolish, BaselineNodes, BaselineEdges };
enum class BaselineMode { Nodes, Edges };

struct RunConfig {
  Problem problem = Problem::MNLCLP;
  int p = 0;               // device count (MNLCLP)
  double gamma = 0.0;      // coverage fraction target (PSNLCLP)
  Ball ball;
  SolverConfig solver;
  double edge_grid_step = 0.0;  // candidate spacing; 0 -> R/4
};

// Raised when an iteration cannot make progress toward the gamma target.
struct SolverGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HeuristicStep {
  double gained = 0.0;         // weighted length this device added
  double cumulative = 0.0;     // total removed so far
  double live_remaining = 0.0; // live weighted length after trimming
};

struct HeuristicTrace {
  std::vector<HeuristicStep> steps;
  bool stopped_early = false;  // MNLCLP ran out of coverable length
};

// Sequential placement: solve the single-device problem on the residual
// network, cut out what it covered, repeat until p devices (MNLCLP) or the
// gamma fraction (PSNLCLP) is reached.
Placement math_heuristic(const Network& net, const RunConfig& cfg,
                         HeuristicTrace* trace = nullptr);

// Device-count bound for PSNLCLP: heaviest edges forming a gamma-share of
// the total weight, each counted at ceil(L/2R).
int p_upper_bound(const Network& net, const Ball& ball, double gamma);

// Classical restricted variants: candidates at nodes only, or spaced along
// the edges; greedy selection on exact marginal coverage plus 1-swap.
Placement restricted_baseline(const Network& net, const RunConfig& cfg,
                              BaselineMode mode);

struct SolveResult {
  Placement placement;
  CoverageReport report;
  std::string warning;
};

SolveResult solve(const Network& net, const RunConfig& cfg, Strategy strategy);

}  // namespace netcover
