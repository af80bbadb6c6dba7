#pragma once

#include <string>
#include <vector>

#include "netcover/network.hpp"
#include "netcover/single_device.hpp"

namespace netcover {

// Still-uncovered sub-range [a,b] of one original edge.
struct LivePiece {
  int edge = -1;
  double a = 0.0;
  double b = 1.0;
};

// The residual network the sequential heuristic keeps shrinking: covered
// windows are cut out of edges, leaving live sub-pieces.
struct TrimmedNetwork {
  const Network* base = nullptr;
  std::vector<LivePiece> pieces;

  static TrimmedNetwork full(const Network& net) {
    TrimmedNetwork t;
    t.base = &net;
    for (size_t e = 0; e < net.edges.size(); ++e)
      t.pieces.push_back({static_cast<int>(e), 0.0, 1.0});
    return t;
  }

  double live_weighted_length() const {
    double total = 0.0;
    for (const LivePiece& p : pieces)
      total += base->edge_wlength(p.edge) * (p.b - p.a);
    return total;
  }

  // Network whose edge k is live piece k; weights carry over.
  Network materialize() const;

  // Cuts the windows a solution on the materialized network covers out of
  // the live pieces; returns the weighted length removed.
  double apply_coverage(const SingleSolution& sol);
};

}  // namespace netcover
