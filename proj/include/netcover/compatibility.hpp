#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "netcover/geometry.hpp"
#include "netcover/network.hpp"

namespace netcover {

// Sets within this slack of feasibility are treated as compatible, so a
// borderline group is never forbidden.
constexpr double kCompatTol = 1e-6;

// Edge groups that a single device can touch simultaneously: in the plane
// a set is compatible iff no forbidden pair and no forbidden triple is
// contained in it, so the two tables below describe all of them.
struct IncompatibilityTable {
  std::vector<std::pair<int, int>> pairs;      // i < j, sorted
  std::vector<std::array<int, 3>> triples;     // i < j < k, sorted
  double radius = 0.0;
  Norm norm = Norm::L2;

  bool pair_forbidden(int i, int j) const;
  bool triple_forbidden(int i, int j, int k) const;
  void build_index();

 private:
  std::unordered_set<uint64_t> pair_keys_;
  std::unordered_set<uint64_t> triple_keys_;
};

// Pairs of edges whose stadiums cannot meet (device cannot touch both).
std::vector<std::pair<int, int>> pairwise_incompatible(const Network& net,
                                                       const Ball& ball);
std::vector<std::pair<int, int>> pairwise_incompatible_serial(const Network& net,
                                                              const Ball& ball);

// Triples of pairwise-compatible edges whose three stadiums have no common
// point. Candidates containing a forbidden pair are skipped entirely.
std::vector<std::array<int, 3>> triple_incompatible(
    const Network& net, const Ball& ball,
    std::span<const std::pair<int, int>> pairs);
std::vector<std::array<int, 3>> triple_incompatible_serial(
    const Network& net, const Ball& ball,
    std::span<const std::pair<int, int>> pairs);

IncompatibilityTable build_incompatibility_table(const Network& net,
                                                 const Ball& ball);

struct CompatResult {
  bool feasible = false;
  double slack = 0.0;
  std::optional<Point> witness;
};

// Can one device touch every edge in the set? Decided by the convex
// minimax center over all member stadiums.
CompatResult is_compatible_set(std::span<const int> edge_indices,
                               const Network& net, const Ball& ball);

}  // namespace netcover
