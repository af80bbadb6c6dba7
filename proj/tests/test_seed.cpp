#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "netcover/coverage.hpp"
#include "netcover/ilp_seed.hpp"
#include "netcover/rng.hpp"
#include "oracles.hpp"

using namespace netcover;

namespace {

bool mask_compatible(uint32_t mask, const IncompatibilityTable& table, int m) {
  std::vector<int> members;
  for (int e = 0; e < m; ++e)
    if (mask & (1u << e)) members.push_back(e);
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      if (table.pair_forbidden(members[i], members[j])) return false;
      for (size_t k = j + 1; k < members.size(); ++k)
        if (table.triple_forbidden(members[i], members[j], members[k]))
          return false;
    }
  return true;
}

// best value of up to p <= 2 disjoint compatible clusters, by enumeration
double enumerate_best(const Network& net, const IncompatibilityTable& table,
                      int p) {
  const int m = static_cast<int>(net.edges.size());
  REQUIRE(m <= 20);
  std::vector<std::pair<double, uint32_t>> sets;  // weight, mask
  for (uint32_t mask = 1; mask < (1u << m); ++mask) {
    if (!mask_compatible(mask, table, m)) continue;
    double w = 0.0;
    for (int e = 0; e < m; ++e)
      if (mask & (1u << e)) w += net.edge_wlength(e);
    sets.emplace_back(w, mask);
  }
  std::sort(sets.rbegin(), sets.rend());
  double best = sets.empty() ? 0.0 : sets[0].first;
  if (p >= 2) {
    for (size_t i = 0; i < sets.size(); ++i) {
      if (sets[i].first + sets[0].first <= best) break;
      for (size_t j = i + 1; j < sets.size(); ++j) {
        if (sets[i].first + sets[j].first <= best) break;
        if ((sets[i].second & sets[j].second) == 0)
          best = std::max(best, sets[i].first + sets[j].first);
      }
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("ilp_seed") {

TEST_CASE("all pairs forbidden: take the heaviest edge") {
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {1, 0}}, {{10, 0}, {11, 0}}, {{20, 0}, {21, 0}}},
      {1.0, 3.0, 2.0});
  const Ball ball{Norm::L2, 0.5};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  CHECK(table.pairs.size() == 3);

  const SeedAssignment seed =
      solve_seed_ilp(net, ball, 1, table, SeedMode::ExactBnB);
  CHECK(seed.optimal);
  CHECK(seed.certified);
  REQUIRE(seed.clusters.size() == 1);
  CHECK(seed.clusters[0] == std::vector<int>{1});  // weight 3 edge
  CHECK(seed.ilp_value == doctest::Approx(3.0));
}

TEST_CASE("everything compatible and p = |E|: full weight") {
  const Network net = oracles::net_from_segments(
      {{{-0.5, 0}, {0.5, 0}}, {{0, -0.5}, {0, 0.5}}, {{0.1, 0.1}, {0.6, 0.6}}});
  const Ball ball{Norm::L2, 2.0};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  CHECK(table.pairs.empty());
  CHECK(table.triples.empty());
  const SeedAssignment seed =
      solve_seed_ilp(net, ball, 3, table, SeedMode::ExactBnB);
  CHECK(seed.ilp_value ==
        doctest::Approx(total_weighted_length(net)).epsilon(1e-12));
}

TEST_CASE("exact search equals enumeration on the benchmark stand-in") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  for (int p : {1, 2}) {
    const SeedAssignment seed =
        solve_seed_ilp(net, ball, p, table, SeedMode::ExactBnB);
    CHECK(seed.optimal);
    CHECK(seed.certified);
    CHECK(seed.ilp_value ==
          doctest::Approx(enumerate_best(net, table, p)).epsilon(1e-9));
    // disjoint clusters
    std::vector<char> used(net.edges.size(), 0);
    for (const auto& cluster : seed.clusters)
      for (int e : cluster) {
        CHECK(!used[static_cast<size_t>(e)]);
        used[static_cast<size_t>(e)] = 1;
      }
  }
}

TEST_CASE("exact value dominates greedy") {
  SplitMix64 rng(401);
  for (int trial = 0; trial < 10; ++trial) {
    const Network net = oracles::random_network(rng, 9, 3.0);
    const Ball ball{Norm::L2, 0.7};
    const IncompatibilityTable table = build_incompatibility_table(net, ball);
    const double exact =
        solve_seed_ilp(net, ball, 2, table, SeedMode::ExactBnB).ilp_value;
    const double greedy =
        solve_seed_ilp(net, ball, 2, table, SeedMode::Greedy).ilp_value;
    CHECK(exact >= greedy - 1e-12);
  }
}

TEST_CASE("node limit falls back to greedy with the flag cleared") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  const SeedAssignment full =
      solve_seed_ilp(net, ball, 2, table, SeedMode::ExactBnB);
  const SeedAssignment capped =
      solve_seed_ilp(net, ball, 2, table, SeedMode::ExactBnB, /*node_limit=*/5);
  const SeedAssignment greedy =
      solve_seed_ilp(net, ball, 2, table, SeedMode::Greedy);
  CHECK(full.optimal);
  CHECK_FALSE(capped.optimal);
  CHECK(capped.certified);
  CHECK(capped.ilp_value >= greedy.ilp_value - 1e-12);
  CHECK(capped.ilp_value <= full.ilp_value + 1e-12);
}

TEST_CASE("touched weight upper-bounds the realized coverage") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  const SeedAssignment seed =
      solve_seed_ilp(net, ball, 2, table, SeedMode::ExactBnB);
  for (bool polish : {false, true}) {
    const Placement placed = seed_to_placement(seed, net, ball, polish);
    const CoverageReport rep = evaluate(net, placed.devices);
    CHECK(rep.covered_weighted_length <= seed.ilp_value + 1e-9);
    CHECK(rep.fraction > 0.0);
    // at least roughly the heaviest single-edge window
    double heaviest = 0.0;
    for (size_t e = 0; e < net.edges.size(); ++e)
      heaviest =
          std::max(heaviest, net.edges[e].weight *
                                 std::min(2 * ball.radius,
                                          net.edge_length(static_cast<int>(e))));
    CHECK(rep.covered_weighted_length >= heaviest - 1e-6);
  }
}

TEST_CASE("cluster positions reach every member edge") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  const SeedAssignment seed =
      solve_seed_ilp(net, ball, 3, table, SeedMode::Greedy);
  REQUIRE(seed.positions.size() == seed.clusters.size());
  for (size_t c = 0; c < seed.clusters.size(); ++c) {
    CHECK(!seed.clusters[c].empty());  // empty clusters are dropped
    for (int e : seed.clusters[c])
      CHECK(in_stadium(seed.positions[c], net.edge_segment(e),
                       {ball.norm, ball.radius + 1e-6}));
  }
}

TEST_CASE("singleton cluster device lands inside the stadium") {
  const Network net = oracles::net_from_segments({{{3, 7}, {4, 9}}});
  const Ball ball{Norm::L2, 0.4};
  const IncompatibilityTable table = build_incompatibility_table(net, ball);
  const SeedAssignment seed =
      solve_seed_ilp(net, ball, 1, table, SeedMode::ExactBnB);
  const Placement placed = seed_to_placement(seed, net, ball);
  REQUIRE(placed.devices.size() == 1);
  CHECK(in_stadium(placed.devices[0].position, net.edge_segment(0),
                   {ball.norm, ball.radius + 1e-6}));
}

}  // TEST_SUITE
