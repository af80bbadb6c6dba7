#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "netcover/compatibility.hpp"
#include "netcover/rng.hpp"
#include "oracles.hpp"

using namespace netcover;

namespace {

// grid emptiness: can some point reach every segment within R?
bool grid_says_compatible(const std::vector<Segment>& segs, const Ball& ball,
                          int grid_n, bool* conclusive) {
  const oracles::GridMinimax g =
      oracles::grid_minimax(segs, 2 * ball.radius, grid_n, ball.norm);
  *conclusive = std::abs(g.value - ball.radius) > 2.5 * g.step;
  return g.value <= ball.radius;
}

std::set<std::pair<std::string, std::string>> pair_ids(
    const Network& net, const std::vector<std::pair<int, int>>& pairs) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [i, j] : pairs) {
    std::string a = net.edges[static_cast<size_t>(i)].id;
    std::string b = net.edges[static_cast<size_t>(j)].id;
    if (b < a) std::swap(a, b);
    out.emplace(a, b);
  }
  return out;
}

}  // namespace

TEST_SUITE("compatibility") {

TEST_CASE("parallel segments split at the 2R threshold") {
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {1, 0}}, {{0, 3}, {1, 3}}});
  auto far = pairwise_incompatible(net, {Norm::L2, 1.0});
  REQUIRE(far.size() == 1);  // distance 3 > 2R = 2
  CHECK(far[0] == std::pair<int, int>{0, 1});

  CHECK(pairwise_incompatible(net, {Norm::L2, 2.0}).empty());  // 3 <= 4
}

TEST_CASE("pair table matches grid emptiness on the benchmark stand-in") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  const auto pairs = pairwise_incompatible(net, ball);
  const auto id_pairs = pair_ids(net, pairs);
  int inconclusive = 0;
  for (size_t i = 0; i < net.edges.size(); ++i)
    for (size_t j = i + 1; j < net.edges.size(); ++j) {
      bool conclusive = true;
      const bool compat = grid_says_compatible(
          {net.edge_segment(static_cast<int>(i)),
           net.edge_segment(static_cast<int>(j))},
          ball, 260, &conclusive);
      if (!conclusive) {
        ++inconclusive;
        continue;
      }
      std::string a = net.edges[i].id, b = net.edges[j].id;
      if (b < a) std::swap(a, b);
      CHECK(id_pairs.count({a, b}) == (compat ? 0u : 1u));
    }
  CHECK(inconclusive <= 4);  // knife-edge pairs the grid cannot decide
}

TEST_CASE("triple table: separated cluster corners") {
  // short segments near the corners of an equilateral triangle whose
  // circumradius exceeds R while the sides stay below 2R
  std::vector<Segment> segs;
  const double c = 1.10;
  for (int k = 0; k < 3; ++k) {
    const double ang = 2.0 * M_PI * k / 3.0;
    const Point p{c * std::cos(ang), c * std::sin(ang)};
    const Point t{-std::sin(ang), std::cos(ang)};
    segs.push_back({{p.x - 0.025 * t.x, p.y - 0.025 * t.y},
                    {p.x + 0.025 * t.x, p.y + 0.025 * t.y}});
  }
  const Network net = oracles::net_from_segments(segs);
  const Ball ball{Norm::L2, 1.0};
  const auto pairs = pairwise_incompatible(net, ball);
  CHECK(pairs.empty());
  const auto triples = triple_incompatible(net, ball, pairs);
  REQUIRE(triples.size() == 1);
  CHECK(triples[0] == std::array<int, 3>{0, 1, 2});

  bool conclusive = false;
  CHECK_FALSE(grid_says_compatible(segs, ball, 400, &conclusive));
  CHECK(conclusive);
}

TEST_CASE("triple table: common point means compatible") {
  const Network net = oracles::net_from_segments(
      {{{-1, 0}, {1, 0}}, {{0, -1}, {0, 1}}, {{-1, -1}, {1, 1}}});
  const Ball ball{Norm::L2, 0.4};
  const auto pairs = pairwise_incompatible(net, ball);
  CHECK(pairs.empty());
  CHECK(triple_incompatible(net, ball, pairs).empty());
}

TEST_CASE("candidates containing a forbidden pair are skipped") {
  // all three pairs are far apart, so no triple is even a candidate
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {1, 0}}, {{9, 0}, {10, 0}}, {{4.5, 0}, {5.5, 0}}});
  const Ball ball{Norm::L2, 0.5};
  const auto pairs = pairwise_incompatible(net, ball);
  CHECK(pair_ids(net, pairs).size() == 3);
  CHECK(triple_incompatible(net, ball, pairs).empty());
}

TEST_CASE("serial and parallel kernels agree exactly") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  for (double r : {0.25, 0.5, 1.0}) {
    const Ball ball{Norm::L2, r};
    const auto par = pairwise_incompatible(net, ball);
    const auto ser = pairwise_incompatible_serial(net, ball);
    CHECK(par == ser);
    CHECK(triple_incompatible(net, ball, par) ==
          triple_incompatible_serial(net, ball, ser));
  }
}

TEST_CASE("table is independent of edge order") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  Network reversed = net;
  std::reverse(reversed.edges.begin(), reversed.edges.end());
  const Ball ball{Norm::L2, 0.5};
  CHECK(pair_ids(net, pairwise_incompatible(net, ball)) ==
        pair_ids(reversed, pairwise_incompatible(reversed, ball)));
}

TEST_CASE("compatible set checks") {
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {1, 0}}, {{0, 3}, {1, 3}}});
  const Ball ball{Norm::L2, 1.0};

  const std::vector<int> singleton{0};
  const CompatResult alone = is_compatible_set(singleton, net, ball);
  CHECK(alone.feasible);
  REQUIRE(alone.witness);
  CHECK(in_stadium(*alone.witness, net.edge_segment(0), ball));

  const std::vector<int> both{0, 1};
  CHECK_FALSE(is_compatible_set(both, net, ball).feasible);  // gap 3 > 2R
}

TEST_CASE("random sets agree with the grid oracle") {
  SplitMix64 rng(101);
  int checked = 0;
  while (checked < 30) {
    std::vector<Segment> segs;
    for (int k = 0; k < 4; ++k) segs.push_back(oracles::random_segment(rng, 1.8));
    const Ball ball{Norm::L2, 0.9};
    bool conclusive = true;
    const bool compat = grid_says_compatible(segs, ball, 300, &conclusive);
    if (!conclusive) continue;
    const Network net = oracles::net_from_segments(segs);
    const std::vector<int> all{0, 1, 2, 3};
    CHECK(is_compatible_set(all, net, ball).feasible == compat);
    ++checked;
  }
}

TEST_CASE("pair+triple tables predict set feasibility") {
  SplitMix64 rng(103);
  int checked = 0;
  while (checked < 60) {
    const int n_edges = 5 + static_cast<int>(rng.next() % 4);
    std::vector<Segment> segs;
    for (int k = 0; k < n_edges; ++k)
      segs.push_back(oracles::random_segment(rng, 1.6));
    const Network net = oracles::net_from_segments(segs);
    const Ball ball{Norm::L2, 0.8};
    IncompatibilityTable table = build_incompatibility_table(net, ball);

    const uint64_t mask = rng.next() % (1ULL << n_edges);
    std::vector<int> subset;
    for (int e = 0; e < n_edges; ++e)
      if (mask & (1ULL << e)) subset.push_back(e);
    if (subset.empty() || subset.size() > 6) continue;

    bool predicted = true;
    for (size_t i = 0; i < subset.size() && predicted; ++i)
      for (size_t j = i + 1; j < subset.size() && predicted; ++j) {
        if (table.pair_forbidden(subset[i], subset[j])) predicted = false;
        for (size_t k = j + 1; k < subset.size() && predicted; ++k)
          if (table.triple_forbidden(subset[i], subset[j], subset[k]))
            predicted = false;
      }
    const CompatResult direct = is_compatible_set(subset, net, ball);
    if (std::abs(direct.slack) < 1e-5) continue;  // within decision tolerance
    CHECK(predicted == direct.feasible);
    ++checked;
  }
}

TEST_CASE("supersets of incompatible sets stay incompatible") {
  SplitMix64 rng(107);
  for (int i = 0; i < 40; ++i) {
    std::vector<Segment> segs;
    for (int k = 0; k < 5; ++k) segs.push_back(oracles::random_segment(rng, 2.5));
    const Network net = oracles::net_from_segments(segs);
    const Ball ball{Norm::L2, 0.6};
    const std::vector<int> base{0, 1, 2};
    const std::vector<int> wider{0, 1, 2, 3, 4};
    if (!is_compatible_set(base, net, ball).feasible)
      CHECK_FALSE(is_compatible_set(wider, net, ball).feasible);
  }
}

TEST_CASE("polyhedral pair test uses the matching norm") {
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {0, 1}}, {{1.9, 2.0}, {1.9, 3.0}}});
  const double l2gap =
      segment_segment_distance(net.edge_segment(0), net.edge_segment(1));
  CHECK(l2gap == doctest::Approx(std::hypot(1.9, 1.0)).epsilon(1e-12));
  // l1 gap 1.9 + 1.0 = 2.9 > 2, l2 gap ~2.15 > 2, linf gap max(1.9,1) < 2
  CHECK(pairwise_incompatible(net, {Norm::L1, 1.0}).size() == 1);
  CHECK(pairwise_incompatible(net, {Norm::L2, 1.0}).size() == 1);
  CHECK(pairwise_incompatible(net, {Norm::LInf, 1.0}).empty());
}

}  // TEST_SUITE
