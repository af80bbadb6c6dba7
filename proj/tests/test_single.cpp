#include <doctest.h>

#include <cmath>

#include "netcover/compatibility.hpp"
#include "netcover/coverage.hpp"
#include "netcover/rng.hpp"
#include "netcover/single_device.hpp"
#include "oracles.hpp"

using namespace netcover;

TEST_SUITE("single_device") {

TEST_CASE("objective basics") {
  const Network net = oracles::net_from_segments({{{0, 0}, {4, 0}}});
  const Ball ball{Norm::L2, 0.5};
  CHECK(objective_at({100, 100}, net, ball) == 0.0);
  CHECK(objective_at({2, 0}, net, ball) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("objective equals one-device evaluation") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  SplitMix64 rng(301);
  for (int i = 0; i < 40; ++i) {
    const Point x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const std::vector<Device> one{{x, ball}};
    CHECK(objective_at(x, net, ball) ==
          doctest::Approx(evaluate(net, one).covered_weighted_length)
              .epsilon(1e-12));
  }
}

TEST_CASE("single edge: full window, device on the edge line") {
  const Network net = oracles::net_from_segments({{{0, 0}, {4, 0}}});
  const Ball ball{Norm::L2, 0.5};
  SolverConfig cfg;
  cfg.random_seeds = 50;
  const SingleSolution sol = solve_single(net, ball, cfg);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(point_segment_distance(sol.position, net.edge_segment(0)).distance <
        1e-5);
  REQUIRE(sol.touched == std::vector<int>{0});
  CHECK(sol.lambdas[0].second - sol.lambdas[0].first ==
        doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("two close parallel edges beat either alone") {
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {4, 0}}, {{0, 0.8}, {4, 0.8}}});
  const Ball ball{Norm::L2, 0.5};
  SolverConfig cfg;
  cfg.random_seeds = 80;
  const SingleSolution sol = solve_single(net, ball, cfg);
  CHECK(sol.objective > 1.0 + 0.1);  // single-edge best is 2R = 1
  CHECK(sol.touched.size() == 2);
  // analytic optimum: both chords at height 0.4 -> 2 * 2*sqrt(R^2-0.16)
  CHECK(sol.objective == doctest::Approx(4.0 * std::sqrt(0.09)).epsilon(1e-6));
}

TEST_CASE("multistart stays within reach of the grid sweep") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  SolverConfig cfg;
  cfg.random_seeds = 120;
  const SingleSolution mine = solve_single(net, ball, cfg);
  const SingleSolution ref = oracle_single(net, ball, 500);
  CHECK(mine.objective >= ref.objective - 1e-3);
}

TEST_CASE("grid sweep on a single edge") {
  const Network net = oracles::net_from_segments({{{0, 0}, {4, 0}}});
  const SingleSolution sol = oracle_single(net, {Norm::L2, 0.5}, 500);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("empty network yields a zero solution") {
  std::vector<Node> nodes{{"A", 0, 0}};
  const Network net = make_network(nodes, {});
  CHECK(solve_single(net, {Norm::L2, 1.0}).objective == 0.0);
  CHECK(oracle_single(net, {Norm::L2, 1.0}, 100).objective == 0.0);
}

TEST_CASE("touched edges: position sits in every stadium, tables respected") {
  SplitMix64 rng(307);
  for (int trial = 0; trial < 8; ++trial) {
    const Network net = oracles::random_network(rng, 8, 3.0);
    const Ball ball{Norm::L2, 0.6};
    SolverConfig cfg;
    cfg.random_seeds = 60;
    const SingleSolution sol = solve_single(net, ball, cfg);
    for (int e : sol.touched)
      CHECK(in_stadium(sol.position, net.edge_segment(e), ball));

    const IncompatibilityTable table = build_incompatibility_table(net, ball);
    for (size_t i = 0; i < sol.touched.size(); ++i)
      for (size_t j = i + 1; j < sol.touched.size(); ++j) {
        CHECK_FALSE(table.pair_forbidden(sol.touched[i], sol.touched[j]));
        for (size_t k = j + 1; k < sol.touched.size(); ++k)
          CHECK_FALSE(table.triple_forbidden(sol.touched[i], sol.touched[j],
                                             sol.touched[k]));
      }
  }
}

TEST_CASE("objective is locally Lipschitz") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.5};
  // a chord through a disk moves at most ~2/sqrt(R^2-h^2)*|dh|; bound all
  // edges by their weight times a generous slope constant
  double k_bound = 0.0;
  for (size_t e = 0; e < net.edges.size(); ++e)
    k_bound += net.edges[e].weight * 8.0;
  SplitMix64 rng(311);
  for (int i = 0; i < 200; ++i) {
    const Point x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double h = 1e-4;
    const Point y{x.x + rng.uniform(-h, h), x.y + rng.uniform(-h, h)};
    const double diff = std::abs(objective_at(x, net, ball) -
                                 objective_at(y, net, ball));
    // near-tangency makes the slope steep but still finite at this scale
    CHECK(diff <= k_bound * std::hypot(y.x - x.x, y.y - x.y) + 1e-4);
  }
}

TEST_CASE("deterministic and identical across serial/parallel runs") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const Ball ball{Norm::L2, 0.25};
  SolverConfig cfg;
  cfg.random_seeds = 40;
  cfg.rng_seed = 9;
  const SingleSolution a = solve_single(net, ball, cfg);
  const SingleSolution b = solve_single(net, ball, cfg);
  const SingleSolution c = solve_single_serial(net, ball, cfg);
  CHECK(a.position.x == b.position.x);
  CHECK(a.position.y == b.position.y);
  CHECK(a.objective == b.objective);
  CHECK(a.position.x == c.position.x);
  CHECK(a.position.y == c.position.y);
  CHECK(a.objective == c.objective);
}

}  // TEST_SUITE
