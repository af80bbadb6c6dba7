#include <doctest.h>

#include <cmath>

#include "netcover/placement.hpp"
#include "netcover/rng.hpp"
#include "netcover/single_device.hpp"
#include "oracles.hpp"

using namespace netcover;

namespace {

RunConfig mnlclp_cfg(int p, double radius, int random_seeds = 60) {
  RunConfig cfg;
  cfg.problem = Problem::MNLCLP;
  cfg.p = p;
  cfg.ball = {Norm::L2, radius};
  cfg.solver.random_seeds = random_seeds;
  return cfg;
}

}  // namespace

TEST_SUITE("placement") {

TEST_CASE("one device reduces to the single-device solver") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const RunConfig cfg = mnlclp_cfg(1, 0.5);
  const Placement placed = math_heuristic(net, cfg);
  const SingleSolution direct = solve_single(net, cfg.ball, cfg.solver);
  REQUIRE(placed.devices.size() == 1);
  CHECK(placed.devices[0].position.x == doctest::Approx(direct.position.x));
  CHECK(placed.devices[0].position.y == doctest::Approx(direct.position.y));
  CHECK(evaluate(net, placed.devices).covered_weighted_length ==
        doctest::Approx(direct.objective).epsilon(1e-9));
}

TEST_CASE("straight edge saturates at min(2Rp, L)") {
  const Network net = oracles::net_from_segments({{{0, 0}, {4, 0}}});
  for (int p = 1; p <= 4; ++p) {
    const RunConfig cfg = mnlclp_cfg(p, 0.5, 40);
    HeuristicTrace trace;
    const Placement placed = math_heuristic(net, cfg, &trace);
    const CoverageReport rep = evaluate(net, placed.devices);
    CHECK(rep.covered_weighted_length ==
          doctest::Approx(std::min(1.0 * p, 4.0)).epsilon(1e-6));
    // windows are pairwise disjoint: union equals the device count * 2R
    CHECK(static_cast<int>(placed.devices.size()) == p);
  }
}

TEST_CASE("heuristic trace: monotone gains, conserved weight, honest total") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("jilin.json")), 5.0);
  const RunConfig cfg = mnlclp_cfg(5, 0.5);
  HeuristicTrace trace;
  const Placement placed = math_heuristic(net, cfg, &trace);
  const double total = total_weighted_length(net);
  double prev_cum = 0.0;
  for (const HeuristicStep& step : trace.steps) {
    CHECK(step.gained > 0.0);
    CHECK(step.cumulative >= prev_cum);
    prev_cum = step.cumulative;
    CHECK(step.cumulative + step.live_remaining ==
          doctest::Approx(total).epsilon(1e-9));
  }
  const CoverageReport rep = evaluate(net, placed.devices);
  CHECK(rep.covered_weighted_length ==
        doctest::Approx(trace.steps.back().cumulative).epsilon(1e-9));
}

TEST_CASE("mnlclp stops early when nothing is left to cover") {
  const Network net = oracles::net_from_segments({{{0, 0}, {1, 0}}});
  RunConfig cfg = mnlclp_cfg(3, 1.0, 30);
  HeuristicTrace trace;
  const Placement placed = math_heuristic(net, cfg, &trace);
  CHECK(placed.devices.size() == 1);  // one ball swallows the edge
  CHECK(trace.stopped_early);
  const SolveResult res = solve(net, cfg, Strategy::Heuristic);
  CHECK(!res.warning.empty());
  CHECK(res.report.fraction == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("psnlclp meets the target with a bounded device count") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  RunConfig cfg;
  cfg.problem = Problem::PSNLCLP;
  cfg.gamma = 0.5;
  cfg.ball = {Norm::L2, 0.5};
  cfg.solver.random_seeds = 60;
  const Placement placed = math_heuristic(net, cfg);
  const CoverageReport rep = evaluate(net, placed.devices);
  CHECK(rep.fraction >= 0.5 - 1e-9);
  CHECK(static_cast<int>(placed.devices.size()) <=
        p_upper_bound(net, cfg.ball, cfg.gamma));
}

TEST_CASE("device-count bound") {
  const Network one = oracles::net_from_segments({{{0, 0}, {4, 0}}});
  CHECK(p_upper_bound(one, {Norm::L2, 0.5}, 1.0) == 4);  // ceil(4/1)

  const Network two = oracles::net_from_segments(
      {{{0, 0}, {3, 0}}, {{0, 2}, {1, 2}}}, {1.0, 1.0});  // weights 3 and 1
  // gamma=0.7 needs only the heavy edge: ceil(3 / (2*0.5)) = 3
  CHECK(p_upper_bound(two, {Norm::L2, 0.5}, 0.7) == 3);
  CHECK(p_upper_bound(two, {Norm::L2, 0.5}, 1.0) == 4);
}

TEST_CASE("isolated far edges, gamma=1, small radius") {
  const Network net = oracles::net_from_segments(
      {{{0, 0}, {1, 0}}, {{30, 30}, {30, 31}}});
  RunConfig cfg;
  cfg.problem = Problem::PSNLCLP;
  cfg.gamma = 1.0;
  cfg.ball = {Norm::L2, 0.05};
  cfg.solver.random_seeds = 20;
  const Placement placed = math_heuristic(net, cfg);
  const CoverageReport rep = evaluate(net, placed.devices);
  CHECK(rep.fraction >= 1.0 - 1e-9);
  CHECK(static_cast<int>(placed.devices.size()) <=
        p_upper_bound(net, cfg.ball, cfg.gamma));
}

TEST_CASE("node-restricted baseline on a single edge picks an endpoint") {
  const Network net = oracles::net_from_segments({{{0, 0}, {4, 0}}});
  const RunConfig cfg = mnlclp_cfg(1, 0.5);
  const Placement placed = restricted_baseline(net, cfg, BaselineMode::Nodes);
  REQUIRE(placed.devices.size() == 1);
  const CoverageReport rep = evaluate(net, placed.devices);
  CHECK(rep.covered_weighted_length == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("candidate nesting at p=1: nodes <= edges <= grid oracle") {
  for (const char* name : {"gessler.json", "jilin.json"}) {
    const Network net = scale_to_disk(load_network(oracles::data_path(name)), 5.0);
    const RunConfig cfg = mnlclp_cfg(1, 0.5);
    const double nodes_obj =
        evaluate(net, restricted_baseline(net, cfg, BaselineMode::Nodes).devices)
            .covered_weighted_length;
    const double edges_obj =
        evaluate(net, restricted_baseline(net, cfg, BaselineMode::Edges).devices)
            .covered_weighted_length;
    const double oracle_obj = oracle_single(net, cfg.ball, 500).objective;
    CHECK(nodes_obj <= edges_obj + 1e-9);
    CHECK(edges_obj <= oracle_obj + 1e-9);
  }
}

TEST_CASE("benchmark stand-in, p=5: free placement dominates the baselines") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);
  const RunConfig cfg = mnlclp_cfg(5, 0.5);
  const double heur =
      solve(net, cfg, Strategy::Heuristic).report.covered_weighted_length;
  const double edges =
      solve(net, cfg, Strategy::BaselineEdges).report.covered_weighted_length;
  const double nodes =
      solve(net, cfg, Strategy::BaselineNodes).report.covered_weighted_length;
  CHECK(heur >= edges - 1e-9);
  CHECK(edges >= nodes - 1e-9);
}

TEST_CASE("dispatch") {
  const Network net =
      scale_to_disk(load_network(oracles::data_path("gessler.json")), 5.0);

  SolveResult none = solve(net, mnlclp_cfg(0, 0.5), Strategy::Heuristic);
  CHECK(none.placement.devices.empty());
  CHECK(none.report.fraction == 0.0);

  const SolveResult seeded =
      solve(net, mnlclp_cfg(2, 0.5), Strategy::SeedPolish);
  const SolveResult single = solve(net, mnlclp_cfg(1, 0.5), Strategy::Heuristic);
  CHECK(seeded.report.fraction >= single.report.fraction - 1e-9);

  RunConfig bad;
  bad.problem = Problem::PSNLCLP;
  bad.gamma = 0.5;
  bad.ball = {Norm::L2, 0.5};
  CHECK_THROWS_AS(solve(net, bad, Strategy::BaselineNodes),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve(net, bad, Strategy::SeedPolish), std::invalid_argument);
}

}  // TEST_SUITE
