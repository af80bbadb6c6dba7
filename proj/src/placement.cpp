#include "netcover/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netcover/compatibility.hpp"
#include "netcover/ilp_seed.hpp"

namespace netcover {

namespace {

void validate(const RunConfig& cfg) {
  if (cfg.problem == Problem::MNLCLP && cfg.p < 0)
    throw std::invalid_argument("mnlclp requires p >= 0");
  if (cfg.problem == Problem::PSNLCLP &&
      !(cfg.gamma > 0.0 && cfg.gamma <= 1.0))
    throw std::invalid_argument("psnlclp requires gamma in (0,1]");
}

}  // namespace

Placement math_heuristic(const Network& net, const RunConfig& cfg,
                         HeuristicTrace* trace) {
  validate(cfg);
  const double total = total_weighted_length(net);
  TrimmedNetwork trimmed = TrimmedNetwork::full(net);
  std::vector<Device> devices;
  double covered = 0.0;

  auto done = [&]() {
    if (cfg.problem == Problem::MNLCLP)
      return static_cast<int>(devices.size()) >= cfg.p;
    // within a tenth of the 1e-9 fraction contract, so trim debris from
    // earlier iterations cannot force sub-guard chases
    return covered >= (cfg.gamma - 1e-10) * total;
  };

  while (!done()) {
    const Network live = trimmed.materialize();
    SingleSolution sol;
    if (!live.edges.empty()) sol = solve_single(live, cfg.ball, cfg.solver);
    if (live.edges.empty() || sol.objective < 1e-9) {
      if (cfg.problem == Problem::PSNLCLP)
        throw SolverGuardError(
            "coverage stalled before reaching the gamma target");
      if (trace) trace->stopped_early = true;
      break;  // nothing reachable is uncovered; fewer devices suffice
    }
    devices.push_back({sol.position, cfg.ball});
    const double gained = trimmed.apply_coverage(sol);
    covered += gained;
    if (trace)
      trace->steps.push_back({gained, covered, trimmed.live_weighted_length()});
  }
  return make_placement(net, std::move(devices));
}

int p_upper_bound(const Network& net, const Ball& ball, double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must be in (0,1]");
  const int m = static_cast<int>(net.edges.size());
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return net.edge_wlength(a) > net.edge_wlength(b);
  });
  const double target = gamma * total_weighted_length(net);
  double acc = 0.0;
  int bound = 0;
  for (int e : order) {
    if (acc >= target) break;
    acc += net.edge_wlength(e);
    bound += static_cast<int>(
        std::ceil(net.edge_length(e) / (2.0 * ball.radius)));
  }
  return bound;
}

namespace {

std::vector<Point> baseline_candidates(const Network& net, const RunConfig& cfg,
                                       BaselineMode mode) {
  std::vector<Point> cand;
  if (mode == BaselineMode::Nodes) {
    for (const Node& n : net.nodes) cand.push_back({n.x, n.y});
    return cand;
  }
  const double spacing =
      cfg.edge_grid_step > 0.0 ? cfg.edge_grid_step : cfg.ball.radius / 4.0;
  for (size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.edge_segment(static_cast<int>(e));
    const double L = length(s);
    const int k = std::max(1, static_cast<int>(std::ceil(L / spacing)));
    for (int i = 0; i <= k; ++i)
      cand.push_back(point_at(s, static_cast<double>(i) / k));
  }
  return cand;
}

double coverage_value(const Network& net, const std::vector<Device>& devices) {
  return evaluate(net, devices).covered_weighted_length;
}

}  // namespace

Placement restricted_baseline(const Network& net, const RunConfig& cfg,
                              BaselineMode mode) {
  validate(cfg);
  if (cfg.problem != Problem::MNLCLP)
    throw std::invalid_argument("restricted baselines solve MNLCLP only");
  const std::vector<Point> cand = baseline_candidates(net, cfg, mode);
  std::vector<Device> devices;

  // greedy: p rounds of best exact marginal gain, ties to lowest index
  for (int round = 0; round < cfg.p && !cand.empty(); ++round) {
    std::vector<double> value(cand.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (long long c = 0; c < static_cast<long long>(cand.size()); ++c) {
      std::vector<Device> trial = devices;
      trial.push_back({cand[static_cast<size_t>(c)], cfg.ball});
      value[static_cast<size_t>(c)] =
          evaluate_serial(net, trial).covered_weighted_length;
    }
    size_t pick = 0;
    for (size_t c = 1; c < cand.size(); ++c)
      if (value[c] > value[pick]) pick = c;
    devices.push_back({cand[pick], cfg.ball});
  }

  // 1-swap improvement, first-improvement in deterministic order
  bool improved = !devices.empty();
  double current = coverage_value(net, devices);
  int passes = 0;
  while (improved && passes++ < 20) {
    improved = false;
    for (size_t d = 0; d < devices.size() && !improved; ++d) {
      std::vector<double> value(cand.size());
#pragma omp parallel for schedule(dynamic, 8)
      for (long long c = 0; c < static_cast<long long>(cand.size()); ++c) {
        std::vector<Device> trial = devices;
        trial[d] = {cand[static_cast<size_t>(c)], cfg.ball};
        value[static_cast<size_t>(c)] =
            evaluate_serial(net, trial).covered_weighted_length;
      }
      size_t pick = cand.size();
      for (size_t c = 0; c < cand.size(); ++c)
        if (value[c] > current + 1e-12 &&
            (pick == cand.size() || value[c] > value[pick]))
          pick = c;
      if (pick < cand.size()) {
        devices[d] = {cand[pick], cfg.ball};
        current = value[pick];
        improved = true;
      }
    }
  }
  return make_placement(net, std::move(devices));
}

SolveResult solve(const Network& net, const RunConfig& cfg, Strategy strategy) {
  validate(cfg);
  SolveResult res;
  switch (strategy) {
    case Strategy::Heuristic: {
      HeuristicTrace trace;
      res.placement = math_heuristic(net, cfg, &trace);
      if (trace.stopped_early)
        res.warning =
            "stopped after " + std::to_string(res.placement.devices.size()) +
            " devices: no reachable length left to cover";
      break;
    }
    case Strategy::SeedPolish: {
      if (cfg.problem != Problem::MNLCLP)
        throw std::invalid_argument("seed_polish applies to mnlclp only");
      if (cfg.p <= 0) {
        res.placement = make_placement(net, {});
        break;
      }
      const IncompatibilityTable table =
          build_incompatibility_table(net, cfg.ball);
      const SeedAssignment seed =
          solve_seed_ilp(net, cfg.ball, cfg.p, table, SeedMode::ExactBnB);
      res.placement = seed_to_placement(seed, net, cfg.ball, /*polish=*/true);
      if (!seed.optimal)
        res.warning = "seed search hit the node limit; greedy fallback used";
      break;
    }
    case Strategy::BaselineNodes:
      res.placement = restricted_baseline(net, cfg, BaselineMode::Nodes);
      break;
    case Strategy::BaselineEdges:
      res.placement = restricted_baseline(net, cfg, BaselineMode::Edges);
      break;
  }
  res.report = evaluate(net, res.placement.devices);
  return res;
}

}  // namespace netcover
