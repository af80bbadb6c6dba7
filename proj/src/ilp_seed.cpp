#include "netcover/ilp_seed.hpp"

#include <algorithm>
#include <numeric>

#include "netcover/single_device.hpp"
#include "netcover/trim.hpp"

namespace netcover {

namespace {

struct BnB {
  const Network& net;
  const Ball& ball;
  const IncompatibilityTable& table;
  int p;
  long long node_limit;

  std::vector<int> order;      // edge indices, heaviest first
  std::vector<double> suffix;  // remaining weight from position k on

  std::vector<std::vector<int>> clusters;
  double value = 0.0;

  double best_value = -1.0;
  std::vector<std::vector<int>> best_clusters;
  long long nodes = 0;
  bool aborted = false;

  bool fits(int edge, const std::vector<int>& cluster) const {
    for (int m1 : cluster)
      if (table.pair_forbidden(edge, m1)) return false;
    for (size_t i = 0; i < cluster.size(); ++i)
      for (size_t j = i + 1; j < cluster.size(); ++j)
        if (table.triple_forbidden(edge, cluster[i], cluster[j])) return false;
    return true;
  }

  void dfs(size_t k) {
    if (aborted) return;
    if (++nodes > node_limit) {
      aborted = true;
      return;
    }
    if (value + suffix[k] <= best_value + 1e-12) return;
    if (k == order.size()) {
      best_value = value;
      best_clusters = clusters;
      return;
    }
    const int edge = order[k];
    const double w = net.edge_wlength(edge);

    for (size_t c = 0; c < clusters.size(); ++c) {
      if (!fits(edge, clusters[c])) continue;
      clusters[c].push_back(edge);
      value += w;
      dfs(k + 1);
      value -= w;
      clusters[c].pop_back();
    }
    if (static_cast<int>(clusters.size()) < p) {
      // clusters are interchangeable: open at most one new one per level
      clusters.emplace_back(1, edge);
      value += w;
      dfs(k + 1);
      value -= w;
      clusters.pop_back();
    }
    dfs(k + 1);  // leave the edge uncovered
  }
};

SeedAssignment greedy_seed(const Network& net, int p,
                           const IncompatibilityTable& table) {
  const int m = static_cast<int>(net.edges.size());
  std::vector<int> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return net.edge_wlength(a) > net.edge_wlength(b);
  });

  SeedAssignment seed;
  std::vector<char> used(static_cast<size_t>(m), 0);
  for (int c = 0; c < p; ++c) {
    std::vector<int> cluster;
    for (int e : order) {
      if (used[static_cast<size_t>(e)]) continue;
      bool ok = true;
      // same pruning rules as the exact search
      for (int m1 : cluster)
        if (table.pair_forbidden(e, m1)) {
          ok = false;
          break;
        }
      if (ok)
        for (size_t i = 0; i < cluster.size() && ok; ++i)
          for (size_t j = i + 1; j < cluster.size() && ok; ++j)
            if (table.triple_forbidden(e, cluster[i], cluster[j])) ok = false;
      if (!ok) continue;
      cluster.push_back(e);
      used[static_cast<size_t>(e)] = 1;
      seed.ilp_value += net.edge_wlength(e);
    }
    if (!cluster.empty()) seed.clusters.push_back(std::move(cluster));
  }
  return seed;
}

void finalize(SeedAssignment& seed, const Network& net, const Ball& ball) {
  seed.certified = true;
  for (const std::vector<int>& cluster : seed.clusters) {
    const CompatResult r = is_compatible_set(cluster, net, ball);
    if (!r.feasible) seed.certified = false;
    seed.positions.push_back(r.witness.value_or(Point{}));
  }
}

}  // namespace

SeedAssignment solve_seed_ilp(const Network& net, const Ball& ball, int p,
                              const IncompatibilityTable& table, SeedMode mode,
                              long long node_limit) {
  if (net.edges.empty()) throw std::invalid_argument("empty network");
  if (p < 1) throw std::invalid_argument("p must be >= 1");

  SeedAssignment greedy = greedy_seed(net, p, table);
  if (mode == SeedMode::Greedy) {
    greedy.optimal = false;
    finalize(greedy, net, ball);
    return greedy;
  }

  BnB bnb{net, ball, table, p, node_limit, {}, {}, {}, 0.0, -1.0, {}, 0, false};
  const int m = static_cast<int>(net.edges.size());
  bnb.order.resize(static_cast<size_t>(m));
  std::iota(bnb.order.begin(), bnb.order.end(), 0);
  std::stable_sort(bnb.order.begin(), bnb.order.end(), [&](int a, int b) {
    return net.edge_wlength(a) > net.edge_wlength(b);
  });
  bnb.suffix.assign(static_cast<size_t>(m) + 1, 0.0);
  for (int k = m - 1; k >= 0; --k)
    bnb.suffix[static_cast<size_t>(k)] =
        bnb.suffix[static_cast<size_t>(k) + 1] +
        net.edge_wlength(bnb.order[static_cast<size_t>(k)]);
  // start from the greedy incumbent so pruning bites early
  bnb.best_value = greedy.ilp_value - 1e-12;
  bnb.dfs(0);

  SeedAssignment seed;
  seed.nodes_explored = bnb.nodes;
  if (bnb.best_clusters.empty() && bnb.best_value <= greedy.ilp_value) {
    seed = greedy;
    seed.nodes_explored = bnb.nodes;
    seed.optimal = !bnb.aborted;
    finalize(seed, net, ball);
    return seed;
  }
  seed.clusters = bnb.best_clusters;
  seed.ilp_value = bnb.best_value;
  seed.optimal = !bnb.aborted;
  if (bnb.aborted && greedy.ilp_value > seed.ilp_value) {
    seed.clusters = greedy.clusters;
    seed.ilp_value = greedy.ilp_value;
  }
  finalize(seed, net, ball);
  return seed;
}

Placement seed_to_placement(const SeedAssignment& seed, const Network& net,
                            const Ball& ball, bool polish) {
  std::vector<Device> devices;
  if (!polish) {
    for (size_t c = 0; c < seed.clusters.size(); ++c)
      if (!seed.clusters[c].empty())
        devices.push_back({seed.positions[c], ball});
    return make_placement(net, std::move(devices));
  }
  // Polish sequentially against what the earlier devices left uncovered.
  TrimmedNetwork trimmed = TrimmedNetwork::full(net);
  for (size_t c = 0; c < seed.clusters.size(); ++c) {
    if (seed.clusters[c].empty()) continue;
    const Network live = trimmed.materialize();
    if (live.edges.empty()) {
      devices.push_back({seed.positions[c], ball});
      continue;
    }
    const SingleSolution sol = polish_from(seed.positions[c], live, ball);
    const Point pos = sol.objective > 0.0 ? sol.position : seed.positions[c];
    devices.push_back({pos, ball});
    trimmed.apply_coverage(solution_at(pos, live, ball));
  }
  return make_placement(net, std::move(devices));
}

}  // namespace netcover
