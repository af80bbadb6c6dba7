// Timings for the OpenMP kernels against their serial references.
// Usage: bench_kernels [network.json] [radius]

#include <omp.h>

#include <cstdio>
#include <string>

#include "netcover/compatibility.hpp"
#include "netcover/coverage.hpp"
#include "netcover/network.hpp"
#include "netcover/rng.hpp"
#include "netcover/single_device.hpp"

using namespace netcover;

namespace {

template <typename F>
double time_of(F&& f, int reps = 3) {
  double best = 1e30;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool equal) {
  std::printf("%-28s %9.4f s %9.4f s %6.2fx  results %s\n", name, serial,
              parallel, serial / parallel, equal ? "equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string path =
      argc > 1 ? argv[1] : std::string(NETCOVER_DATA_DIR) + "/zj.json";
  const double radius = argc > 2 ? std::strtod(argv[2], nullptr) : 0.5;
  const Network net = scale_to_disk(load_network(path), 5.0);
  const Ball ball{Norm::L2, radius};
  std::printf("network %s: |V|=%zu |E|=%zu, R=%.3g, %d threads\n\n",
              path.c_str(), net.nodes.size(), net.edges.size(), radius,
              omp_get_max_threads());
  std::printf("%-28s %11s %11s %7s\n", "kernel", "serial", "openmp", "speedup");

  std::vector<std::pair<int, int>> pairs_s, pairs_p;
  const double t_pair_s =
      time_of([&] { pairs_s = pairwise_incompatible_serial(net, ball); });
  const double t_pair_p =
      time_of([&] { pairs_p = pairwise_incompatible(net, ball); });
  row("pair incompatibility", t_pair_s, t_pair_p, pairs_s == pairs_p);

  std::vector<std::array<int, 3>> triples_s, triples_p;
  const double t_tri_s = time_of(
      [&] { triples_s = triple_incompatible_serial(net, ball, pairs_s); }, 1);
  const double t_tri_p =
      time_of([&] { triples_p = triple_incompatible(net, ball, pairs_p); }, 1);
  row("triple incompatibility", t_tri_s, t_tri_p, triples_s == triples_p);

  SplitMix64 rng(1);
  std::vector<Device> devices;
  for (int j = 0; j < 200; ++j)
    devices.push_back({{rng.uniform(-5, 5), rng.uniform(-5, 5)}, ball});
  CoverageReport rep_s, rep_p;
  const double t_cov_s = time_of([&] {
    for (int i = 0; i < 200; ++i) rep_s = evaluate_serial(net, devices);
  });
  const double t_cov_p = time_of([&] {
    for (int i = 0; i < 200; ++i) rep_p = evaluate(net, devices);
  });
  row("coverage evaluate x200", t_cov_s, t_cov_p,
      rep_s.covered_weighted_length == rep_p.covered_weighted_length);

  SolverConfig cfg;
  cfg.random_seeds = 120;
  SingleSolution sol_s, sol_p;
  const double t_sol_s =
      time_of([&] { sol_s = solve_single_serial(net, ball, cfg); }, 1);
  const double t_sol_p = time_of([&] { sol_p = solve_single(net, ball, cfg); }, 1);
  row("single-device multistart", t_sol_s, t_sol_p,
      sol_s.position.x == sol_p.position.x &&
          sol_s.position.y == sol_p.position.y);

  return 0;
}
