#include "netcover/single_device.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "netcover/rng.hpp"

namespace netcover {

double objective_at(const Point& x, const Network& net, const Ball& ball) {
  double total = 0.0;
  for (size_t e = 0; e < net.edges.size(); ++e) {
    const auto hit =
        ball_segment_intersection(x, ball, net.edge_segment(static_cast<int>(e)));
    if (hit)
      total += net.edge_wlength(static_cast<int>(e)) * (hit->second - hit->first);
  }
  return total;
}

SingleSolution solution_at(const Point& x, const Network& net, const Ball& ball) {
  SingleSolution s;
  s.position = x;
  for (size_t e = 0; e < net.edges.size(); ++e) {
    const auto hit =
        ball_segment_intersection(x, ball, net.edge_segment(static_cast<int>(e)));
    if (!hit) continue;
    s.touched.push_back(static_cast<int>(e));
    s.lambdas.emplace_back(hit->first, hit->second);
    s.objective +=
        net.edge_wlength(static_cast<int>(e)) * (hit->second - hit->first);
  }
  return s;
}

namespace {

struct Candidate {
  double objective = -1.0;
  Point pos;
};

bool lex_less(const Point& a, const Point& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

Candidate compass_search(Point start, const Network& net, const Ball& ball,
                         double step0, double step_tol) {
  static constexpr double kDir[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                        {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  Point x = start;
  double fx = objective_at(x, net, ball);
  double step = step0;
  while (step >= step_tol) {
    // require a real gain: rounding noise on flat plateaus must not count
    const double margin = 1e-12 * (1.0 + std::abs(fx));
    bool moved = false;
    for (const auto& d : kDir) {
      const Point y{x.x + step * d[0], x.y + step * d[1]};
      const double fy = objective_at(y, net, ball);
      if (fy > fx + margin) {
        x = y;
        fx = fy;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {fx, x};
}

std::vector<Point> build_seeds(const Network& net, const Ball& ball,
                               const SolverConfig& cfg) {
  std::vector<Point> seeds;
  for (const Node& n : net.nodes) seeds.push_back({n.x, n.y});
  for (size_t e = 0; e < net.edges.size(); ++e)
    seeds.push_back(point_at(net.edge_segment(static_cast<int>(e)), 0.5));

  // Midpoints of the closest approach of nearby edge pairs sit inside both
  // stadiums, which makes them strong starts for multi-edge coverage.
  const int m = static_cast<int>(net.edges.size());
  struct PairSeed {
    double wlen;
    Point p;
  };
  std::vector<PairSeed> pair_seeds;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const ClosestPair cp =
          segment_closest_points(net.edge_segment(i), net.edge_segment(j));
      if (cp.distance > 2.0 * ball.radius) continue;
      pair_seeds.push_back({net.edge_wlength(i) + net.edge_wlength(j),
                            {0.5 * (cp.on_first.x + cp.on_second.x),
                             0.5 * (cp.on_first.y + cp.on_second.y)}});
    }
  std::stable_sort(pair_seeds.begin(), pair_seeds.end(),
                   [](const PairSeed& a, const PairSeed& b) {
                     return a.wlen > b.wlen;
                   });
  const size_t cap = cfg.max_pair_witness_seeds < 0
                         ? pair_seeds.size()
                         : static_cast<size_t>(cfg.max_pair_witness_seeds);
  for (size_t k = 0; k < pair_seeds.size() && k < cap; ++k)
    seeds.push_back(pair_seeds[k].p);

  std::vector<Point> pts;
  for (const Node& n : net.nodes) pts.push_back({n.x, n.y});
  const Circle disk = bounding_circle(pts);
  SplitMix64 rng(cfg.rng_seed ^ 0x5eedULL);
  for (int k = 0; k < cfg.random_seeds; ++k) {
    // uniform in the bounding disk by rejection
    while (true) {
      const double px = rng.uniform(-1.0, 1.0);
      const double py = rng.uniform(-1.0, 1.0);
      if (px * px + py * py > 1.0) continue;
      seeds.push_back({disk.center.x + px * disk.radius,
                       disk.center.y + py * disk.radius});
      break;
    }
  }
  return seeds;
}

SingleSolution solve_multistart(const Network& net, const Ball& ball,
                                const SolverConfig& cfg, bool parallel) {
  if (net.edges.empty()) return SingleSolution{};
  const double step_tol =
      cfg.step_tol > 0.0 ? cfg.step_tol : 1e-6 * ball.radius;
  const std::vector<Point> seeds = build_seeds(net, ball, cfg);

  std::vector<Candidate> results(seeds.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (long long k = 0; k < static_cast<long long>(seeds.size()); ++k)
      results[static_cast<size_t>(k)] =
          compass_search(seeds[static_cast<size_t>(k)], net, ball,
                         ball.radius * 0.5, step_tol);
  } else {
    for (size_t k = 0; k < seeds.size(); ++k)
      results[k] = compass_search(seeds[k], net, ball, ball.radius * 0.5,
                                  step_tol);
  }

  // Deterministic reduction: best objective, near-ties (1e-9) resolved to
  // the lexicographically smallest position.
  double best = -1.0;
  for (const Candidate& c : results) best = std::max(best, c.objective);
  Point pick;
  bool have = false;
  for (const Candidate& c : results) {
    if (c.objective < best - 1e-9) continue;
    if (!have || lex_less(c.pos, pick)) {
      pick = c.pos;
      have = true;
    }
  }
  return solution_at(pick, net, ball);
}

}  // namespace

SingleSolution solve_single(const Network& net, const Ball& ball,
                            const SolverConfig& cfg) {
  return solve_multistart(net, ball, cfg, true);
}

SingleSolution solve_single_serial(const Network& net, const Ball& ball,
                                   const SolverConfig& cfg) {
  return solve_multistart(net, ball, cfg, false);
}

SingleSolution polish_from(const Point& start, const Network& net,
                           const Ball& ball, double step_tol) {
  if (net.edges.empty()) return SingleSolution{};
  const double tol = step_tol > 0.0 ? step_tol : 1e-6 * ball.radius;
  const Candidate c = compass_search(start, net, ball, ball.radius * 0.5, tol);
  return solution_at(c.pos, net, ball);
}

SingleSolution oracle_single(const Network& net, const Ball& ball, int grid_n) {
  if (net.edges.empty()) return SingleSolution{};
  double min_x = net.nodes[0].x, max_x = min_x;
  double min_y = net.nodes[0].y, max_y = min_y;
  for (const Node& n : net.nodes) {
    min_x = std::min(min_x, n.x);
    max_x = std::max(max_x, n.x);
    min_y = std::min(min_y, n.y);
    max_y = std::max(max_y, n.y);
  }
  min_x -= ball.radius;
  max_x += ball.radius;
  min_y -= ball.radius;
  max_y += ball.radius;

  const long long cells = static_cast<long long>(grid_n) * grid_n;
  std::vector<float> val(static_cast<size_t>(cells));
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < cells; ++c) {
    const int i = static_cast<int>(c % grid_n);
    const int j = static_cast<int>(c / grid_n);
    const Point p{min_x + (max_x - min_x) * i / (grid_n - 1),
                  min_y + (max_y - min_y) * j / (grid_n - 1)};
    val[static_cast<size_t>(c)] = static_cast<float>(objective_at(p, net, ball));
  }

  // polish the ten best cells
  std::vector<long long> idx(static_cast<size_t>(cells));
  for (long long c = 0; c < cells; ++c) idx[static_cast<size_t>(c)] = c;
  const size_t top = std::min<size_t>(10, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(top), idx.end(),
                    [&](long long a, long long b) {
                      const float va = val[static_cast<size_t>(a)];
                      const float vb = val[static_cast<size_t>(b)];
                      return va > vb || (va == vb && a < b);
                    });
  Candidate best{-1.0, {}};
  for (size_t t = 0; t < top; ++t) {
    const long long c = idx[t];
    const int i = static_cast<int>(c % grid_n);
    const int j = static_cast<int>(c / grid_n);
    const Point p{min_x + (max_x - min_x) * i / (grid_n - 1),
                  min_y + (max_y - min_y) * j / (grid_n - 1)};
    const Candidate cand =
        compass_search(p, net, ball, ball.radius * 0.5, 1e-7 * ball.radius);
    if (cand.objective > best.objective ||
        (cand.objective == best.objective && lex_less(cand.pos, best.pos)))
      best = cand;
  }
  return solution_at(best.pos, net, ball);
}

}  // namespace netcover
