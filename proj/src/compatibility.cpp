#include "netcover/compatibility.hpp"

#include <algorithm>
#include <stdexcept>

namespace netcover {

namespace {

uint64_t pair_key(int i, int j) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 32) |
         static_cast<uint32_t>(j);
}

uint64_t triple_key(int i, int j, int k) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(i)) << 42) ^
         (static_cast<uint64_t>(static_cast<uint32_t>(j)) << 21) ^
         static_cast<uint32_t>(k);
}

void order(int& i, int& j) {
  if (i > j) std::swap(i, j);
}

// Euclidean pairs use the segment distance directly; for polyhedral balls
// the emptiness test needs the matching norm. The difference set
// {x - x' : x in e, x' in e'} is a convex polygon with at most four
// vertices, so its norm-minimum is exact via the 1-D segment minimiser.
double stadium_gap(const Network& net, int e1, int e2, Norm norm) {
  const Segment s1 = net.edge_segment(e1);
  const Segment s2 = net.edge_segment(e2);
  if (norm == Norm::L2) return segment_segment_distance(s1, s2);

  const std::array<Point, 4> v{{{s1.a.x - s2.a.x, s1.a.y - s2.a.y},
                                {s1.a.x - s2.b.x, s1.a.y - s2.b.y},
                                {s1.b.x - s2.a.x, s1.b.y - s2.a.y},
                                {s1.b.x - s2.b.x, s1.b.y - s2.b.y}}};
  // origin inside the difference polygon <=> the segments cross
  if (segment_segment_distance(s1, s2) == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const Point origin{0.0, 0.0};
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) {
      const Segment side{v[i], v[j]};
      const double d =
          is_degenerate(side)
              ? norm_dist(origin, side.a, norm)
              : point_segment_norm_distance(origin, side, norm).distance;
      best = std::min(best, d);
    }
  return best;
}

bool pair_incompatible(const Network& net, int e1, int e2, const Ball& ball) {
  return stadium_gap(net, e1, e2, ball.norm) >
         2.0 * (ball.radius + kCompatTol);
}

}  // namespace

bool IncompatibilityTable::pair_forbidden(int i, int j) const {
  order(i, j);
  return pair_keys_.count(pair_key(i, j)) > 0;
}

bool IncompatibilityTable::triple_forbidden(int i, int j, int k) const {
  int a = i, b = j, c = k;
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return triple_keys_.count(triple_key(a, b, c)) > 0;
}

void IncompatibilityTable::build_index() {
  pair_keys_.clear();
  triple_keys_.clear();
  for (const auto& [i, j] : pairs) pair_keys_.insert(pair_key(i, j));
  for (const auto& t : triples) triple_keys_.insert(triple_key(t[0], t[1], t[2]));
}

std::vector<std::pair<int, int>> pairwise_incompatible_serial(const Network& net,
                                                              const Ball& ball) {
  const int m = static_cast<int>(net.edges.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (pair_incompatible(net, i, j, ball)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<int, int>> pairwise_incompatible(const Network& net,
                                                       const Ball& ball) {
  const int m = static_cast<int>(net.edges.size());
  std::vector<std::pair<int, int>> flat;
  flat.reserve(static_cast<size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) flat.emplace_back(i, j);

  std::vector<char> bad(flat.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long k = 0; k < static_cast<long long>(flat.size()); ++k) {
    const auto [i, j] = flat[static_cast<size_t>(k)];
    bad[static_cast<size_t>(k)] = pair_incompatible(net, i, j, ball) ? 1 : 0;
  }
  std::vector<std::pair<int, int>> out;
  for (size_t k = 0; k < flat.size(); ++k)
    if (bad[k]) out.push_back(flat[k]);
  return out;
}

namespace {

std::vector<std::array<int, 3>> triple_candidates(
    const Network& net, std::span<const std::pair<int, int>> pairs) {
  const int m = static_cast<int>(net.edges.size());
  std::unordered_set<uint64_t> forbidden;
  for (const auto& [i, j] : pairs) forbidden.insert(pair_key(i, j));
  auto ok = [&](int i, int j) { return forbidden.count(pair_key(i, j)) == 0; };

  std::vector<std::array<int, 3>> cand;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (!ok(i, j)) continue;
      for (int k = j + 1; k < m; ++k)
        if (ok(i, k) && ok(j, k)) cand.push_back({i, j, k});
    }
  return cand;
}

bool triple_is_incompatible(const Network& net, const Ball& ball,
                            const std::array<int, 3>& t) {
  const std::array<Segment, 3> segs{net.edge_segment(t[0]),
                                    net.edge_segment(t[1]),
                                    net.edge_segment(t[2])};
  // Cheap acceptance first: midpoints of pairwise closest approaches often
  // already witness a common stadium point.
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const ClosestPair cp = segment_closest_points(segs[static_cast<size_t>(a)],
                                                    segs[static_cast<size_t>(b)]);
      const Point mid{0.5 * (cp.on_first.x + cp.on_second.x),
                      0.5 * (cp.on_first.y + cp.on_second.y)};
      bool inside = true;
      for (const Segment& s : segs)
        if (!in_stadium(mid, s, ball)) {
          inside = false;
          break;
        }
      if (inside) return false;
    }
  const CoverSlack r = min_cover_slack(segs, ball.radius, ball.norm);
  return r.slack > kCompatTol;
}

}  // namespace

std::vector<std::array<int, 3>> triple_incompatible_serial(
    const Network& net, const Ball& ball,
    std::span<const std::pair<int, int>> pairs) {
  std::vector<std::array<int, 3>> out;
  for (const auto& t : triple_candidates(net, pairs))
    if (triple_is_incompatible(net, ball, t)) out.push_back(t);
  return out;
}

std::vector<std::array<int, 3>> triple_incompatible(
    const Network& net, const Ball& ball,
    std::span<const std::pair<int, int>> pairs) {
  const std::vector<std::array<int, 3>> cand = triple_candidates(net, pairs);
  std::vector<char> bad(cand.size(), 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long k = 0; k < static_cast<long long>(cand.size()); ++k)
    bad[static_cast<size_t>(k)] =
        triple_is_incompatible(net, ball, cand[static_cast<size_t>(k)]) ? 1 : 0;
  std::vector<std::array<int, 3>> out;
  for (size_t k = 0; k < cand.size(); ++k)
    if (bad[k]) out.push_back(cand[k]);
  return out;
}

IncompatibilityTable build_incompatibility_table(const Network& net,
                                                 const Ball& ball) {
  IncompatibilityTable t;
  t.radius = ball.radius;
  t.norm = ball.norm;
  t.pairs = pairwise_incompatible(net, ball);
  t.triples = triple_incompatible(net, ball, t.pairs);
  t.build_index();
  return t;
}

CompatResult is_compatible_set(std::span<const int> edge_indices,
                               const Network& net, const Ball& ball) {
  if (edge_indices.empty()) throw std::invalid_argument("empty edge set");
  std::vector<Segment> segs;
  segs.reserve(edge_indices.size());
  for (int e : edge_indices) segs.push_back(net.edge_segment(e));
  const CoverSlack r = min_cover_slack(segs, ball.radius, ball.norm);
  CompatResult res;
  res.slack = r.slack;
  res.feasible = r.slack <= kCompatTol;
  if (res.feasible) res.witness = r.center;
  return res;
}

}  // namespace netcover
