#include "netcover/trim.hpp"

#include <string>

namespace netcover {

Network TrimmedNetwork::materialize() const {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<LivePiece> kept;
  for (const LivePiece& p : pieces) {
    const Segment s = base->edge_segment(p.edge);
    const Point pa = point_at(s, p.a);
    const Point pb = point_at(s, p.b);
    if (pa.x == pb.x && pa.y == pb.y) continue;  // below float resolution
    const size_t k = kept.size();
    nodes.push_back({"n" + std::to_string(k) + "a", pa.x, pa.y});
    nodes.push_back({"n" + std::to_string(k) + "b", pb.x, pb.y});
    edges.push_back({std::to_string(k), nodes[2 * k].id, nodes[2 * k + 1].id,
                     base->edges[static_cast<size_t>(p.edge)].weight});
    kept.push_back(p);
  }
  Network net = make_network(std::move(nodes), std::move(edges));
  return net;
}

double TrimmedNetwork::apply_coverage(const SingleSolution& sol) {
  // Piece k of the materialized network corresponds to kept piece k; keep
  // the two orderings aligned by rebuilding the kept list the same way.
  std::vector<size_t> kept_to_pieces;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const Segment s = base->edge_segment(pieces[i].edge);
    const Point pa = point_at(s, pieces[i].a);
    const Point pb = point_at(s, pieces[i].b);
    if (pa.x == pb.x && pa.y == pb.y) continue;
    kept_to_pieces.push_back(i);
  }

  double removed = 0.0;
  std::vector<LivePiece> next;
  std::vector<std::pair<double, double>> window(pieces.size(), {0.0, 0.0});
  std::vector<char> touched(pieces.size(), 0);
  for (size_t t = 0; t < sol.touched.size(); ++t) {
    const size_t piece_ix =
        kept_to_pieces[static_cast<size_t>(sol.touched[t])];
    window[piece_ix] = sol.lambdas[t];
    touched[piece_ix] = 1;
  }
  for (size_t i = 0; i < pieces.size(); ++i) {
    const LivePiece& p = pieces[i];
    const auto [u, v] = window[i];
    if (!touched[i] || v - u <= 0.0) {
      next.push_back(p);  // untouched or tangent: nothing removed
      continue;
    }
    const double lo = p.a + u * (p.b - p.a);
    const double hi = p.a + v * (p.b - p.a);
    removed += base->edge_wlength(p.edge) * (hi - lo);
    if (u > 0.0) next.push_back({p.edge, p.a, lo});
    if (v < 1.0) next.push_back({p.edge, hi, p.b});
  }
  pieces = std::move(next);
  return removed;
}

}  // namespace netcover
