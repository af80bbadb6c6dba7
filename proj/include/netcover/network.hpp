#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "netcover/geometry.hpp"

namespace netcover {

struct Node {
  std::string id;
  double x = 0.0;
  double y = 0.0;
};

struct Edge {
  std::string id;
  std::string source;
  std::string target;
  double weight = 1.0;
  // resolved node indices, filled on construction
  int a = -1;
  int b = -1;
};

// Planar embedded weighted graph. Immutable after construction; safe to
// share across threads for reading.
struct Network {
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  Segment edge_segment(int e) const {
    const Edge& ed = edges[static_cast<size_t>(e)];
    const Node& na = nodes[static_cast<size_t>(ed.a)];
    const Node& nb = nodes[static_cast<size_t>(ed.b)];
    return {{na.x, na.y}, {nb.x, nb.y}};
  }
  double edge_length(int e) const { return length(edge_segment(e)); }
  // weight * length, the contribution of e to the total
  double edge_wlength(int e) const {
    return edges[static_cast<size_t>(e)].weight * edge_length(e);
  }
  int edge_index(const std::string& id) const;
  int node_index(const std::string& id) const;
};

// Validates ids, endpoint resolution, weights, finiteness and edge lengths.
Network make_network(std::vector<Node> nodes, std::vector<Edge> edges);

Network load_network(const std::filesystem::path& path);
Network parse_network_json(const std::string& text);
std::string network_to_json(const Network& net);

double total_weighted_length(const Network& net);

struct Circle {
  Point center;
  double radius = 0.0;
};
// Smallest enclosing circle of a point set (Welzl).
Circle bounding_circle(std::span<const Point> points);

// Translate so the bounding-circle center sits at the origin and scale
// uniformly so the farthest node lies at target_radius. Weights unchanged.
Network scale_to_disk(const Network& net, double target_radius);

}  // namespace netcover
