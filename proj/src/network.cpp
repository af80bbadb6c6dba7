#include "netcover/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "netcover/rng.hpp"

namespace netcover {

int Network::edge_index(const std::string& id) const {
  for (size_t i = 0; i < edges.size(); ++i)
    if (edges[i].id == id) return static_cast<int>(i);
  return -1;
}

int Network::node_index(const std::string& id) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<int>(i);
  return -1;
}

Network make_network(std::vector<Node> nodes, std::vector<Edge> edges) {
  Network net;
  net.nodes = std::move(nodes);
  net.edges = std::move(edges);

  std::unordered_map<std::string, int> node_ix;
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    const Node& n = net.nodes[i];
    if (!std::isfinite(n.x) || !std::isfinite(n.y))
      throw std::invalid_argument("node '" + n.id + "': non-finite coordinate");
    if (!node_ix.emplace(n.id, static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate node id '" + n.id + "'");
  }

  std::unordered_set<std::string> edge_ids;
  for (Edge& e : net.edges) {
    if (!edge_ids.insert(e.id).second)
      throw std::invalid_argument("duplicate edge id '" + e.id + "'");
    auto sa = node_ix.find(e.source);
    auto sb = node_ix.find(e.target);
    if (sa == node_ix.end() || sb == node_ix.end())
      throw std::invalid_argument("edge '" + e.id + "': dangling endpoint");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
      throw std::invalid_argument("edge '" + e.id + "': negative weight");
    e.a = sa->second;
    e.b = sb->second;
    const Node& na = net.nodes[static_cast<size_t>(e.a)];
    const Node& nb = net.nodes[static_cast<size_t>(e.b)];
    if (na.x == nb.x && na.y == nb.y)
      throw std::invalid_argument("edge '" + e.id + "': zero length");
  }
  if (!net.edges.empty() && total_weighted_length(net) <= 0.0)
    throw std::invalid_argument("network has zero total weighted length");
  return net;
}

Network parse_network_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("network parse error: ") + e.what());
  }
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  try {
    for (const auto& n : j.at("nodes"))
      nodes.push_back({n.at("id").get<std::string>(), n.at("x").get<double>(),
                       n.at("y").get<double>()});
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("id").get<std::string>(),
                       e.at("source").get<std::string>(),
                       e.at("target").get<std::string>(),
                       e.at("weight").get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("network parse error: ") + e.what());
  }
  return make_network(std::move(nodes), std::move(edges));
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_network_json(ss.str());
}

std::string network_to_json(const Network& net) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const Node& n : net.nodes)
    j["nodes"].push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : net.edges)
    j["edges"].push_back({{"id", e.id},
                          {"source", e.source},
                          {"target", e.target},
                          {"weight", e.weight}});
  return j.dump(2) + "\n";
}

double total_weighted_length(const Network& net) {
  double total = 0.0;
  for (size_t e = 0; e < net.edges.size(); ++e)
    total += net.edge_wlength(static_cast<int>(e));
  return total;
}

namespace {

Circle circle_from(const Point& a, const Point& b) {
  const Point c{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  return {c, std::hypot(a.x - c.x, a.y - c.y)};
}

Circle circle_from(const Point& a, const Point& b, const Point& c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (d == 0.0) {
    // collinear; take the widest pair
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)})
      if (cand.radius > best.radius) best = cand;
    return best;
  }
  const double b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  const Point center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  return {center, std::hypot(a.x - center.x, a.y - center.y)};
}

bool in_circle(const Circle& c, const Point& p) {
  return std::hypot(p.x - c.center.x, p.y - c.center.y) <=
         c.radius * (1.0 + 1e-12) + 1e-14;
}

}  // namespace

Circle bounding_circle(std::span<const Point> points) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  std::vector<Point> pts(points.begin(), points.end());
  // deterministic shuffle keeps Welzl's expected-linear behaviour
  SplitMix64 rng(0x77656c7aULL);
  for (size_t i = pts.size(); i > 1; --i)
    std::swap(pts[i - 1], pts[rng.next() % i]);

  Circle c{pts[0], 0.0};
  for (size_t i = 1; i < pts.size(); ++i) {
    if (in_circle(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (size_t j = 0; j < i; ++j) {
      if (in_circle(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (size_t k = 0; k < j; ++k) {
        if (in_circle(c, pts[k])) continue;
        c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

Network scale_to_disk(const Network& net, double target_radius) {
  if (!(target_radius > 0.0))
    throw std::invalid_argument("target radius must be positive");
  if (net.nodes.empty()) throw std::invalid_argument("empty network");
  std::vector<Point> pts;
  pts.reserve(net.nodes.size());
  for (const Node& n : net.nodes) pts.push_back({n.x, n.y});
  const Circle c = bounding_circle(pts);
  if (c.radius == 0.0)
    throw std::invalid_argument("degenerate network: all nodes coincide");
  // exact circumradius of the centered set, so max norm lands on target
  double max_norm = 0.0;
  for (const Point& p : pts)
    max_norm = std::max(max_norm, std::hypot(p.x - c.center.x, p.y - c.center.y));
  const double s = target_radius / max_norm;
  Network out = net;
  for (Node& n : out.nodes) {
    n.x = (n.x - c.center.x) * s;
    n.y = (n.y - c.center.y) * s;
  }
  return out;
}

}  // namespace netcover
