#include "netcover/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace netcover {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Network& net, const Placement* placement) {
  double min_x = net.nodes.empty() ? 0.0 : net.nodes[0].x;
  double max_x = min_x, min_y = net.nodes.empty() ? 0.0 : net.nodes[0].y;
  double max_y = min_y;
  for (const Node& n : net.nodes) {
    min_x = std::min(min_x, n.x);
    max_x = std::max(max_x, n.x);
    min_y = std::min(min_y, n.y);
    max_y = std::max(max_y, n.y);
  }
  if (placement)
    for (const Device& d : placement->devices) {
      min_x = std::min(min_x, d.position.x - d.ball.radius);
      max_x = std::max(max_x, d.position.x + d.ball.radius);
      min_y = std::min(min_y, d.position.y - d.ball.radius);
      max_y = std::max(max_y, d.position.y + d.ball.radius);
    }
  const double span = std::max(std::max(max_x - min_x, max_y - min_y), 1e-9);
  const double margin = 0.05 * span;
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const double size = 800.0;
  const double scale = size / std::max(max_x - min_x, max_y - min_y);
  auto sx = [&](double x) { return (x - min_x) * scale; };
  auto sy = [&](double y) { return size - (y - min_y) * scale; };  // y up

  double max_w = 0.0;
  for (const Edge& e : net.edges) max_w = std::max(max_w, e.weight);
  auto stroke_w = [&](double w) {
    return max_w > 0.0 ? 0.8 + 3.2 * (w / max_w) : 1.5;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size)
      << "\" height=\"" << num(size) << "\" viewBox=\"0 0 " << num(size) << " "
      << num(size) << "\">\n";
  out << "<rect width=\"" << num(size) << "\" height=\"" << num(size)
      << "\" fill=\"white\"/>\n";

  if (placement)
    for (const Device& d : placement->devices) {
      const double cx = sx(d.position.x);
      const double cy = sy(d.position.y);
      const double r = d.ball.radius * scale;
      const char* style =
          " fill=\"#d62728\" fill-opacity=\"0.10\" stroke=\"#d62728\""
          " stroke-width=\"1.2\"/>\n";
      if (d.ball.norm == Norm::L2) {
        out << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy)
            << "\" r=\"" << num(r) << "\"" << style;
      } else if (d.ball.norm == Norm::L1) {
        out << "<polygon points=\"" << num(cx + r) << "," << num(cy) << " "
            << num(cx) << "," << num(cy - r) << " " << num(cx - r) << ","
            << num(cy) << " " << num(cx) << "," << num(cy + r) << "\"" << style;
      } else {
        out << "<polygon points=\"" << num(cx - r) << "," << num(cy - r) << " "
            << num(cx + r) << "," << num(cy - r) << " " << num(cx + r) << ","
            << num(cy + r) << " " << num(cx - r) << "," << num(cy + r) << "\""
            << style;
      }
    }

  for (size_t e = 0; e < net.edges.size(); ++e) {
    const Segment s = net.edge_segment(static_cast<int>(e));
    out << "<line x1=\"" << num(sx(s.a.x)) << "\" y1=\"" << num(sy(s.a.y))
        << "\" x2=\"" << num(sx(s.b.x)) << "\" y2=\"" << num(sy(s.b.y))
        << "\" stroke=\"#555555\" stroke-width=\""
        << num(stroke_w(net.edges[e].weight)) << "\"/>\n";
  }

  if (placement)
    for (size_t e = 0; e < net.edges.size(); ++e) {
      auto it = placement->per_edge_intervals.find(net.edges[e].id);
      if (it == placement->per_edge_intervals.end()) continue;
      const Segment s = net.edge_segment(static_cast<int>(e));
      for (const auto& [lo, hi] : it->second) {
        const Point pa = point_at(s, lo);
        const Point pb = point_at(s, hi);
        out << "<line x1=\"" << num(sx(pa.x)) << "\" y1=\"" << num(sy(pa.y))
            << "\" x2=\"" << num(sx(pb.x)) << "\" y2=\"" << num(sy(pb.y))
            << "\" stroke=\"#1f77b4\" stroke-width=\""
            << num(stroke_w(net.edges[e].weight) + 1.6) << "\"/>\n";
      }
    }

  if (placement)
    for (const Device& d : placement->devices) {
      const double cx = sx(d.position.x);
      const double cy = sy(d.position.y);
      const double ro = 7.0, ri = 2.8;
      out << "<polygon points=\"";
      for (int k = 0; k < 10; ++k) {
        const double ang = -M_PI / 2.0 + k * M_PI / 5.0;
        const double rr = k % 2 == 0 ? ro : ri;
        out << num(cx + rr * std::cos(ang)) << ","
            << num(cy + rr * std::sin(ang)) << (k + 1 < 10 ? " " : "");
      }
      out << "\" fill=\"#d62728\"/>\n";
    }

  out << "</svg>\n";
  return out.str();
}

}  // namespace netcover
