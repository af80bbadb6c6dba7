#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netcover/geometry.hpp"
#include "netcover/network.hpp"

namespace netcover {

struct Device {
  Point position;
  Ball ball;
};

// One device's covered sub-range of one edge, in edge parameters.
struct CoverageInterval {
  int edge = -1;
  double lo = 0.0;
  double hi = 0.0;
  int device = -1;
};

struct Placement {
  std::vector<Device> devices;
  // merged, disjoint, sorted intervals per edge id
  std::map<std::string, std::vector<std::pair<double, double>>> per_edge_intervals;
};

struct CoverageReport {
  double covered_weighted_length = 0.0;
  double total_weighted_length = 0.0;
  double fraction = 0.0;
  // weighted covered length per edge id; sums to covered_weighted_length
  std::map<std::string, double> per_edge;
};

// Raw intervals contributed by each device that touches the edge.
std::vector<CoverageInterval> edge_intervals(const Network& net, int edge,
                                             std::span<const Device> devices);

// Union of intervals within [0,1]; touching intervals merge.
std::vector<std::pair<double, double>> merge_intervals(
    std::vector<std::pair<double, double>> intervals);
double merged_measure(std::span<const std::pair<double, double>> merged);

Placement make_placement(const Network& net, std::vector<Device> devices);

CoverageReport evaluate(const Network& net, std::span<const Device> devices);
CoverageReport evaluate_serial(const Network& net,
                               std::span<const Device> devices);
inline CoverageReport evaluate(const Network& net, const Placement& p) {
  return evaluate(net, p.devices);
}

}  // namespace netcover
