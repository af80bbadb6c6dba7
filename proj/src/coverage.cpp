#include "netcover/coverage.hpp"

#include <algorithm>

namespace netcover {

std::vector<CoverageInterval> edge_intervals(const Network& net, int edge,
                                             std::span<const Device> devices) {
  const Segment seg = net.edge_segment(edge);
  std::vector<CoverageInterval> out;
  for (size_t j = 0; j < devices.size(); ++j) {
    const auto hit =
        ball_segment_intersection(devices[j].position, devices[j].ball, seg);
    if (hit)
      out.push_back({edge, hit->first, hit->second, static_cast<int>(j)});
  }
  return out;
}

std::vector<std::pair<double, double>> merge_intervals(
    std::vector<std::pair<double, double>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return merged;
}

double merged_measure(std::span<const std::pair<double, double>> merged) {
  double total = 0.0;
  for (const auto& iv : merged) total += iv.second - iv.first;
  return total;
}

namespace {

std::vector<std::pair<double, double>> merged_for_edge(
    const Network& net, int edge, std::span<const Device> devices) {
  std::vector<std::pair<double, double>> raw;
  for (const CoverageInterval& iv : edge_intervals(net, edge, devices))
    raw.emplace_back(iv.lo, iv.hi);
  return merge_intervals(std::move(raw));
}

CoverageReport assemble(const Network& net,
                        const std::vector<std::vector<std::pair<double, double>>>&
                            merged_by_edge) {
  CoverageReport rep;
  rep.total_weighted_length = total_weighted_length(net);
  for (size_t e = 0; e < net.edges.size(); ++e) {
    const double wl = net.edge_wlength(static_cast<int>(e)) *
                      merged_measure(merged_by_edge[e]);
    rep.per_edge[net.edges[e].id] = wl;
    rep.covered_weighted_length += wl;
  }
  rep.fraction = rep.total_weighted_length > 0.0
                     ? rep.covered_weighted_length / rep.total_weighted_length
                     : 0.0;
  return rep;
}

}  // namespace

Placement make_placement(const Network& net, std::vector<Device> devices) {
  Placement p;
  p.devices = std::move(devices);
  const int m = static_cast<int>(net.edges.size());
  std::vector<std::vector<std::pair<double, double>>> merged(
      static_cast<size_t>(m));
#pragma omp parallel for schedule(dynamic, 8) \
    if (m * static_cast<int>(p.devices.size()) > 8192)
  for (int e = 0; e < m; ++e)
    merged[static_cast<size_t>(e)] = merged_for_edge(net, e, p.devices);
  for (int e = 0; e < m; ++e)
    p.per_edge_intervals[net.edges[static_cast<size_t>(e)].id] =
        std::move(merged[static_cast<size_t>(e)]);
  return p;
}

CoverageReport evaluate(const Network& net, std::span<const Device> devices) {
  const int m = static_cast<int>(net.edges.size());
  // below ~8k ball/segment tests the fork-join overhead wins
  if (m * static_cast<int>(devices.size()) <= 8192)
    return evaluate_serial(net, devices);
  std::vector<std::vector<std::pair<double, double>>> merged(
      static_cast<size_t>(m));
#pragma omp parallel for schedule(dynamic, 8)
  for (int e = 0; e < m; ++e)
    merged[static_cast<size_t>(e)] = merged_for_edge(net, e, devices);
  return assemble(net, merged);
}

CoverageReport evaluate_serial(const Network& net,
                               std::span<const Device> devices) {
  const int m = static_cast<int>(net.edges.size());
  std::vector<std::vector<std::pair<double, double>>> merged(
      static_cast<size_t>(m));
  for (int e = 0; e < m; ++e)
    merged[static_cast<size_t>(e)] = merged_for_edge(net, e, devices);
  return assemble(net, merged);
}

}  // namespace netcover
