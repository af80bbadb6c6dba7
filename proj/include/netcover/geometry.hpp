#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

namespace netcover {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

enum class Norm { L1, L2, LInf };

std::string norm_name(Norm n);
Norm norm_from_name(const std::string& name);

// Coverage area of one device: a norm ball of radius R around its center.
struct Ball {
  Norm norm = Norm::L2;
  double radius = 1.0;
};

struct Segment {
  Point a;
  Point b;
};

inline Point point_at(const Segment& s, double lam) {
  return {s.a.x + lam * (s.b.x - s.a.x), s.a.y + lam * (s.b.y - s.a.y)};
}

double length(const Segment& s);
bool is_degenerate(const Segment& s);

double norm_dist(const Point& p, const Point& q, Norm norm);

struct PointSegResult {
  double distance;  // Euclidean distance to the closest segment point
  double mu;        // projection parameter clamped to [0,1]
};
// Closest approach of q to a non-degenerate segment (Euclidean).
PointSegResult point_segment_distance(const Point& q, const Segment& s);

// Euclidean distance between two non-degenerate segments; 0 when they cross.
double segment_segment_distance(const Segment& s1, const Segment& s2);

struct ClosestPair {
  double distance;
  Point on_first;
  Point on_second;
};
ClosestPair segment_closest_points(const Segment& s1, const Segment& s2);

struct NormPointSegResult {
  double distance;  // measured in the requested norm
  double lambda;    // attaining parameter in [0,1]
};
// Exact minimum of lambda -> ||q - point_at(s,lambda)||_norm over [0,1].
NormPointSegResult point_segment_norm_distance(const Point& q, const Segment& s,
                                               Norm norm);

// Parameter range [lo,hi] of the part of s inside the ball centered at
// `center`, or nullopt when they do not meet. lo == hi marks a tangency.
std::optional<std::pair<double, double>> ball_segment_intersection(
    const Point& center, const Ball& ball, const Segment& s);

// True iff a device at q touches segment s, i.e. q lies in the Minkowski
// sum of s with the ball (min norm-distance from q to s is at most R).
bool in_stadium(const Point& q, const Segment& s, const Ball& ball);

struct CoverSlack {
  double slack;  // min over X of max_i dist(X, seg_i), minus R
  Point center;  // attaining point
};

// Smallest uniform radius increase that lets a single point reach every
// segment: slack <= 0 iff one device of radius R can touch them all.
// Convex minimax solved by subgradient descent with Polyak steps and
// deterministic random restarts.
CoverSlack min_cover_slack(std::span<const Segment> segs, double R, Norm norm,
                           double tol = 1e-7, int max_iter = 50000,
                           int restarts = 10);

}  // namespace netcover
