#include "netcover/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "netcover/rng.hpp"

namespace netcover {

namespace {
constexpr double kTangencyTol = 1e-12;

double dot(const Point& p, const Point& q) { return p.x * q.x + p.y * q.y; }

Point sub(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
}  // namespace

std::string norm_name(Norm n) {
  switch (n) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::LInf: return "linf";
  }
  return "l2";
}

Norm norm_from_name(const std::string& name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  if (name == "linf") return Norm::LInf;
  throw std::invalid_argument("unknown norm: " + name);
}

double length(const Segment& s) {
  return std::hypot(s.b.x - s.a.x, s.b.y - s.a.y);
}

bool is_degenerate(const Segment& s) { return length(s) == 0.0; }

double norm_dist(const Point& p, const Point& q, Norm norm) {
  const double dx = std::abs(p.x - q.x);
  const double dy = std::abs(p.y - q.y);
  switch (norm) {
    case Norm::L1: return dx + dy;
    case Norm::L2: return std::hypot(dx, dy);
    case Norm::LInf: return std::max(dx, dy);
  }
  return 0.0;
}

PointSegResult point_segment_distance(const Point& q, const Segment& s) {
  const Point d = sub(s.b, s.a);
  const double len2 = dot(d, d);
  if (len2 == 0.0) throw std::invalid_argument("degenerate segment");
  const double mu = dot(sub(q, s.a), d) / len2;
  const double mu_hat = std::min(std::max(0.0, mu), 1.0);
  const Point closest = point_at(s, mu_hat);
  return {std::hypot(q.x - closest.x, q.y - closest.y), mu_hat};
}

ClosestPair segment_closest_points(const Segment& s1, const Segment& s2) {
  if (is_degenerate(s1) || is_degenerate(s2))
    throw std::invalid_argument("degenerate segment");
  const Point d1 = sub(s1.b, s1.a);
  const Point d2 = sub(s2.b, s2.a);
  const double cross = d1.x * d2.y - d1.y * d2.x;
  const double scale = length(s1) * length(s2);
  if (std::abs(cross) > 1e-14 * scale) {
    // Proper line crossing: check whether it falls inside both segments.
    const double rx = s2.a.x - s1.a.x;
    const double ry = s2.a.y - s1.a.y;
    const double t = (rx * d2.y - ry * d2.x) / cross;
    const double u = (rx * d1.y - ry * d1.x) / cross;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
      const Point p = point_at(s1, t);
      return {0.0, p, p};
    }
  }
  // Otherwise the minimum is attained at a segment endpoint.
  ClosestPair best{std::numeric_limits<double>::infinity(), {}, {}};
  auto consider = [&](const Point& q, const Segment& s, bool q_on_first) {
    const PointSegResult r = point_segment_distance(q, s);
    if (r.distance < best.distance) {
      const Point c = point_at(s, r.mu);
      best.distance = r.distance;
      best.on_first = q_on_first ? q : c;
      best.on_second = q_on_first ? c : q;
    }
  };
  consider(s2.a, s1, false);
  consider(s2.b, s1, false);
  consider(s1.a, s2, true);
  consider(s1.b, s2, true);
  return best;
}

double segment_segment_distance(const Segment& s1, const Segment& s2) {
  return segment_closest_points(s1, s2).distance;
}

NormPointSegResult point_segment_norm_distance(const Point& q, const Segment& s,
                                               Norm norm) {
  if (norm == Norm::L2) {
    const PointSegResult r = point_segment_distance(q, s);
    return {r.distance, r.mu};
  }
  // v(lam) = q - (a + lam d); both norms are piecewise linear in lam, so
  // the minimum over [0,1] sits at an interval end or a breakpoint.
  const Point d = sub(s.b, s.a);
  const Point v0 = sub(q, s.a);
  std::array<double, 6> cand{0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  size_t n = 2;
  if (d.x != 0.0) cand[n++] = v0.x / d.x;
  if (d.y != 0.0) cand[n++] = v0.y / d.y;
  if (norm == Norm::LInf) {
    // |vx| = |vy| crossings
    if (d.x - d.y != 0.0) cand[n++] = (v0.x - v0.y) / (d.x - d.y);
    if (d.x + d.y != 0.0) cand[n++] = (v0.x + v0.y) / (d.x + d.y);
  }
  NormPointSegResult best{std::numeric_limits<double>::infinity(), 0.0};
  for (size_t i = 0; i < n; ++i) {
    const double lam = std::min(std::max(0.0, cand[i]), 1.0);
    const double f = norm_dist(q, point_at(s, lam), norm);
    if (f < best.distance || (f == best.distance && lam < best.lambda))
      best = {f, lam};
  }
  return best;
}

namespace {

std::optional<std::pair<double, double>> disk_segment_intersection(
    const Point& c, double R, const Segment& s) {
  const double L = length(s);
  const Point u{(s.b.x - s.a.x) / L, (s.b.y - s.a.y) / L};
  const Point w = sub(s.a, c);
  const double b_half = dot(u, w);
  const double c0 = dot(w, w) - R * R;
  const double disc = b_half * b_half - c0;
  if (disc < -kTangencyTol) return std::nullopt;
  if (disc <= kTangencyTol) {
    const double t = -b_half;
    if (t < 0.0 || t > L) return std::nullopt;
    return std::make_pair(t / L, t / L);
  }
  const double root = std::sqrt(disc);
  const double lo = std::max(-b_half - root, 0.0);
  const double hi = std::min(-b_half + root, L);
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo / L, hi / L);
}

std::optional<std::pair<double, double>> polytope_segment_intersection(
    const Point& c, const Ball& ball, const Segment& s) {
  // Clip the segment parametrically against the four ball half-planes.
  struct HalfPlane {
    double nx, ny;
  };
  std::array<HalfPlane, 4> planes =
      ball.norm == Norm::L1
          ? std::array<HalfPlane, 4>{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}}
          : std::array<HalfPlane, 4>{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
  const Point d = sub(s.b, s.a);
  double lo = 0.0, hi = 1.0;
  for (const HalfPlane& h : planes) {
    const double rhs = ball.radius + h.nx * c.x + h.ny * c.y;
    const double num = rhs - (h.nx * s.a.x + h.ny * s.a.y);
    const double den = h.nx * d.x + h.ny * d.y;
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    if (den > 0.0)
      hi = std::min(hi, num / den);
    else
      lo = std::max(lo, num / den);
  }
  if (lo > hi) {
    if (lo - hi <= kTangencyTol) {
      const double mid = 0.5 * (lo + hi);
      return std::make_pair(mid, mid);
    }
    return std::nullopt;
  }
  return std::make_pair(lo, hi);
}

}  // namespace

std::optional<std::pair<double, double>> ball_segment_intersection(
    const Point& center, const Ball& ball, const Segment& s) {
  if (is_degenerate(s)) throw std::invalid_argument("degenerate segment");
  if (ball.norm == Norm::L2)
    return disk_segment_intersection(center, ball.radius, s);
  return polytope_segment_intersection(center, ball, s);
}

bool in_stadium(const Point& q, const Segment& s, const Ball& ball) {
  double d;
  if (is_degenerate(s))
    d = norm_dist(q, s.a, ball.norm);
  else
    d = point_segment_norm_distance(q, s, ball.norm).distance;
  return d <= ball.radius + kTangencyTol;
}

namespace {

struct Eval {
  double value;
  Point grad;  // a subgradient of the max-distance function
};

Eval eval_minimax(const Point& x, std::span<const Segment> segs, Norm norm) {
  Eval e{-1.0, {0.0, 0.0}};
  for (const Segment& s : segs) {
    double d;
    Point closest;
    if (is_degenerate(s)) {
      d = norm_dist(x, s.a, norm);
      closest = s.a;
    } else {
      const NormPointSegResult r = point_segment_norm_distance(x, s, norm);
      d = r.distance;
      closest = point_at(s, r.lambda);
    }
    if (d > e.value) {
      e.value = d;
      const double vx = x.x - closest.x;
      const double vy = x.y - closest.y;
      switch (norm) {
        case Norm::L2:
          e.grad = d > 0 ? Point{vx / d, vy / d} : Point{0, 0};
          break;
        case Norm::L1:
          e.grad = {vx > 0 ? 1.0 : (vx < 0 ? -1.0 : 0.0),
                    vy > 0 ? 1.0 : (vy < 0 ? -1.0 : 0.0)};
          break;
        case Norm::LInf:
          if (std::abs(vx) >= std::abs(vy))
            e.grad = {vx >= 0 ? 1.0 : -1.0, 0.0};
          else
            e.grad = {0.0, vy >= 0 ? 1.0 : -1.0};
          break;
      }
    }
  }
  return e;
}

}  // namespace

CoverSlack min_cover_slack(std::span<const Segment> segs, double R, Norm norm,
                           double tol, int max_iter, int restarts) {
  if (segs.empty()) throw std::invalid_argument("empty segment list");

  double min_x = segs[0].a.x, max_x = min_x, min_y = segs[0].a.y, max_y = min_y;
  Point centroid{0, 0};
  for (const Segment& s : segs) {
    for (const Point& p : {s.a, s.b}) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
      centroid.x += p.x;
      centroid.y += p.y;
    }
  }
  centroid.x /= 2.0 * static_cast<double>(segs.size());
  centroid.y /= 2.0 * static_cast<double>(segs.size());
  const double diag =
      std::hypot(max_x - min_x, max_y - min_y) + 2.0 * std::max(R, 1.0);

  double best_f = std::numeric_limits<double>::infinity();
  Point best_x = centroid;
  SplitMix64 rng(0x6e65746331ULL);

  for (int r = 0; r < restarts; ++r) {
    Point x = r == 0 ? centroid
                     : Point{rng.uniform(min_x - R, max_x + R),
                             rng.uniform(min_y - R, max_y + R)};
    Eval e = eval_minimax(x, segs, norm);
    double f_rec = e.value;
    Point x_rec = x;
    // Polyak steps against an adaptive target level f_rec - delta; the
    // travel budget halves delta once the path wanders without progress.
    double delta = std::max(0.05 * f_rec, 10.0 * tol);
    double travel = 0.0;
    const double budget = 2.0 * diag;
    for (int it = 0; it < max_iter; ++it) {
      if (f_rec <= tol * 1e-3) break;  // max distance ~0: global optimum
      const double g2 = e.grad.x * e.grad.x + e.grad.y * e.grad.y;
      if (g2 == 0.0) break;
      const double step = (e.value - (f_rec - delta)) / g2;
      x.x -= step * e.grad.x;
      x.y -= step * e.grad.y;
      travel += std::abs(step) * std::sqrt(g2);
      e = eval_minimax(x, segs, norm);
      if (e.value < f_rec - 1e-14) {
        f_rec = e.value;
        x_rec = x;
        travel = 0.0;
      }
      if (travel > budget) {
        delta *= 0.5;
        travel = 0.0;
        x = x_rec;
        e = eval_minimax(x, segs, norm);
        if (delta < tol) break;
      }
    }
    if (f_rec < best_f - 1e-15 ||
        (std::abs(f_rec - best_f) <= 1e-15 &&
         (x_rec.x < best_x.x || (x_rec.x == best_x.x && x_rec.y < best_x.y)))) {
      best_f = f_rec;
      best_x = x_rec;
    }
  }
  return {best_f - R, best_x};
}

}  // namespace netcover
