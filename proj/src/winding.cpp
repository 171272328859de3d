#include "coho1/winding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace coho1 {

namespace {

inline double turn(const Pt2& a, const Pt2& b) {
  return std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
}

inline double norm(const Pt2& a) { return std::hypot(a[0], a[1]); }

constexpr double kTurnLimit = M_PI - 1e-9;

void append_subdivided(std::vector<Pt2>& out, const Pt2& a, const Pt2& b, int depth) {
  const double t = turn(a, b);
  if (std::abs(t) < M_PI / 2 || depth > 24) {
    out.push_back(b);
    return;
  }
  // Circular-arc interpolant: half the angle, geometric-mean radius.
  const double ang = std::atan2(a[1], a[0]) + 0.5 * t;
  const double r = std::sqrt(norm(a) * norm(b));
  const Pt2 mid{r * std::cos(ang), r * std::sin(ang)};
  append_subdivided(out, a, mid, depth + 1);
  append_subdivided(out, mid, b, depth + 1);
}

}  // namespace

double winding_angle(const PlanarCurve& c) {
  const auto& v = c.vertices;
  if (v.size() < 2) return 0.0;
  const size_t last = v.size() - 1;
  for (size_t i = 0; i < v.size(); ++i) {
    const bool is_final_origin = c.ends_at_origin && i == last;
    if (!is_final_origin && v[i][0] == 0.0 && v[i][1] == 0.0)
      fail(errc::origin_vertex, "vertex " + std::to_string(i) + " at the origin");
  }
  const size_t stop = c.ends_at_origin ? last : v.size();
  double theta = 0.0;
  for (size_t i = 0; i + 1 < stop; ++i) {
    const double t = turn(v[i], v[i + 1]);
    if (std::abs(t) >= kTurnLimit) {
      if (!c.dense_producer)
        fail(errc::ambiguous_unwrap,
             "turn of magnitude ~pi between vertices " + std::to_string(i) + " and " +
                 std::to_string(i + 1));
      std::vector<Pt2> fine{v[i]};
      append_subdivided(fine, v[i], v[i + 1], 0);
      for (size_t k = 0; k + 1 < fine.size(); ++k) theta += turn(fine[k], fine[k + 1]);
      continue;
    }
    theta += t;
  }
  return theta;
}

WindingLimitReport winding_limit(const PlanarCurve& c, std::vector<double> radii) {
  if (!c.ends_at_origin || c.vertices.size() < 2)
    fail(errc::invalid_config, "winding_limit needs an origin-bound curve");
  if (radii.empty())
    for (int k = 0; k <= 6; ++k) radii.push_back(std::pow(10.0, -2 - k));
  WindingLimitReport rep;
  for (double r : radii) {
    // Truncate where the curve first enters the disk of radius r, with the
    // entry point interpolated onto the circle.
    PlanarCurve trunc;
    trunc.dense_producer = c.dense_producer;
    const auto& v = c.vertices;
    trunc.vertices.push_back(v.front());
    bool entered = false;
    for (size_t i = 1; i < v.size() && !entered; ++i) {
      if (norm(v[i]) >= r) {
        trunc.vertices.push_back(v[i]);
        continue;
      }
      const Pt2& a = v[i - 1];
      const Pt2& b = v[i];
      // |a + t (b-a)| = r, take the root in (0,1].
      const double dx = b[0] - a[0], dy = b[1] - a[1];
      const double aa = dx * dx + dy * dy;
      const double bb = 2 * (a[0] * dx + a[1] * dy);
      const double cc = a[0] * a[0] + a[1] * a[1] - r * r;
      const double disc = std::max(0.0, bb * bb - 4 * aa * cc);
      // first entry into the disk: the smaller root of |a + t(b-a)| = r
      const double t = aa > 0 ? (-bb - std::sqrt(disc)) / (2 * aa) : 0.0;
      trunc.vertices.push_back({a[0] + t * dx, a[1] + t * dy});
      entered = true;
    }
    rep.radii.push_back(r);
    rep.theta.push_back(winding_angle(trunc));
  }
  return rep;
}

int min_intersections(double theta0) {
  const double k = std::ceil(theta0 / (2.0 * M_PI));
  return std::max(0, int(k) - 1);
}

int orient2d(const Pt2& p, const Pt2& q, const Pt2& r) {
  const double detl = (q[0] - p[0]) * (r[1] - p[1]);
  const double detr = (q[1] - p[1]) * (r[0] - p[0]);
  const double det = detl - detr;
  const double bound = 3.33e-16 * (std::abs(detl) + std::abs(detr));
  if (det > bound) return 1;
  if (det < -bound) return -1;
  const long double dl = (static_cast<long double>(q[0]) - p[0]) *
                         (static_cast<long double>(r[1]) - p[1]);
  const long double dr = (static_cast<long double>(q[1]) - p[1]) *
                         (static_cast<long double>(r[0]) - p[0]);
  const long double dd = dl - dr;
  const long double lbound = 1.1e-19L * (std::abs(dl) + std::abs(dr));
  if (dd > lbound) return 1;
  if (dd < -lbound) return -1;
  return 0;
}

namespace {

bool segment_cross(const Pt2& p1, const Pt2& p2, const Pt2& q1, const Pt2& q2,
                   bool include_tangential, Pt2& out) {
  const int o1 = orient2d(p1, p2, q1);
  const int o2 = orient2d(p1, p2, q2);
  const int o3 = orient2d(q1, q2, p1);
  const int o4 = orient2d(q1, q2, p2);
  const bool proper = (o1 * o2 < 0) && (o3 * o4 < 0);
  if (!proper) {
    if (!include_tangential) return false;
    // Tangential: an endpoint lying on the other segment.
    auto on_segment = [](const Pt2& a, const Pt2& b, const Pt2& x) {
      if (orient2d(a, b, x) != 0) return false;
      return std::min(a[0], b[0]) - 1e-14 <= x[0] && x[0] <= std::max(a[0], b[0]) + 1e-14 &&
             std::min(a[1], b[1]) - 1e-14 <= x[1] && x[1] <= std::max(a[1], b[1]) + 1e-14;
    };
    if (o1 == 0 && on_segment(p1, p2, q1)) { out = q1; return true; }
    if (o2 == 0 && on_segment(p1, p2, q2)) { out = q2; return true; }
    if (o3 == 0 && on_segment(q1, q2, p1)) { out = p1; return true; }
    if (o4 == 0 && on_segment(q1, q2, p2)) { out = p2; return true; }
    return false;
  }
  const double rx = p2[0] - p1[0], ry = p2[1] - p1[1];
  const double sx = q2[0] - q1[0], sy = q2[1] - q1[1];
  const double denom = rx * sy - ry * sx;
  const double t = ((q1[0] - p1[0]) * sy - (q1[1] - p1[1]) * sx) / denom;
  out = {p1[0] + t * rx, p1[1] + t * ry};
  return true;
}

std::vector<Pt2> dedup_sorted(std::vector<Pt2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Pt2& a, const Pt2& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  std::vector<Pt2> out;
  for (const auto& p : pts) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (std::abs((*it)[0] - p[0]) > 1e-10) break;
      if (std::abs((*it)[1] - p[1]) <= 1e-10) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Pt2> brute_intersections_serial(const PlanarCurve& a, const PlanarCurve& b,
                                            bool include_tangential) {
  std::vector<Pt2> pts;
  for (size_t i = 0; i + 1 < a.vertices.size(); ++i)
    for (size_t k = 0; k + 1 < b.vertices.size(); ++k) {
      Pt2 x;
      if (segment_cross(a.vertices[i], a.vertices[i + 1], b.vertices[k], b.vertices[k + 1],
                        include_tangential, x))
        pts.push_back(x);
    }
  return dedup_sorted(std::move(pts));
}

std::vector<Pt2> brute_intersections(const PlanarCurve& a, const PlanarCurve& b,
                                     bool include_tangential) {
  const size_t na = a.vertices.size() >= 2 ? a.vertices.size() - 1 : 0;
  std::vector<std::vector<Pt2>> rows(na);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 16)
#endif
  for (long i = 0; i < long(na); ++i) {
    auto& row = rows[i];
    for (size_t k = 0; k + 1 < b.vertices.size(); ++k) {
      Pt2 x;
      if (segment_cross(a.vertices[i], a.vertices[i + 1], b.vertices[k], b.vertices[k + 1],
                        include_tangential, x))
        row.push_back(x);
    }
  }
  std::vector<Pt2> pts;
  for (const auto& row : rows) pts.insert(pts.end(), row.begin(), row.end());
  return dedup_sorted(std::move(pts));
}

bool has_self_intersections(const PlanarCurve& c) {
  const auto& v = c.vertices;
  if (v.size() < 3) return false;
  for (size_t i = 0; i + 1 < v.size(); ++i)
    for (size_t k = i + 2; k + 1 < v.size(); ++k) {
      Pt2 x;
      if (segment_cross(v[i], v[i + 1], v[k], v[k + 1], false, x)) return true;
    }
  return false;
}

}  // namespace coho1
