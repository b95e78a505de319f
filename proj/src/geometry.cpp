#include "taptips/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "taptips/error.hpp"

namespace taptips {
namespace {

// z-component of (b - a) x (p - a); positive when p is left of a->b.
double orientation(Point a, Point b, Point p) {
  const Point ab = b - a;
  const Point ap = p - a;
  return ab.x * ap.y - ab.y * ap.x;
}

bool on_segment(Point a, Point b, Point p) {
  if (orientation(a, b, p) != 0.0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

bool is_finite(Point p) noexcept { return std::isfinite(p.x) && std::isfinite(p.y); }

void require_finite(Point p) {
  if (!is_finite(p)) throw GeometryError("non-finite coordinate");
}

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3) {
    throw GeometryError("polygon needs at least 3 vertices, got " + std::to_string(vertices_.size()));
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    require_finite(vertices_[i]);
    const Point next = vertices_[(i + 1) % vertices_.size()];
    if (vertices_[i] == next) {
      throw GeometryError("polygon has repeated consecutive vertex at index " + std::to_string(i));
    }
  }
}

Polygon Polygon::translated(Point offset) const {
  std::vector<Point> moved;
  moved.reserve(vertices_.size());
  for (const Point& v : vertices_) moved.push_back(v + offset);
  return Polygon(std::move(moved));
}

bool on_boundary(Point p, const Polygon& poly) {
  require_finite(p);
  const auto v = poly.vertices();
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    if (on_segment(v[j], v[i], p)) return true;
  }
  return false;
}

bool point_in_polygon(Point p, const Polygon& poly) {
  if (on_boundary(p, poly)) return true;

  // Crossing number against a ray towards +x. Half-open vertical spans keep
  // vertices on the ray from being counted twice.
  const auto v = poly.vertices();
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Point a = v[j];
    const Point b = v[i];
    if (a.y <= p.y && b.y > p.y) {
      if (orientation(a, b, p) > 0.0) inside = !inside;
    } else if (a.y > p.y && b.y <= p.y) {
      if (orientation(a, b, p) < 0.0) inside = !inside;
    }
  }
  return inside;
}

Box bounding_box(const Polygon& poly) {
  const auto v = poly.vertices();
  Box box{v.front(), v.front()};
  for (const Point& p : v) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
  }
  return box;
}

Point centroid(const Polygon& poly) {
  const auto v = poly.vertices();
  double twice_area = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const double cross = v[j].x * v[i].y - v[i].x * v[j].y;
    twice_area += cross;
    cx += (v[j].x + v[i].x) * cross;
    cy += (v[j].y + v[i].y) * cross;
  }
  if (twice_area == 0.0) {
    Point mean;
    for (const Point& p : v) mean = mean + p;
    return {mean.x / static_cast<double>(v.size()), mean.y / static_cast<double>(v.size())};
  }
  return {cx / (3.0 * twice_area), cy / (3.0 * twice_area)};
}

}  // namespace taptips
