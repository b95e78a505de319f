#pragma once

#include <span>
#include <vector>

namespace taptips {

// Pixel-space position. Coordinates are real-valued so sub-pixel input
// positions survive unchanged.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

bool is_finite(Point p) noexcept;

// Throws GeometryError when either coordinate is NaN or infinite.
void require_finite(Point p);

struct Box {
  Point min;
  Point max;

  friend bool operator==(const Box&, const Box&) = default;
};

// Simple closed polygon. The constructor enforces the invariants: at least
// three vertices, all finite, and no two consecutive vertices equal (the
// closing edge from the last vertex back to the first counts).
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  std::span<const Point> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }

  Polygon translated(Point offset) const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point> vertices_;
};

// Even-odd containment. Points lying exactly on an edge or vertex count as
// inside. Throws GeometryError for a non-finite point.
bool point_in_polygon(Point p, const Polygon& poly);

// True when p lies exactly on one of the polygon's edges.
bool on_boundary(Point p, const Polygon& poly);

Box bounding_box(const Polygon& poly);

// Area-weighted centroid; falls back to the vertex mean for zero-area input.
Point centroid(const Polygon& poly);

}  // namespace taptips
