#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace curvball::exact2d {

using P2 = Eigen::Vector2d;

enum class Degeneracy { None, Empty, SinglePoint, FullDisk };

// Boundary arc of circle `center` (index into ArcPolygon::centers), traversed
// counter-clockwise from angle `start` to `end` (end > start).
struct Arc {
  std::size_t center = 0;
  double start = 0.0;
  double end = 0.0;
};

// Intersection of congruent disks. For Degeneracy::None, `arcs` is the
// boundary in counter-clockwise order and vertices[i] is where arcs[i] starts.
struct ArcPolygon {
  std::vector<P2> centers;
  double radius = 0.0;
  std::vector<P2> vertices;
  std::vector<Arc> arcs;
  Degeneracy degenerate = Degeneracy::Empty;
  P2 point = P2::Zero();  // the lone point when degenerate == SinglePoint

  P2 arc_point(const Arc& a, double angle) const;
  bool contains(const P2& x, double tol = 1e-12) const;
};

ArcPolygon disk_polygon(std::span<const P2> centers, double r);

double arc_polygon_area(const ArcPolygon& a);

// Area of the intersection of two radius-r disks whose centres are delta apart.
double lens_area(double delta, double r);

}  // namespace curvball::exact2d
