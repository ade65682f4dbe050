#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

namespace uavsim {

struct Point2 {
  double x = 0;
  double y = 0;
};

struct Point3 {
  double x = 0;
  double y = 0;
  double z = 0;
};

inline double dist2(Point2 a, Point2 b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(Point2 a, Point2 b) { return std::sqrt(dist2(a, b)); }

inline double dist3(Point3 a, Point3 b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/* Closed disk (filled). */
struct Disk {
  Point2 center;
  double radius = 0;
};

/* Circle as a solved enclosure (center + radius). */
struct Circle {
  Point2 center;
  double radius = 0;
};

/* Cell centers live on a global lattice: origin + (i + 0.5) * cell_size.
   Anchoring to the lattice (not to each region) makes overlapping regions
   discretize to bitwise-identical centers, which the planner relies on for
   deduplication. */
struct GridSpec {
  double cell_size = 1.0;
  Point2 origin{0, 0};
};

struct CellIndex {
  long long ix = 0;
  long long iy = 0;
  bool operator==(const CellIndex&) const = default;
};

// tangency / containment residual tolerance
inline constexpr double kGeomTol = 1e-9;
// singular-matrix detection in the tangent-circle solve
inline constexpr double kSingularTol = 1e-12;

CellIndex cell_index_of(Point2 p, const GridSpec& grid);
Point2 cell_center(CellIndex idx, const GridSpec& grid);

/* Area of the intersection of two closed disks. Containment gives the full
   smaller-disk area, separation gives zero. */
double disk_overlap_area(const Disk& a, const Disk& b);

/* Smallest circle that contains all three disks and touches each internally
   (distance from center to disk w equals radius - r_w). Returns nullopt when
   no valid containing tangent circle exists, e.g. coincident centers or
   collinear equal-radius centers. */
std::optional<Circle> apollonius_circle(const Disk& a, const Disk& b, const Disk& c);

/* Minimum enclosing circle of a set of disks (Welzl-style randomized with
   direct support solvers of size 1..3). Throws std::invalid_argument on an
   empty input. */
Circle min_enclosing_disk(const std::vector<Disk>& disks);

/* Lattice cell centers inside a disk / inside the intersection of two disks,
   ordered row-major (ascending y, then ascending x). */
std::vector<Point2> discretize(const Disk& d, const GridSpec& grid);
std::vector<Point2> discretize(const Disk& a, const Disk& b, const GridSpec& grid);

/* dist(outer.center, inner.center) + inner.radius <= outer.radius + tol */
bool circle_contains_disk(const Circle& outer, const Disk& inner, double tol = kGeomTol);

} // namespace uavsim
