#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qsteer {

using Point2 = Eigen::Vector2d;

// Annular shell a < |p - center| < R hiding the disk |p - center| < a.
// Lengths are in units of 1/k; the ray speed is v = omega / k, so the
// shell is phase-matched: every straight probe line y = y1 spends the
// free-space time inside [-L, L] regardless of y1.
struct CloakGeometry {
  CloakGeometry(double inner_radius, double outer_radius, double half_span,
                double speed, Point2 center = Point2::Zero());

  double inner_radius;   // a
  double outer_radius;   // R
  double half_span;      // L >= R
  double speed;          // v > 0
  Point2 center;
};

// Time the straight line y = y1 spends inside the outer disk:
// 2 sqrt(R^2 - y1^2) / v for |y1| < R, else 0. |y1| <= L required.
double dwell_time(const CloakGeometry& geom, double impact_parameter);

// Time to cross the full aperture, 2L / v: identical for every line,
// which is what hides the shell from timing alone.
double total_traversal_time(const CloakGeometry& geom, double impact_parameter);

// r' = a + r (R - a) / R at fixed angle: bijection (0, R] -> (a, R]
// opening the hidden disk. The center itself maps to the +x point of
// the inner rim by convention. Points outside radius R are rejected.
Point2 radial_map(const CloakGeometry& geom, const Point2& p);
Point2 radial_map_inverse(const CloakGeometry& geom, const Point2& p);

struct Trajectory {
  double impact_parameter = 0.0;
  double dwell = 0.0;  // dwell_time of the carrying line
  // Polyline: (-L, y1), entry, mapped chord samples, exit, (L, y1).
  // A line that misses the shell keeps the same point count, evenly
  // spaced and collinear.
  std::vector<Point2> points;
};

// samples_inside interior stations are mapped through radial_map; the
// station spacing is uniform in the straight-line parameter. y1 = 0 is
// the separatrix (the image splits around the hidden disk) and is
// rejected; so is |y1| > L.
Trajectory trajectory(const CloakGeometry& geom, double impact_parameter,
                      int samples_inside);

// Unit tangent of the deformed ray field at p: +x outside radius R,
// the radial_map pushforward of +x inside the annulus. Points strictly
// inside the hidden disk carry no field and are rejected, as is the
// on-axis inner-rim point where the two separatrix branches meet.
Point2 current_direction(const CloakGeometry& geom, const Point2& p);

}  // namespace qsteer
