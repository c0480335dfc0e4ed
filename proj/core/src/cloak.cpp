#include "qsteer/cloak.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsteer {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Slack for points computed to sit on the outer boundary.
constexpr double kBoundaryTol = 1e-9;

}  // namespace

CloakGeometry::CloakGeometry(double inner_radius_, double outer_radius_,
                             double half_span_, double speed_, Point2 center_)
    : inner_radius(inner_radius_),
      outer_radius(outer_radius_),
      half_span(half_span_),
      speed(speed_),
      center(std::move(center_)) {
  require(inner_radius > 0.0, "CloakGeometry: inner radius must be > 0");
  require(inner_radius < outer_radius,
          "CloakGeometry: inner radius must be < outer radius");
  require(outer_radius <= half_span,
          "CloakGeometry: half span must be >= outer radius");
  require(speed > 0.0, "CloakGeometry: speed must be > 0");
}

double dwell_time(const CloakGeometry& geom, double impact_parameter) {
  require(std::abs(impact_parameter) <= geom.half_span,
          "dwell_time: impact parameter outside the aperture");
  const double r = geom.outer_radius;
  if (std::abs(impact_parameter) >= r) return 0.0;
  return 2.0 * std::sqrt(r * r - impact_parameter * impact_parameter) /
         geom.speed;
}

double total_traversal_time(const CloakGeometry& geom,
                            double impact_parameter) {
  require(std::abs(impact_parameter) <= geom.half_span,
          "total_traversal_time: impact parameter outside the aperture");
  return 2.0 * geom.half_span / geom.speed;
}

Point2 radial_map(const CloakGeometry& geom, const Point2& p) {
  const Point2 q = p - geom.center;
  const double r = std::hypot(q.x(), q.y());
  require(r <= geom.outer_radius + kBoundaryTol,
          "radial_map: point outside the shell");
  if (r == 0.0) return geom.center + Point2(geom.inner_radius, 0.0);
  // r' = a + r (R - a) / R applied as a pure scaling, so mirror-image
  // inputs map to exactly mirrored outputs.
  const double scale =
      geom.inner_radius / r + (geom.outer_radius - geom.inner_radius) / geom.outer_radius;
  return geom.center + q * scale;
}

Point2 radial_map_inverse(const CloakGeometry& geom, const Point2& p) {
  const Point2 q = p - geom.center;
  const double rp = std::hypot(q.x(), q.y());
  require(rp >= geom.inner_radius - kBoundaryTol,
          "radial_map_inverse: point inside the hidden disk");
  require(rp <= geom.outer_radius + kBoundaryTol,
          "radial_map_inverse: point outside the shell");
  const double r = std::max(0.0, rp - geom.inner_radius) * geom.outer_radius /
                   (geom.outer_radius - geom.inner_radius);
  if (rp == 0.0) return geom.center;
  return geom.center + q * (r / rp);
}

Trajectory trajectory(const CloakGeometry& geom, double impact_parameter,
                      int samples_inside) {
  require(std::abs(impact_parameter) <= geom.half_span,
          "trajectory: impact parameter outside the aperture");
  require(impact_parameter != 0.0,
          "trajectory: y1 = 0 is the separatrix; the deformed ray is not "
          "defined through the hidden disk");
  require(samples_inside >= 1, "trajectory: samples_inside must be >= 1");

  Trajectory out;
  out.impact_parameter = impact_parameter;
  out.dwell = dwell_time(geom, impact_parameter);
  const double y1 = impact_parameter;
  const double l = geom.half_span;
  const int total = samples_inside + 4;
  out.points.reserve(static_cast<std::size_t>(total));

  const double r = geom.outer_radius;
  if (std::abs(y1) >= r) {
    // Clear miss: evenly spaced straight samples, same point count.
    for (int j = 0; j < total; ++j) {
      const double u = static_cast<double>(j) / static_cast<double>(total - 1);
      out.points.emplace_back(geom.center.x() - l + 2.0 * l * u,
                              geom.center.y() + y1);
    }
    return out;
  }

  const double xc = std::sqrt(r * r - y1 * y1);  // half chord
  out.points.emplace_back(geom.center.x() - l, geom.center.y() + y1);
  out.points.emplace_back(geom.center.x() - xc, geom.center.y() + y1);
  for (int j = 0; j < samples_inside; ++j) {
    const double u = static_cast<double>(j + 1) /
                     static_cast<double>(samples_inside + 1);
    const double x = xc * (2.0 * u - 1.0);
    out.points.push_back(
        radial_map(geom, Point2(geom.center.x() + x, geom.center.y() + y1)));
  }
  out.points.emplace_back(geom.center.x() + xc, geom.center.y() + y1);
  out.points.emplace_back(geom.center.x() + l, geom.center.y() + y1);
  return out;
}

Point2 current_direction(const CloakGeometry& geom, const Point2& p) {
  const Point2 q = p - geom.center;
  const double rp = std::hypot(q.x(), q.y());
  require(rp >= geom.inner_radius,
          "current_direction: point inside the hidden disk carries no field");
  if (rp > geom.outer_radius) return Point2(1.0, 0.0);

  // Pushforward of +x by the radial map at the preimage radius r0,
  // rescaled by r0 / a: d = (x_hat - q_hat q_hat.x) + (r0 c / a) x_hat
  // with c = (R - a) / R. The r0 -> 0 limit is the rim tangent.
  const double a = geom.inner_radius;
  const double c = (geom.outer_radius - a) / geom.outer_radius;
  const double r0 = std::max(0.0, rp - a) * geom.outer_radius /
                    (geom.outer_radius - a);
  const Point2 qhat = q / rp;
  Point2 d(1.0 - qhat.x() * qhat.x() + r0 * c / a, -qhat.x() * qhat.y());
  const double norm = std::hypot(d.x(), d.y());
  require(norm > 0.0,
          "current_direction: tangent undefined where the separatrix "
          "branches meet the inner rim");
  return d / norm;
}

}  // namespace qsteer
