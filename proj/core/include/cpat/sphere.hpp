#pragma once

// Geometry of round caps on the unit sphere, the stereographic chart and the
// Lorentz model of the space of caps.

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace cpat {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

inline constexpr double kPi = 3.14159265358979323846;

/// Closed spherical cap: points within angular distance `radius` of `center`.
struct Cap {
    Vec3 center = Vec3(0, 0, -1);
    double radius = 0.0;
};

/// Closed planar disk.
struct PlaneDisk {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
};

/// Angular distance between unit vectors, accurate for nearby and antipodal points.
double sphere_distance(const Vec3& a, const Vec3& b);

/// Inverse stereographic projection onto the unit sphere. The origin maps to
/// the south pole (0,0,-1), the unit circle to the equator, infinity to the
/// north pole. This chart carries the metric 2|dz|/(1+|z|^2).
Vec3 to_sphere(const Vec2& z);

/// Stereographic projection from the north pole; nullopt at the pole itself.
std::optional<Vec2> to_plane(const Vec3& p);

/// Image of a planar disk under to_sphere.
Cap lift_disk(const PlaneDisk& d);

bool cap_contains(const Cap& c, const Vec3& p, double eps = 0.0);

/// Closure of the complement of a cap.
Cap complement(const Cap& c);

/// Boundary-circle intersection points (0, 1 or 2 points).
std::vector<Vec3> circle_intersections(const Cap& a, const Cap& b, double eps = 1e-12);

/// Point on the boundary circle of c at parameter angle t.
Vec3 circle_point(const Cap& c, double t);

/// Unit tangent pair (e1, e2) with (e1, e2, n) right handed.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& n);

/// Point at distance `dist` from `from` along direction angle t in its tangent frame.
Vec3 offset_point(const Vec3& from, double dist, double t);

/// Place a point w at distances du from u and dv from v, on the side given by
/// `sign` of det(u, v, w). Returns nullopt when the distances are incompatible.
std::optional<Vec3> trilaterate(const Vec3& u, const Vec3& v, double du, double dv, int sign);

// --- Lorentz model ---------------------------------------------------------
// A cap (c, r) is the space-like unit vector m = (cos r, c) / sin r in R^{3,1}
// with form <x,y> = -x0 y0 + x1 y1 + x2 y2 + x3 y3.  The inversive distance of
// two caps is -<m_i, m_j>.

double lorentz_inner(const Vec4& a, const Vec4& b);
Vec4 cap_to_lorentz(const Cap& c);
Cap lorentz_to_cap(const Vec4& m);

/// Lorentz boost taking the future-unit time-like vector x to (1,0,0,0).
Eigen::Matrix4d boost_to_origin(const Vec4& x);

/// Moves the caps by the Mobius transformation that puts their Lorentz
/// barycentre (minimiser of sum <x, m_i>^2 on the hyperboloid) at the origin.
/// Symmetric configurations come out with equal radii.
std::vector<Cap> balance_caps(const std::vector<Cap>& caps);

}  // namespace cpat
