#pragma once

// Three-circle configurations: edge lengths, feasibility, inner angles,
// inversive distance and the disk relations used by verification.

#include "cpat/sphere.hpp"

#include <array>
#include <optional>
#include <vector>

namespace cpat {

enum class Mode { Spherical, Euclidean };

/// Radii and exterior angles of a triple. theta[i] is the angle between the
/// circles j and k (the pair opposite index i).
struct TripleSpec {
    Mode mode = Mode::Euclidean;
    std::array<double, 3> r{1, 1, 1};
    std::array<double, 3> theta{0, 0, 0};
};

struct Feasibility {
    bool feasible = false;
    double margin = 0.0;
};

struct TripleGeometry {
    /// l[i] is the distance between the centers of circles j and k.
    std::array<double, 3> l{};
    std::array<double, 3> alpha{};
    double margin = 0.0;
    bool feasible = false;
    /// lambda[i] = cos theta_i + cos theta_j cos theta_k.
    std::array<double, 3> lambda{};
    /// Sides of the triangle with inner angles theta, present when the angle
    /// sum exceeds pi and the triple satisfies the c1-style bounds.
    std::optional<std::array<double, 3>> phi;
};

inline constexpr double kClampEps = 1e-9;
inline constexpr double kGeomEps = 1e-10;

/// arccos with clamping inside kClampEps; throws DomainError beyond.
double checked_acos(double x);

/// Throws InvalidInput when radii or angles are outside the mode's domain.
void validate_spec(const TripleSpec& spec);

double edge_length(const TripleSpec& spec, int which);
std::array<double, 3> edge_lengths(const TripleSpec& spec);

/// Positivity quantity of the triple: spherical mode evaluates the expanded
/// polynomial in cos r and sin r (equal to the Gram determinant of the center
/// triangle); euclidean mode evaluates the expanded polynomial equal to four
/// times the squared area of the center triangle.
Feasibility feasibility(const TripleSpec& spec);

/// Inner angles of the center triangle. Throws Infeasible.
std::array<double, 3> inner_angles(const TripleSpec& spec);

TripleGeometry triple_geometry(const TripleSpec& spec);

/// Inner angle at the center of circle i only (used in the solver hot loops).
/// No validation, no feasibility check: returns NaN on infeasible input.
double inner_angle_at(Mode mode, double ri, double rj, double rk, double theta_i,
                      double theta_j, double theta_k);

/// Distance between the centers of two circles with radii rj, rk meeting at
/// exterior angle theta, without validation (NaN-free for valid inputs).
double center_distance(Mode mode, double rj, double rk, double theta);

/// Euclidean inversive distance. Points are planar.
double inversive_distance(const Vec2& ci, double ri, const Vec2& cj, double rj);
/// Spherical inversive distance. Centers are unit vectors.
double inversive_distance(const Vec3& ci, double ri, const Vec3& cj, double rj);

/// Exterior angle for an inversive distance within [-1, 1] (clamped by
/// kClampEps); nullopt outside.
std::optional<double> exterior_angle(double inversive);

/// Distance between a realized inversive distance and a target angle. Near
/// tangency (sin theta < 1e-3) arccos loses half the digits, so there the
/// inversive residual |I - cos theta| is used instead. Infinity when the pair
/// does not meet at an angle.
double angle_error(double inversive, double theta);

enum class LimitKind {
    OneRadius,     // r_i -> 0, alpha_i -> pi - theta_i
    TwoRadii,      // r_i, r_j -> 0, alpha_i + alpha_j -> pi
    ThreeRadii,    // all radii -> 0, alpha sum -> pi
};

struct LimitSample {
    double scale = 0.0;
    std::array<double, 3> alpha{};
    double gap = 0.0;
};

struct LimitProfile {
    LimitKind kind = LimitKind::OneRadius;
    std::vector<LimitSample> samples;
    /// Gaps are non-increasing along the samples.
    bool monotone = true;
    double final_gap = 0.0;
};

/// Drives the designated radii of `base` to zero through `scales` (radii are
/// multiplied by each scale) and reports the distance to the limit.
LimitProfile limit_profile(const TripleSpec& base, LimitKind kind,
                           const std::vector<double>& scales);

// --- disk relations on the sphere -------------------------------------------

struct ContainmentCheck {
    /// D_i and D_j meet in a single point.
    bool single_point = false;
    /// D_i intersect D_j is inside D_k.
    bool contained = false;
    /// theta_i + theta_j and the bound it must reach when contained.
    double lhs = 0.0;
    double rhs = 0.0;
    bool boundaries_share_point = false;
    /// True when no assertion applies or the asserted relation holds.
    bool holds = true;
};

/// Lens containment relation for three mutually intersecting caps. Angles
/// follow the TripleSpec convention (theta_k is the angle between D_i, D_j).
/// Throws NotMutuallyIntersecting.
ContainmentCheck containment_angle_check(const std::array<Cap, 3>& disks,
                                         const std::array<double, 3>& theta,
                                         double tol = 1e-9);

/// Whether the three closed caps have a common point, decided from the
/// finitely many candidate points of the arrangement.
bool caps_have_common_point(const std::array<Cap, 3>& disks, double eps = kGeomEps);

/// Empty triple intersection test. Throws CoversSphere when the open caps
/// cover the sphere.
bool triple_intersection_empty(const std::array<Cap, 3>& disks, double eps = kGeomEps);

/// Centers of a triple laid out from its edge lengths: in the plane (z = 0)
/// with circle 0 at the origin, or on the sphere with circle 0 at the south
/// pole. Circle 1 lies on the positive x side; the triple is positively
/// oriented in the plane (negative determinant on the sphere).
std::array<Vec3, 3> place_triple(const TripleSpec& spec);

}  // namespace cpat
