#pragma once

// Hyperbolic polyhedra in the Klein model bounded by the planes spanned by
// the circles of a spherical pattern.

#include "cpat/complex.hpp"
#include "cpat/conditions.hpp"
#include "cpat/solver.hpp"
#include "cpat/sphere.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cpat {

/// {x : x . normal <= offset}; the boundary plane meets the sphere at infinity
/// in the circle with center `normal` and radius arccos(offset).
struct HalfSpace {
    Vec3 normal = Vec3(0, 0, 1);
    double offset = 0.0;

    [[nodiscard]] double slack(const Vec3& x) const { return offset - x.dot(normal); }
};

struct HyperbolicPolyhedron {
    /// One per pattern vertex.
    std::vector<HalfSpace> half_spaces;
    /// One per triangulation face, Klein coordinates.
    std::vector<Vec3> vertices;
    /// Face i is the cycle of vertices on plane i, counter-clockwise seen from
    /// outside.
    CellComplex complex;
    /// Polyhedron edges (pairs of vertex ids), sorted.
    std::vector<Edge> edges;
    /// Triangulation edge (pair of planes) carrying each polyhedron edge.
    std::vector<int> edge_planes;
    /// Interior dihedral angle along each edge.
    std::vector<double> dihedral;
    /// Largest |q| over the vertices.
    double max_vertex_norm = 0.0;
    bool has_ideal_vertices = false;
};

struct PolyhedronOptions {
    /// Report vertices on the sphere at infinity instead of throwing.
    bool allow_ideal = false;
    double max_condition = 1e12;
    /// Distance to a plane below which a vertex counts as lying on it.
    double incidence_tol = 1e-9;
};

/// Throws VertexOutsideBall, SingularTriple, InvalidInput.
HyperbolicPolyhedron build_polyhedron(const Triangulation& t, const SphericalConfiguration& cfg,
                                      const PolyhedronOptions& opts = {});

struct PolyhedronCheck {
    double max_dihedral_error = 0.0;
    /// Disagreement between the two dihedral formulas.
    double max_formula_gap = 0.0;
    /// Smallest half-space slack over vertices and planes not through them.
    double convexity_slack = 0.0;
    bool convex = false;
    bool trivalent = false;
    bool compact = false;
    /// Face lattice equals the combinatorial dual of the triangulation.
    bool matches_dual = false;
    bool ok = false;
};

PolyhedronCheck check_polyhedron(const HyperbolicPolyhedron& q, const Triangulation& t,
                                 const AngleAssignment& theta, double tol = 1e-9);

/// Wavefront OBJ text (1-based indices, vertices in id order).
std::string export_obj(const HyperbolicPolyhedron& q);

}  // namespace cpat
