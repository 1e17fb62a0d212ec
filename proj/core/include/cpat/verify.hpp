#pragma once

// Post-hoc checks of a claimed circle pattern.

#include "cpat/complex.hpp"
#include "cpat/conditions.hpp"
#include "cpat/kernel.hpp"
#include "cpat/solver.hpp"

#include <optional>
#include <vector>

namespace cpat {

/// Circles labelled by the vertices of a triangulation. Planar patterns store
/// centers with z = 0; spherical ones store unit vectors.
struct CirclePattern {
    Mode mode = Mode::Euclidean;
    Triangulation triangulation;
    AngleAssignment theta;
    std::vector<Vec3> centers;
    std::vector<double> radii;
    /// Face hosting infinity (euclidean) or carrying the normalization (spherical).
    int marked_face = 0;

    static CirclePattern euclidean(const Triangulation& t, const AngleAssignment& theta,
                                   const EuclideanConfiguration& cfg);
    static CirclePattern spherical(const Triangulation& t, const AngleAssignment& theta,
                                   const SphericalConfiguration& cfg);

    [[nodiscard]] int size() const { return static_cast<int>(radii.size()); }
    /// Inversive distance of circles u and v in the pattern's own geometry.
    [[nodiscard]] double inversive(int u, int v) const;
    /// Circle v as a spherical cap (planar circles are lifted).
    [[nodiscard]] Cap cap(int v) const;
};

struct VerifyOptions {
    double tol_angle = 1e-8;
    /// Points sampled on each boundary circle.
    int boundary_samples = 4096;
    /// The disk interior is sampled on a grid x grid polar grid.
    int grid = 256;
    /// Pairs with inversive distance <= 1 + eps_contact are in contact.
    double eps_contact = 1e-9;
    /// Barycentric subdivision level for interstice sampling.
    int face_samples = 24;
    /// Global sample size on the sphere (spherical mode).
    int global_samples = 4096;
};

struct ContactGraph {
    std::vector<Edge> edges;
    std::vector<Edge> missing;
    std::vector<Edge> extra;
    std::vector<Edge> nested;
    /// Contact edges equal the triangulation's edges under the identity labelling.
    bool matches_skeleton = false;
};

ContactGraph contact_graph(const CirclePattern& p, double eps_contact = 1e-9);

struct FlowerResult {
    bool ok = true;
    std::optional<Vec3> witness;
};

/// Every sampled point of D_v lies in an open neighbouring disk or in the
/// open star of v.
FlowerResult flower_check(const CirclePattern& p, int v, const VerifyOptions& opts = {});

struct VerificationReport {
    double angle_max_err = 0.0;
    std::vector<Edge> angle_failures;

    bool contact_graph_ok = false;
    ContactGraph contact;

    bool non_adjacent_disjoint_ok = false;
    std::vector<Edge> offending_pairs;
    /// Smallest inversive distance over non-adjacent pairs (infinity if none).
    double min_non_adjacent_inversive = 0.0;

    bool irreducible_ok = false;
    /// Per vertex, a point of D_v covered by no other disk (when one was needed).
    std::vector<std::optional<Vec3>> irreducible_witness;

    int interstice_count = 0;
    std::vector<int> interstice_faces;
    std::vector<Vec3> interstice_points;

    bool flower_ok = false;
    std::vector<int> flower_failures;
    std::vector<Vec3> flower_witness;

    bool lemma26_ok = false;
    int lemma26_checked = 0;
    bool lemma27_ok = false;
    int lemma27_checked = 0;

    int boundary_samples = 0;
    int grid = 0;
    bool passed = false;
};

/// Throws MalformedPattern.
VerificationReport verify_pattern(const CirclePattern& p, const VerifyOptions& opts = {});

}  // namespace cpat
