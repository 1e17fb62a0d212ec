#pragma once

// Numerical construction of circle patterns with prescribed exterior angles.

#include "cpat/complex.hpp"
#include "cpat/conditions.hpp"
#include "cpat/kernel.hpp"
#include "cpat/sphere.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cpat {

struct SolverOptions {
    double tol_K = 1e-10;
    double tol_angle = 1e-8;
    double tol_layout = 1e-8;
    int max_iters = 200;
    std::uint64_t seed = 1;
    /// Largest connected subset examined by the degeneration diagnostics.
    int diag_max = 6;
    /// Smallest continuation step before giving up.
    double min_step = 1e-5;
    /// Pick the face with the smallest angle sum when the requested marked
    /// face cannot host infinity.
    bool auto_mark = false;
    /// Weight of the target angles in the spherical base problem.
    double base_weight = 0.1;
    /// Number of perturbed restarts for the spherical base problem.
    int base_starts = 8;
};

struct CurvatureReport {
    /// Cone angle and curvature per vertex; NaN where not applicable.
    std::vector<double> sigma;
    std::vector<double> K;
    double max_abs_K = 0.0;
    /// Residual norm after each iteration.
    std::vector<double> trace;
    int iterations = 0;
    /// Fallback sweeps taken (euclidean) or continuation steps (spherical).
    int fallback_steps = 0;
};

struct EuclideanConfiguration {
    std::vector<Vec2> centers;
    std::vector<double> radii;
    int marked_face = 0;
    bool y4 = false;  // z_a = 0, z_b > 0, Im z_c > 0
    bool y5 = false;  // r_a = r_b = r_c
    bool y6 = false;  // sum of radii = 1
    /// The raw iterate: marked radii equal to 1, before the final similarity.
    std::vector<double> unit_boundary_radii;
    /// Largest disagreement between face placements in the layout.
    double layout_disagreement = 0.0;
};

struct SphericalConfiguration {
    std::vector<Vec3> centers;
    std::vector<double> radii;
    int marked_face = 0;
    bool x5 = false;  // z_a = 0, z_b > 0, Im z_c > 0 in the stereographic chart
    bool x6 = false;  // r_a = r_b = r_c = pi/4
};

struct EuclideanSolution {
    EuclideanConfiguration config;
    CurvatureReport report;
    double max_angle_error = 0.0;
};

struct SphericalSolution {
    SphericalConfiguration config;
    CurvatureReport report;
    double max_angle_error = 0.0;
    double t_reached = 0.0;
    /// Angles of the base problem where continuation started.
    AngleAssignment base_theta;
};

/// Face-angle sums; the face hosting infinity must have sum < pi.
int choose_marked_face(const Triangulation& t, const AngleAssignment& theta,
                       std::optional<int> requested, bool auto_mark);

/// Euclidean cone angles and curvatures of the triangulation minus the marked
/// face. Vertices of the marked face get NaN.
CurvatureReport euclidean_curvature(const Triangulation& t, const AngleAssignment& theta,
                                    const std::vector<double>& radii, int marked_face);

/// Spherical cone angles and curvatures over all faces.
CurvatureReport spherical_curvature(const Triangulation& t, const AngleAssignment& theta,
                                    const std::vector<double>& radii);

/// Throws ConditionsViolated, Stalled, LayoutInconsistent.
EuclideanSolution solve_euclidean(const Triangulation& t, const AngleAssignment& theta,
                                  std::optional<int> marked_face, const SolverOptions& opts = {});

/// Places centers by developing the faces other than the marked one, then
/// applies the z_a = 0, z_b > 0, Im z_c > 0 similarity. Throws LayoutInconsistent.
std::vector<Vec2> layout_euclidean(const Triangulation& t, const AngleAssignment& theta,
                                   const std::vector<double>& radii, int marked_face,
                                   double tol_layout, double* disagreement = nullptr);

/// Places centers on the sphere from radii: vertex a at the south pole, b on
/// the meridian y = 0, x > 0, c with y > 0. Throws LayoutInconsistent.
std::vector<Vec3> layout_spherical(const Triangulation& t, const AngleAssignment& theta,
                                   const std::vector<double>& radii, int marked_face,
                                   double tol_layout, double* disagreement = nullptr);

SphericalConfiguration lift_to_sphere(const EuclideanConfiguration& cfg);

/// Throws ConditionsViolated, BaseSolveFailed, ContinuationStuck.
SphericalSolution solve_spherical(const Triangulation& t, const AngleAssignment& theta,
                                  const SolverOptions& opts = {}, int marked_face = 0);

/// Same configuration moved by the Mobius map that balances it (see balance_caps).
SphericalConfiguration balance_pattern(const SphericalConfiguration& cfg);

struct DegenerationFunctional {
    std::vector<int> subset;
    double value = 0.0;
    int euler_char = 0;
    int link_size = 0;
};

/// -sum over Lk(A) of (pi - theta(e)) + 2 pi chi(S(A)). Throws EmptySubset,
/// FullSubset, InvalidInput (subset meets the marked face when one is given).
DegenerationFunctional degeneration_functional(const Triangulation& t,
                                               const AngleAssignment& theta,
                                               const std::vector<int>& subset,
                                               std::optional<int> marked_face = std::nullopt);

/// All connected subsets of size <= max_size avoiding the marked face,
/// sorted by decreasing value. Throws LimitExceeded past `cap` subsets.
std::vector<DegenerationFunctional> degeneration_table(const Triangulation& t,
                                                       const AngleAssignment& theta,
                                                       int max_size,
                                                       std::optional<int> marked_face,
                                                       std::size_t cap = 200000);

/// Realized exterior angle error per edge; infinity where the pair does not
/// intersect at an angle.
std::vector<double> euclidean_angle_errors(const Triangulation& t, const AngleAssignment& theta,
                                           const std::vector<Vec2>& centers,
                                           const std::vector<double>& radii);
std::vector<double> spherical_angle_errors(const Triangulation& t, const AngleAssignment& theta,
                                           const std::vector<Vec3>& centers,
                                           const std::vector<double>& radii);

}  // namespace cpat
