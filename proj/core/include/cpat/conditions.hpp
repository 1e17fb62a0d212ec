#pragma once

// Combinatorial angle conditions on (triangulation, angle assignment) pairs.

#include "cpat/complex.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cpat {

/// Exterior angles indexed by Triangulation edge id, in radians.
struct AngleAssignment {
    std::vector<double> theta;

    [[nodiscard]] double operator[](int e) const { return theta.at(e); }
    [[nodiscard]] std::size_t size() const { return theta.size(); }

    static AngleAssignment constant(const Triangulation& t, double value);
    /// Component-wise (1 - s) a + s b.
    static AngleAssignment blend(const AngleAssignment& a, const AngleAssignment& b, double s);
};

/// Throws InvalidInput unless every edge has a finite value in [0, pi), or
/// (0, pi) when `open_interval` is set.
void validate_angles(const Triangulation& t, const AngleAssignment& theta,
                     bool open_interval = false);

enum class Condition { c1, c2, c3, c4, m5, g5, s1, s2, s3, s4 };
inline constexpr int kConditionCount = 10;

std::string_view to_string(Condition c);

/// One failed inequality. Witness labels are in the caller's vocabulary:
/// triangulation vertices and edges for classify, polyhedron vertices and
/// edges for check_andreev.
struct Violation {
    Condition tag = Condition::c1;
    /// Vertex walk, face vertices or polyhedron vertex, depending on the tag.
    std::vector<int> witness;
    std::vector<Edge> edges;
    double lhs = 0.0;
    double rhs = 0.0;
    /// Relation that should have held: "<", "<=", ">=", ">" or "some <".
    std::string relation;
    /// Signed distance to satisfying the relation (negative means violated).
    double slack = 0.0;
};

struct Lemma21Entry {
    std::vector<int> cycle;
    double sum = 0.0;
    double bound = 0.0;
    bool strict = false;
    bool ok = true;
};

enum class AngleClass { Marden, M5, G5, Andreev };

std::string_view to_string(AngleClass c);
std::optional<AngleClass> parse_angle_class(std::string_view name);

struct ConditionReport {
    AngleClass requested = AngleClass::Marden;
    bool passed = false;
    /// flags[c] tells whether condition c holds; evaluated[c] whether it was checked.
    std::array<bool, kConditionCount> flags{};
    std::array<bool, kConditionCount> evaluated{};
    std::vector<Violation> violations;
    std::optional<std::vector<Lemma21Entry>> lemma21_audit;

    [[nodiscard]] bool holds(Condition c) const { return flags[static_cast<int>(c)]; }
};

struct ConditionOptions {
    /// Margin for strict and non-strict comparisons and for equality.
    double eps = 1e-12;
};

ConditionReport check_c1(const Triangulation& t, const AngleAssignment& theta,
                         const ConditionOptions& opts = {});
ConditionReport check_c2(const Triangulation& t, const AngleAssignment& theta,
                         const ConditionOptions& opts = {});
ConditionReport check_c3_c4(const Triangulation& t, const AngleAssignment& theta,
                            const ConditionOptions& opts = {});

/// Evaluates c1-c4, m5 and g5. passed refers to the requested class:
/// Marden = c1-c4, M5 = c1-c4 + m5, G5 = c1-c4 + g5.
ConditionReport classify(const Triangulation& t, const AngleAssignment& theta,
                         AngleClass cls = AngleClass::Marden, const ConditionOptions& opts = {});

/// Checks that every non-facial simple cycle of length <= max_len has angle
/// sum <= (k-2) pi, strictly unless it bounds two adjacent triangles. Entries
/// with ok = false are alarms. Only meaningful for more than four vertices; a
/// tetrahedron yields an empty audit.
ConditionReport audit_lemma21(const Triangulation& t, const AngleAssignment& theta, int max_len,
                              const ConditionOptions& opts = {});

/// Angles indexed like DualTriangulation::primal_edges.
ConditionReport check_andreev(const DualTriangulation& dual, const std::vector<double>& theta,
                              const ConditionOptions& opts = {});
/// Builds the dual first. Throws NotTrivalent, NotASphere, TooFewFaces.
ConditionReport check_andreev(const CellComplex& p, const std::vector<double>& theta,
                              const ConditionOptions& opts = {});

/// 4-cycles bounding two adjacent triangles.
std::vector<Circuit> detect_whitehead(const Triangulation& t);

}  // namespace cpat
