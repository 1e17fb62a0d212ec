#pragma once

// Combinatorics of oriented triangulations of the 2-sphere.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace cpat {

using Face = std::array<int, 3>;

/// Undirected edge, always stored with u < v.
struct Edge {
    int u = -1;
    int v = -1;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Immutable simplicial 2-sphere. Faces are kept consistently oriented; the
/// orientation of the first input face is preserved and the others are flipped
/// to agree with it.
class Triangulation
{
public:
    Triangulation() = default;

    /// Validates and builds all incidence maps.
    /// Throws Error{NotASphere, NonManifold, InconsistentOrientation,
    /// DegenerateFace, InvalidInput}.
    static Triangulation build(int vertex_count, std::vector<Face> faces);

    /// Vertex count inferred as 1 + max index.
    static Triangulation build(std::vector<Face> faces);

    [[nodiscard]] int vertex_count() const { return vertex_count_; }
    [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
    [[nodiscard]] int face_count() const { return static_cast<int>(faces_.size()); }
    [[nodiscard]] int euler_characteristic() const
    {
        return vertex_count() - edge_count() + face_count();
    }

    [[nodiscard]] const std::vector<Face>& faces() const { return faces_; }
    [[nodiscard]] const Face& face(int f) const { return faces_.at(f); }
    [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
    [[nodiscard]] const Edge& edge(int e) const { return edges_.at(e); }

    [[nodiscard]] std::optional<int> find_edge(int a, int b) const;
    [[nodiscard]] bool has_edge(int a, int b) const { return find_edge(a, b).has_value(); }
    /// Like find_edge but throws InvalidInput when the edge is absent.
    [[nodiscard]] int edge_id(int a, int b) const;

    /// Face with the given vertex set (any order), if present.
    [[nodiscard]] std::optional<int> find_face(int a, int b, int c) const;

    /// The two faces on either side of an edge.
    [[nodiscard]] const std::array<int, 2>& edge_faces(int e) const { return edge_faces_.at(e); }

    /// Faces around v in cyclic (orientation) order.
    [[nodiscard]] const std::vector<int>& vertex_faces(int v) const { return vertex_faces_.at(v); }

    /// Neighbours of v in the same cyclic order as vertex_faces: face k of v is
    /// (v, neighbors[k], neighbors[k+1]).
    [[nodiscard]] const std::vector<int>& neighbors(int v) const { return neighbors_.at(v); }
    [[nodiscard]] int degree(int v) const { return static_cast<int>(neighbors_.at(v).size()); }

    /// Edge ids of face f; entry k is the edge opposite face(f)[k].
    [[nodiscard]] const std::array<int, 3>& face_edges(int f) const { return face_edges_.at(f); }

    /// True if any input face was flipped during orientation repair.
    [[nodiscard]] bool orientation_repaired() const { return orientation_repaired_; }

private:
    static std::uint64_t key(int a, int b);

    int vertex_count_ = 0;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, int> edge_index_;
    std::vector<std::array<int, 2>> edge_faces_;
    std::vector<std::array<int, 3>> face_edges_;
    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> neighbors_;
    bool orientation_repaired_ = false;
};

enum class CircuitKind { ClosedSimple, OpenArc };

/// Closed simple cycle or open arc in the 1-skeleton, with classification flags.
/// vertices holds the walk (cyclic for closed circuits); edges[k] joins
/// vertices[k] and vertices[k+1] (wrapping for closed circuits).
struct Circuit {
    CircuitKind kind = CircuitKind::ClosedSimple;
    std::vector<int> vertices;
    std::vector<int> edges;

    bool is_face_boundary = false;
    bool is_two_triangle_boundary = false;
    bool separates_vertices = false;
    bool is_prismatic = false;
    bool is_homologically_non_adjacent = false;
    bool is_whitehead = false;
    bool is_essential_whitehead = false;

    [[nodiscard]] int length() const { return static_cast<int>(edges.size()); }
};

inline constexpr std::size_t kDefaultCycleCap = 1'000'000;

/// All simple closed cycles of length 3..max_len, canonicalised (smallest
/// vertex first, then the smaller neighbour) and sorted by (length, vertices).
/// Throws LimitExceeded past `cap` cycles.
std::vector<Circuit> enumerate_simple_cycles(const Triangulation& t, int max_len,
                                             std::size_t cap = kDefaultCycleCap);

/// Flags a closed cycle given by its vertex walk. Exposed so that callers with
/// their own cycles (detectors, tests) share one classification.
Circuit classify_cycle(const Triangulation& t, std::vector<int> walk);

/// Every 2-arc u-v-w with u < w, ordered by (v, u, w).
std::vector<Circuit> enumerate_two_arcs(const Triangulation& t);

/// Triangular bipyramid, recognised structurally: five vertices, degree
/// sequence {3,3,4,4,4}, the two degree-3 vertices non-adjacent.
bool is_triangular_bipyramid(const Triangulation& t);

struct LinkPair {
    int edge = -1;
    int vertex = -1;
};

/// Open star S(A), link pairs Lk(A) and the Euler characteristic of S(A).
struct VertexSubsetGeometry {
    std::vector<int> subset;
    std::vector<int> star_vertices;
    std::vector<int> star_edges;
    std::vector<int> star_faces;
    std::vector<LinkPair> link;
    int euler_char = 0;
    /// Connected components of S(A), each listed by the vertices of A it covers.
    std::vector<std::vector<int>> components;
};

/// Throws EmptySubset / FullSubset / InvalidInput.
VertexSubsetGeometry subset_geometry(const Triangulation& t, const std::vector<int>& subset);

/// Abstract polyhedron given by face cycles over vertex ids 0..vertex_count-1.
struct CellComplex {
    int vertex_count = 0;
    std::vector<std::vector<int>> faces;
};

/// Dual triangulation of a trivalent polyhedron together with the edge
/// bijection used to transfer angle data.
struct DualTriangulation {
    Triangulation triangulation;
    /// Edges of the polyhedron, sorted.
    std::vector<Edge> primal_edges;
    std::vector<int> primal_to_dual_edge;
    std::vector<int> dual_to_primal_edge;
    /// Polyhedron vertex -> triangle of the dual.
    std::vector<int> primal_vertex_to_face;
};

/// Throws NotTrivalent, NotASphere, InvalidInput.
DualTriangulation dual_of_trivalent(const CellComplex& p);

/// Inverse construction: polyhedron vertices are the triangles of t (by id),
/// polyhedron face i is the cycle of triangles around vertex i.
CellComplex primal_of(const Triangulation& t);

}  // namespace cpat
