#include "cpat/complex.hpp"

#include "cpat/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <string>

namespace cpat {

namespace {

bool directed_in(const Face& f, int a, int b)
{
    for (int k = 0; k < 3; ++k) {
        if (f[k] == a && f[(k + 1) % 3] == b) return true;
    }
    return false;
}

// Rotation of f that starts with v.
Face rotate_to(const Face& f, int v)
{
    for (int k = 0; k < 3; ++k) {
        if (f[k] == v) return {f[k], f[(k + 1) % 3], f[(k + 2) % 3]};
    }
    return f;
}

}  // namespace

std::uint64_t Triangulation::key(int a, int b)
{
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

Triangulation Triangulation::build(std::vector<Face> faces)
{
    int n = 0;
    for (const auto& f : faces) {
        for (int v : f) n = std::max(n, v + 1);
    }
    return build(n, std::move(faces));
}

Triangulation Triangulation::build(int vertex_count, std::vector<Face> faces)
{
    if (faces.empty()) throw Error(ErrorCode::InvalidInput, "empty face list");
    if (vertex_count <= 0) throw Error(ErrorCode::InvalidInput, "vertex count must be positive");

    Triangulation t;
    t.vertex_count_ = vertex_count;

    std::set<std::array<int, 3>> seen;
    for (std::size_t i = 0; i < faces.size(); ++i) {
        const Face& f = faces[i];
        for (int v : f) {
            if (v < 0 || v >= vertex_count) {
                throw Error(ErrorCode::InvalidInput,
                            "face " + std::to_string(i) + " has vertex index out of range");
            }
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) {
            throw Error(ErrorCode::DegenerateFace,
                        "face " + std::to_string(i) + " repeats a vertex");
        }
        std::array<int, 3> s = f;
        std::sort(s.begin(), s.end());
        if (!seen.insert(s).second) {
            throw Error(ErrorCode::NonManifold, "face " + std::to_string(i) + " is duplicated");
        }
    }

    // Edge set, sorted for deterministic ids.
    std::set<Edge> edge_set;
    for (const auto& f : faces) {
        for (int k = 0; k < 3; ++k) edge_set.insert(make_edge(f[k], f[(k + 1) % 3]));
    }
    t.edges_.assign(edge_set.begin(), edge_set.end());
    for (int e = 0; e < t.edge_count(); ++e) {
        t.edge_index_.emplace(key(t.edges_[e].u, t.edges_[e].v), e);
    }

    std::vector<std::vector<int>> incident(t.edges_.size());
    for (int fi = 0; fi < static_cast<int>(faces.size()); ++fi) {
        const Face& f = faces[fi];
        for (int k = 0; k < 3; ++k) {
            incident[t.edge_index_.at(key(f[k], f[(k + 1) % 3]))].push_back(fi);
        }
    }
    for (std::size_t e = 0; e < incident.size(); ++e) {
        if (incident[e].size() != 2) {
            throw Error(ErrorCode::NonManifold,
                        "edge [" + std::to_string(t.edges_[e].u) + "," +
                            std::to_string(t.edges_[e].v) + "] lies in " +
                            std::to_string(incident[e].size()) + " faces");
        }
    }

    // Orientation repair by BFS over the dual graph.
    std::vector<int> state(faces.size(), 0);  // 0 unvisited, 1 visited
    std::queue<int> queue;
    state[0] = 1;
    queue.push(0);
    std::size_t visited = 1;
    while (!queue.empty()) {
        const int fi = queue.front();
        queue.pop();
        const Face f = faces[fi];
        for (int k = 0; k < 3; ++k) {
            const int a = f[k];
            const int b = f[(k + 1) % 3];
            const auto& inc = incident[t.edge_index_.at(key(a, b))];
            const int g = inc[0] == fi ? inc[1] : inc[0];
            const bool agrees = directed_in(faces[g], b, a);
            if (state[g] == 0) {
                if (!agrees) {
                    std::swap(faces[g][1], faces[g][2]);
                    t.orientation_repaired_ = true;
                }
                state[g] = 1;
                ++visited;
                queue.push(g);
            } else if (!agrees) {
                throw Error(ErrorCode::InconsistentOrientation,
                            "surface is not orientable (conflict across edge [" +
                                std::to_string(std::min(a, b)) + "," +
                                std::to_string(std::max(a, b)) + "])");
            }
        }
    }
    if (visited != faces.size()) {
        throw Error(ErrorCode::NotASphere, "face set is not connected");
    }

    t.faces_ = std::move(faces);
    t.edge_faces_.resize(t.edges_.size());
    for (std::size_t e = 0; e < incident.size(); ++e) {
        t.edge_faces_[e] = {incident[e][0], incident[e][1]};
    }
    t.face_edges_.resize(t.faces_.size());
    for (int fi = 0; fi < t.face_count(); ++fi) {
        const Face& f = t.faces_[fi];
        for (int k = 0; k < 3; ++k) {
            t.face_edges_[fi][k] = t.edge_index_.at(key(f[(k + 1) % 3], f[(k + 2) % 3]));
        }
    }

    // Vertex links must be single cycles.
    std::vector<std::vector<int>> around(vertex_count);
    for (int fi = 0; fi < t.face_count(); ++fi) {
        for (int v : t.faces_[fi]) around[v].push_back(fi);
    }
    t.vertex_faces_.resize(vertex_count);
    t.neighbors_.resize(vertex_count);
    for (int v = 0; v < vertex_count; ++v) {
        if (around[v].empty()) {
            throw Error(ErrorCode::NotASphere, "vertex " + std::to_string(v) + " is isolated");
        }
        std::map<int, int> next_face;  // link vertex x -> face (v, x, y)
        for (int fi : around[v]) {
            const Face r = rotate_to(t.faces_[fi], v);
            next_face[r[1]] = fi;
        }
        std::vector<int> cyc_faces;
        std::vector<int> cyc_nbrs;
        int start = rotate_to(t.faces_[around[v].front()], v)[1];
        int x = start;
        do {
            auto it = next_face.find(x);
            if (it == next_face.end() || cyc_faces.size() > around[v].size()) {
                throw Error(ErrorCode::NonManifold,
                            "link of vertex " + std::to_string(v) + " is not a cycle");
            }
            cyc_faces.push_back(it->second);
            cyc_nbrs.push_back(x);
            x = rotate_to(t.faces_[it->second], v)[2];
        } while (x != start);
        if (cyc_faces.size() != around[v].size()) {
            throw Error(ErrorCode::NonManifold,
                        "link of vertex " + std::to_string(v) + " is not a single cycle");
        }
        t.vertex_faces_[v] = std::move(cyc_faces);
        t.neighbors_[v] = std::move(cyc_nbrs);
    }

    if (t.euler_characteristic() != 2) {
        throw Error(ErrorCode::NotASphere,
                    "Euler characteristic is " + std::to_string(t.euler_characteristic()));
    }
    if (3 * t.face_count() != 2 * t.edge_count()) {
        throw Error(ErrorCode::NotASphere, "3|F| != 2|E|");
    }
    return t;
}

std::optional<int> Triangulation::find_edge(int a, int b) const
{
    auto it = edge_index_.find(key(a, b));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

int Triangulation::edge_id(int a, int b) const
{
    if (auto e = find_edge(a, b)) return *e;
    throw Error(ErrorCode::InvalidInput,
                "[" + std::to_string(a) + "," + std::to_string(b) + "] is not an edge");
}

std::optional<int> Triangulation::find_face(int a, int b, int c) const
{
    auto e = find_edge(a, b);
    if (!e) return std::nullopt;
    for (int fi : edge_faces_[*e]) {
        const Face& f = faces_[fi];
        if (f[0] == c || f[1] == c || f[2] == c) return fi;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Circuits

namespace {

std::vector<int> canonical_cycle(std::vector<int> walk)
{
    auto it = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), it, walk.end());
    if (walk.size() > 2 && walk[1] > walk.back()) std::reverse(walk.begin() + 1, walk.end());
    return walk;
}

// Off-cycle vertex counts on the two sides of a simple closed cycle.
std::array<int, 2> side_vertex_counts(const Triangulation& t, const std::vector<int>& walk,
                                      const std::vector<int>& cycle_edges)
{
    std::vector<char> barrier(t.edge_count(), 0);
    for (int e : cycle_edges) barrier[e] = 1;
    std::vector<char> on_cycle(t.vertex_count(), 0);
    for (int v : walk) on_cycle[v] = 1;

    std::vector<int> label(t.face_count(), -1);
    int components = 0;
    for (int seed = 0; seed < t.face_count(); ++seed) {
        if (label[seed] >= 0) continue;
        std::queue<int> q;
        q.push(seed);
        label[seed] = components;
        while (!q.empty()) {
            const int f = q.front();
            q.pop();
            for (int e : t.face_edges(f)) {
                if (barrier[e]) continue;
                const auto& ef = t.edge_faces(e);
                const int g = ef[0] == f ? ef[1] : ef[0];
                if (label[g] < 0) {
                    label[g] = components;
                    q.push(g);
                }
            }
        }
        ++components;
    }
    // A simple closed curve on the sphere has exactly two sides.
    std::array<std::set<int>, 2> sides;
    for (int f = 0; f < t.face_count(); ++f) {
        const int side = std::min(label[f], 1);
        for (int v : t.face(f)) {
            if (!on_cycle[v]) sides[side].insert(v);
        }
    }
    return {static_cast<int>(sides[0].size()), static_cast<int>(sides[1].size())};
}

}  // namespace

Circuit classify_cycle(const Triangulation& t, std::vector<int> walk)
{
    Circuit c;
    c.kind = CircuitKind::ClosedSimple;
    c.vertices = canonical_cycle(std::move(walk));
    const int k = static_cast<int>(c.vertices.size());
    if (k < 3) throw Error(ErrorCode::InvalidInput, "cycle shorter than 3");
    for (int i = 0; i < k; ++i) {
        c.edges.push_back(t.edge_id(c.vertices[i], c.vertices[(i + 1) % k]));
    }
    const auto& w = c.vertices;

    if (k == 3) {
        c.is_face_boundary = t.find_face(w[0], w[1], w[2]).has_value();
        c.separates_vertices = !c.is_face_boundary;
    } else {
        const auto counts = side_vertex_counts(t, w, c.edges);
        c.separates_vertices = counts[0] > 0 && counts[1] > 0;
    }

    if (k == 4) {
        auto bounds_pair = [&](int p, int q, int r, int s) {
            // diagonal p-r splitting the cycle p-q-r-s into (p,q,r) and (p,r,s)
            auto d = t.find_edge(p, r);
            if (!d) return false;
            const auto& ef = t.edge_faces(*d);
            std::set<int> got;
            for (int f : ef) {
                const Face& fc = t.face(f);
                std::array<int, 3> s3 = fc;
                std::sort(s3.begin(), s3.end());
                std::array<int, 3> a{p, q, r};
                std::array<int, 3> b{p, r, s};
                std::sort(a.begin(), a.end());
                std::sort(b.begin(), b.end());
                if (s3 == a) got.insert(0);
                if (s3 == b) got.insert(1);
            }
            return got.size() == 2;
        };
        const bool diag02 = bounds_pair(w[0], w[1], w[2], w[3]);
        const bool diag13 = bounds_pair(w[1], w[2], w[3], w[0]);
        c.is_two_triangle_boundary = diag02 || diag13;
        c.is_whitehead = c.is_two_triangle_boundary;
        if (c.is_whitehead) {
            // Essential iff the cycle splits into two arcs whose endpoints are
            // not joined: that needs a missing diagonal.
            const bool split13 = diag02 && !t.has_edge(w[1], w[3]);
            const bool split02 = diag13 && !t.has_edge(w[0], w[2]);
            c.is_essential_whitehead = split13 || split02;
        }
    }

    // Prismatic: no triangle contains two consecutive cycle edges.
    if (!c.is_face_boundary) {
        bool prismatic = true;
        for (int i = 0; i < k && prismatic; ++i) {
            const int prev = w[(i + k - 1) % k];
            const int next = w[(i + 1) % k];
            if (t.find_face(prev, w[i], next)) prismatic = false;
        }
        c.is_prismatic = prismatic;
    }
    return c;
}

std::vector<Circuit> enumerate_simple_cycles(const Triangulation& t, int max_len, std::size_t cap)
{
    if (max_len < 3) throw Error(ErrorCode::InvalidInput, "max_len must be at least 3");
    const int n = t.vertex_count();
    std::vector<std::vector<int>> found;
    std::vector<int> path;
    std::vector<char> on_path(n, 0);

    // Iterative-deepening would not help here; plain DFS rooted at the
    // smallest vertex of each cycle is enough for the sizes we handle.
    auto dfs = [&](auto&& self, int start, int x) -> void {
        for (int w : t.neighbors(x)) {
            if (w == start) {
                if (path.size() >= 3 && path[1] < path.back()) {
                    found.push_back(path);
                    if (found.size() > cap) {
                        throw Error(ErrorCode::LimitExceeded,
                                    "more than " + std::to_string(cap) + " cycles");
                    }
                }
                continue;
            }
            if (w < start || on_path[w] || static_cast<int>(path.size()) >= max_len) continue;
            on_path[w] = 1;
            path.push_back(w);
            self(self, start, w);
            path.pop_back();
            on_path[w] = 0;
        }
    };
    for (int s = 0; s < n; ++s) {
        path.assign(1, s);
        on_path[s] = 1;
        dfs(dfs, s, s);
        on_path[s] = 0;
    }

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Circuit> out;
    out.reserve(found.size());
    for (auto& walk : found) out.push_back(classify_cycle(t, std::move(walk)));
    return out;
}

std::vector<Circuit> enumerate_two_arcs(const Triangulation& t)
{
    std::vector<Circuit> out;
    for (int v = 0; v < t.vertex_count(); ++v) {
        std::vector<int> nb = t.neighbors(v);
        std::sort(nb.begin(), nb.end());
        for (std::size_t i = 0; i < nb.size(); ++i) {
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                Circuit c;
                c.kind = CircuitKind::OpenArc;
                c.vertices = {nb[i], v, nb[j]};
                c.edges = {t.edge_id(nb[i], v), t.edge_id(v, nb[j])};
                c.is_homologically_non_adjacent = !t.has_edge(nb[i], nb[j]);
                out.push_back(std::move(c));
            }
        }
    }
    return out;
}

bool is_triangular_bipyramid(const Triangulation& t)
{
    if (t.vertex_count() != 5) return false;
    std::vector<int> deg3;
    int deg4 = 0;
    for (int v = 0; v < 5; ++v) {
        if (t.degree(v) == 3) deg3.push_back(v);
        else if (t.degree(v) == 4) ++deg4;
    }
    return deg3.size() == 2 && deg4 == 3 && !t.has_edge(deg3[0], deg3[1]);
}

// ---------------------------------------------------------------------------
// Subsets

VertexSubsetGeometry subset_geometry(const Triangulation& t, const std::vector<int>& subset)
{
    std::vector<int> a = subset;
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    if (a.empty()) throw Error(ErrorCode::EmptySubset, "vertex subset is empty");
    for (int v : a) {
        if (v < 0 || v >= t.vertex_count()) {
            throw Error(ErrorCode::InvalidInput, "subset vertex out of range");
        }
    }
    if (static_cast<int>(a.size()) == t.vertex_count()) {
        throw Error(ErrorCode::FullSubset, "vertex subset is all of V");
    }
    std::vector<char> in(t.vertex_count(), 0);
    for (int v : a) in[v] = 1;

    VertexSubsetGeometry g;
    g.subset = a;
    g.star_vertices = a;
    for (int e = 0; e < t.edge_count(); ++e) {
        if (in[t.edge(e).u] || in[t.edge(e).v]) g.star_edges.push_back(e);
    }
    for (int f = 0; f < t.face_count(); ++f) {
        const Face& fc = t.face(f);
        if (in[fc[0]] || in[fc[1]] || in[fc[2]]) g.star_faces.push_back(f);
        for (int k = 0; k < 3; ++k) {
            const int u = fc[k];
            const int e = t.face_edges(f)[k];
            if (in[u] && !in[t.edge(e).u] && !in[t.edge(e).v]) g.link.push_back({e, u});
        }
    }
    std::sort(g.link.begin(), g.link.end(), [](const LinkPair& x, const LinkPair& y) {
        return std::pair(x.vertex, x.edge) < std::pair(y.vertex, y.edge);
    });
    g.euler_char = static_cast<int>(g.star_vertices.size()) -
                   static_cast<int>(g.star_edges.size()) +
                   static_cast<int>(g.star_faces.size());

    // Open stars of two vertices meet iff the vertices are adjacent.
    std::vector<int> comp(t.vertex_count(), -1);
    for (int s : a) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(g.components.size());
        g.components.emplace_back();
        std::queue<int> q;
        q.push(s);
        comp[s] = id;
        while (!q.empty()) {
            const int x = q.front();
            q.pop();
            g.components[id].push_back(x);
            for (int w : t.neighbors(x)) {
                if (in[w] && comp[w] < 0) {
                    comp[w] = id;
                    q.push(w);
                }
            }
        }
        std::sort(g.components[id].begin(), g.components[id].end());
    }
    return g;
}

// ---------------------------------------------------------------------------
// Duality

DualTriangulation dual_of_trivalent(const CellComplex& p)
{
    const int nv = p.vertex_count;
    const int nf = static_cast<int>(p.faces.size());
    if (nv <= 0 || nf == 0) throw Error(ErrorCode::InvalidInput, "empty polyhedron");

    std::map<Edge, std::vector<int>> edge_faces;
    std::vector<std::set<int>> vertex_faces(nv);
    for (int f = 0; f < nf; ++f) {
        const auto& cyc = p.faces[f];
        if (cyc.size() < 3) throw Error(ErrorCode::InvalidInput, "face with fewer than 3 sides");
        std::set<int> distinct(cyc.begin(), cyc.end());
        if (distinct.size() != cyc.size()) {
            throw Error(ErrorCode::InvalidInput, "face repeats a vertex");
        }
        for (std::size_t k = 0; k < cyc.size(); ++k) {
            const int a = cyc[k];
            const int b = cyc[(k + 1) % cyc.size()];
            if (a < 0 || a >= nv) throw Error(ErrorCode::InvalidInput, "vertex index out of range");
            edge_faces[make_edge(a, b)].push_back(f);
            vertex_faces[a].insert(f);
        }
    }
    for (const auto& [e, fs] : edge_faces) {
        if (fs.size() != 2) {
            throw Error(ErrorCode::NotASphere, "polyhedron edge [" + std::to_string(e.u) + "," +
                                                   std::to_string(e.v) + "] is not in two faces");
        }
    }
    const int ne = static_cast<int>(edge_faces.size());
    if (nv - ne + nf != 2) {
        throw Error(ErrorCode::NotASphere,
                    "polyhedron Euler characteristic is " + std::to_string(nv - ne + nf));
    }
    std::vector<int> degree(nv, 0);
    for (const auto& [e, fs] : edge_faces) {
        ++degree[e.u];
        ++degree[e.v];
    }
    for (int v = 0; v < nv; ++v) {
        if (degree[v] != 3 || vertex_faces[v].size() != 3) {
            throw Error(ErrorCode::NotTrivalent,
                        "vertex " + std::to_string(v) + " has degree " + std::to_string(degree[v]));
        }
    }

    std::vector<Face> tri;
    tri.reserve(nv);
    for (int v = 0; v < nv; ++v) {
        auto it = vertex_faces[v].begin();
        Face f{};
        for (int k = 0; k < 3; ++k) f[k] = *it++;
        tri.push_back(f);
    }

    DualTriangulation d;
    d.triangulation = Triangulation::build(nf, tri);
    for (int v = 0; v < nv; ++v) {
        const Face& f = tri[v];
        d.primal_vertex_to_face.push_back(*d.triangulation.find_face(f[0], f[1], f[2]));
    }
    d.dual_to_primal_edge.assign(d.triangulation.edge_count(), -1);
    for (const auto& [e, fs] : edge_faces) {
        const int id = static_cast<int>(d.primal_edges.size());
        d.primal_edges.push_back(e);
        const int de = d.triangulation.edge_id(fs[0], fs[1]);
        d.primal_to_dual_edge.push_back(de);
        d.dual_to_primal_edge[de] = id;
    }
    return d;
}

CellComplex primal_of(const Triangulation& t)
{
    CellComplex p;
    p.vertex_count = t.face_count();
    p.faces.reserve(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) p.faces.push_back(t.vertex_faces(v));
    return p;
}

}  // namespace cpat
