#include "cpat/polyhedron.hpp"

#include "cpat/errors.hpp"
#include "cpat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

namespace cpat {

namespace {

Vec4 plane_vector(const HalfSpace& h)
{
    const double s = std::sqrt(std::max(0.0, 1.0 - h.offset * h.offset));
    return Vec4(h.offset / s, h.normal.x() / s, h.normal.y() / s, h.normal.z() / s);
}

/// Interior angle between the half-spaces i and j along the edge through q:
/// move q to the origin, where the Klein model is conformal, and measure the
/// angle between the two face directions.
double dihedral_at(const HalfSpace& hi, const HalfSpace& hj, const Vec3& q)
{
    const double s = std::sqrt(std::max(1e-300, 1.0 - q.squaredNorm()));
    const Vec4 x(1.0 / s, q.x() / s, q.y() / s, q.z() / s);
    const Eigen::Matrix4d b = boost_to_origin(x);
    const Vec4 mi = b * plane_vector(hi);
    const Vec4 mj = b * plane_vector(hj);
    const Vec3 ni = mi.tail<3>().normalized();
    const Vec3 nj = mj.tail<3>().normalized();
    const Vec3 d = ni.cross(nj);
    Vec3 ui = d.cross(ni);
    Vec3 uj = d.cross(nj);
    if (ui.dot(nj) > 0) ui = -ui;
    if (uj.dot(ni) > 0) uj = -uj;
    return std::atan2(ui.cross(uj).norm(), ui.dot(uj));
}

}  // namespace

HyperbolicPolyhedron build_polyhedron(const Triangulation& t, const SphericalConfiguration& cfg,
                                      const PolyhedronOptions& opts)
{
    const int n = t.vertex_count();
    if (static_cast<int>(cfg.centers.size()) != n || static_cast<int>(cfg.radii.size()) != n) {
        throw Error(ErrorCode::InvalidInput, "configuration size does not match the triangulation");
    }
    HyperbolicPolyhedron q;
    for (int v = 0; v < n; ++v) {
        const double r = cfg.radii[v];
        if (!(r > 0.0 && r < kPi)) throw Error(ErrorCode::InvalidInput, "radius outside (0, pi)");
        q.half_spaces.push_back(HalfSpace{cfg.centers[v].normalized(), std::cos(r)});
    }

    for (int f = 0; f < t.face_count(); ++f) {
        const Face& fc = t.face(f);
        Eigen::Matrix3d m;
        Vec3 rhs;
        for (int k = 0; k < 3; ++k) {
            m.row(k) = q.half_spaces[fc[k]].normal.transpose();
            rhs[k] = q.half_spaces[fc[k]].offset;
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m.transpose() * m,
                                                                 Eigen::EigenvaluesOnly);
        const Vec3 ev = es.eigenvalues();
        const double cond = ev[0] > 0 ? std::sqrt(ev[2] / ev[0])
                                      : std::numeric_limits<double>::infinity();
        if (!(cond <= opts.max_condition)) {
            throw Error(ErrorCode::SingularTriple,
                        "planes of face " + std::to_string(f) + " are nearly parallel");
        }
        const Vec3 x = m.fullPivLu().solve(rhs);
        const double norm = x.norm();
        q.max_vertex_norm = std::max(q.max_vertex_norm, norm);
        if (norm >= 1.0 - 1e-9) {
            q.has_ideal_vertices = true;
            if (!opts.allow_ideal) {
                throw Error(ErrorCode::VertexOutsideBall,
                            "vertex of face " + std::to_string(f) + " has |q| = " +
                                std::to_string(norm));
            }
        }
        q.vertices.push_back(x);
    }

    // Face lattice from incidences, not from the triangulation's labels.
    q.complex.vertex_count = static_cast<int>(q.vertices.size());
    q.complex.faces.resize(n);
    for (int v = 0; v < n; ++v) {
        const HalfSpace& h = q.half_spaces[v];
        std::vector<int> on;
        Vec3 mid = Vec3::Zero();
        for (int f = 0; f < static_cast<int>(q.vertices.size()); ++f) {
            if (std::abs(h.slack(q.vertices[f])) <= opts.incidence_tol) {
                on.push_back(f);
                mid += q.vertices[f];
            }
        }
        if (on.empty()) continue;
        mid /= static_cast<double>(on.size());
        const auto [e1, e2] = tangent_frame(h.normal);
        std::vector<std::pair<double, int>> ang;
        for (int f : on) {
            const Vec3 d = q.vertices[f] - mid;
            ang.emplace_back(std::atan2(d.dot(e2), d.dot(e1)), f);
        }
        std::sort(ang.begin(), ang.end());
        auto& cyc = q.complex.faces[v];
        for (const auto& a : ang) cyc.push_back(a.second);
        std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
    }

    std::map<Edge, std::vector<int>> edge_planes;
    for (int v = 0; v < n; ++v) {
        const auto& cyc = q.complex.faces[v];
        const int k = static_cast<int>(cyc.size());
        if (k < 2) continue;
        for (int i = 0; i < k; ++i) edge_planes[make_edge(cyc[i], cyc[(i + 1) % k])].push_back(v);
    }
    for (const auto& [e, planes] : edge_planes) {
        q.edges.push_back(e);
        int te = -1;
        double angle = std::numeric_limits<double>::quiet_NaN();
        if (planes.size() == 2) {
            if (auto id = t.find_edge(planes[0], planes[1])) te = *id;
            const Vec3 midpoint = 0.5 * (q.vertices[e.u] + q.vertices[e.v]);
            if (midpoint.norm() < 1.0) {
                angle = dihedral_at(q.half_spaces[planes[0]], q.half_spaces[planes[1]], midpoint);
            }
        }
        q.edge_planes.push_back(te);
        q.dihedral.push_back(angle);
    }
    return q;
}

PolyhedronCheck check_polyhedron(const HyperbolicPolyhedron& q, const Triangulation& t,
                                 const AngleAssignment& theta, double tol)
{
    PolyhedronCheck c;
    c.compact = q.max_vertex_norm < 1.0 - 1e-9;

    c.convexity_slack = std::numeric_limits<double>::infinity();
    bool trivalent = true;
    for (int f = 0; f < static_cast<int>(q.vertices.size()); ++f) {
        int incident = 0;
        for (int v = 0; v < static_cast<int>(q.half_spaces.size()); ++v) {
            const double s = q.half_spaces[v].slack(q.vertices[f]);
            if (std::abs(s) <= tol) {
                ++incident;
                continue;
            }
            c.convexity_slack = std::min(c.convexity_slack, s);
        }
        if (incident != 3) trivalent = false;
    }
    c.convex = c.convexity_slack >= -tol;
    c.trivalent = trivalent && !q.vertices.empty();

    // Dual comparison: face v of the polyhedron must be the set of triangles
    // around v, and each polyhedron edge must sit on a triangulation edge.
    bool dual = static_cast<int>(q.complex.faces.size()) == t.vertex_count() &&
                static_cast<int>(q.edges.size()) == t.edge_count();
    for (int v = 0; dual && v < t.vertex_count(); ++v) {
        std::vector<int> a = q.complex.faces[v];
        std::vector<int> b = t.vertex_faces(v);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) dual = false;
    }
    for (int e : q.edge_planes) {
        if (e < 0) dual = false;
    }
    if (dual) {
        std::set<int> used(q.edge_planes.begin(), q.edge_planes.end());
        dual = static_cast<int>(used.size()) == t.edge_count();
    }
    if (dual) {
        try {
            const DualTriangulation d = dual_of_trivalent(q.complex);
            for (int f = 0; f < d.triangulation.face_count() && dual; ++f) {
                const Face& df = d.triangulation.face(f);
                if (!t.find_face(df[0], df[1], df[2])) dual = false;
            }
        }
        catch (const Error&) {
            dual = false;
        }
    }
    c.matches_dual = dual;

    for (std::size_t i = 0; i < q.edges.size(); ++i) {
        const int e = q.edge_planes[i];
        if (e < 0 || std::isnan(q.dihedral[i])) {
            c.max_dihedral_error = std::numeric_limits<double>::infinity();
            continue;
        }
        c.max_dihedral_error =
            std::max(c.max_dihedral_error, std::abs(q.dihedral[i] - theta[e]));
        const Edge& te = t.edge(e);
        const HalfSpace& hu = q.half_spaces[te.u];
        const HalfSpace& hv = q.half_spaces[te.v];
        // Same angle from the caps' inversive distance.
        const double I = inversive_distance(hu.normal, std::acos(hu.offset), hv.normal,
                                            std::acos(hv.offset));
        const auto a = exterior_angle(I);
        const double gap =
            a ? std::abs(*a - q.dihedral[i]) : std::numeric_limits<double>::infinity();
        c.max_formula_gap = std::max(c.max_formula_gap, gap);
    }

    c.ok = c.compact && c.convex && c.trivalent && c.matches_dual &&
           c.max_dihedral_error <= tol && c.max_formula_gap <= 1e-10;
    return c;
}

std::string export_obj(const HyperbolicPolyhedron& q)
{
    std::string out = "# klein model\n";
    char buf[128];
    for (const Vec3& v : q.vertices) {
        std::snprintf(buf, sizeof buf, "v %.12f %.12f %.12f\n", v.x(), v.y(), v.z());
        out += buf;
    }
    for (const auto& face : q.complex.faces) {
        if (face.size() < 3) continue;
        out += 'f';
        for (int id : face) out += ' ' + std::to_string(id + 1);
        out += '\n';
    }
    return out;
}

}  // namespace cpat
