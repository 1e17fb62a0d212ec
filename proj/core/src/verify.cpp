#include "cpat/verify.hpp"

#include "cpat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace cpat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack used by the sampled membership tests.
constexpr double kCover = 1e-12;
constexpr double kBary = 1e-12;

Vec3 planar(const Vec2& z) { return Vec3(z.x(), z.y(), 0.0); }

void check_shape(const CirclePattern& p)
{
    const int n = p.triangulation.vertex_count();
    if (static_cast<int>(p.centers.size()) != n || static_cast<int>(p.radii.size()) != n) {
        throw Error(ErrorCode::MalformedPattern, "pattern size does not match the triangulation");
    }
    if (static_cast<int>(p.theta.size()) != p.triangulation.edge_count()) {
        throw Error(ErrorCode::MalformedPattern, "angle count does not match the edge count");
    }
    if (p.marked_face < 0 || p.marked_face >= p.triangulation.face_count()) {
        throw Error(ErrorCode::MalformedPattern, "marked face out of range");
    }
    for (int v = 0; v < n; ++v) {
        const double r = p.radii[v];
        if (!std::isfinite(r) || r <= 0.0 || !p.centers[v].allFinite()) {
            throw Error(ErrorCode::MalformedPattern,
                        "circle " + std::to_string(v) + " has a bad center or radius");
        }
        if (p.mode == Mode::Spherical) {
            if (r >= kPi) {
                throw Error(ErrorCode::MalformedPattern,
                            "spherical radius of circle " + std::to_string(v) + " >= pi");
            }
            if (std::abs(p.centers[v].norm() - 1.0) > 1e-9) {
                throw Error(ErrorCode::MalformedPattern,
                            "center of circle " + std::to_string(v) + " is not a unit vector");
            }
        }
        else if (p.centers[v].z() != 0.0) {
            throw Error(ErrorCode::MalformedPattern, "planar center with z != 0");
        }
    }
}

/// Membership and sampling in the pattern's own geometry.
class Geometry
{
public:
    explicit Geometry(const CirclePattern& p)
        : p_(p)
        , big_(p.triangulation.face_count(), false)
    {
        if (p.mode != Mode::Spherical) return;
        // At most one face of a geodesic triangulation covers more than a
        // hemisphere; it is the one whose orientation disagrees with the rest.
        std::vector<int> sign;
        int total = 0;
        for (int f = 0; f < p.triangulation.face_count(); ++f) {
            const Face& fc = p.triangulation.face(f);
            const double d = p.centers[fc[0]].dot(p.centers[fc[1]].cross(p.centers[fc[2]]));
            sign.push_back(d > 0 ? 1 : -1);
            total += sign.back();
        }
        const int major = total >= 0 ? 1 : -1;
        for (std::size_t f = 0; f < sign.size(); ++f) big_[f] = sign[f] != major;
    }

    [[nodiscard]] double dist(const Vec3& a, const Vec3& b) const
    {
        return p_.mode == Mode::Spherical ? sphere_distance(a, b) : (a - b).norm();
    }

    [[nodiscard]] bool in_closed(int v, const Vec3& x) const
    {
        return dist(x, p_.centers[v]) <= p_.radii[v] + kCover;
    }

    [[nodiscard]] bool in_open(int v, const Vec3& x) const
    {
        return dist(x, p_.centers[v]) < p_.radii[v] - kCover;
    }

    [[nodiscard]] Vec3 sample(int v, double rho, double phi) const
    {
        if (p_.mode == Mode::Spherical) return offset_point(p_.centers[v], rho, phi);
        return p_.centers[v] + rho * Vec3(std::cos(phi), std::sin(phi), 0.0);
    }

    /// Coefficients of x in the face's vertices (planar barycentric or the
    /// cone coordinates on the sphere).
    [[nodiscard]] Vec3 coords(int f, const Vec3& x) const
    {
        const Face& fc = p_.triangulation.face(f);
        const Vec3& a = p_.centers[fc[0]];
        const Vec3& b = p_.centers[fc[1]];
        const Vec3& c = p_.centers[fc[2]];
        if (p_.mode == Mode::Spherical) {
            Eigen::Matrix3d m;
            m.col(0) = a;
            m.col(1) = b;
            m.col(2) = c;
            return m.fullPivLu().solve(x);
        }
        Eigen::Matrix2d m;
        m.col(0) = (b - a).head<2>();
        m.col(1) = (c - a).head<2>();
        const Vec2 st = m.fullPivLu().solve((x - a).head<2>());
        return Vec3(1.0 - st.x() - st.y(), st.x(), st.y());
    }

    [[nodiscard]] bool in_face(int f, const Vec3& x) const
    {
        if (is_outer(f) || big_[f]) return !in_plain_face(f, x, -kBary);
        return in_plain_face(f, x, kBary);
    }

    /// x lies in face f off the edge opposite v (the part of the open star of v).
    [[nodiscard]] bool in_star_part(int f, int v, const Vec3& x) const
    {
        const Face& fc = p_.triangulation.face(f);
        if (is_outer(f)) return !in_plain_face(f, x, -kBary);
        const Vec3 w = coords(f, x);
        int k = 0;
        while (k < 3 && fc[k] != v) ++k;
        if (k == 3) return false;
        if (big_[f]) {
            // complement of the small triangle, minus the arc opposite v
            if (w.minCoeff() > kBary) return false;
            const bool on_link = std::abs(w[k]) <= kBary && w[(k + 1) % 3] >= -kBary &&
                                 w[(k + 2) % 3] >= -kBary;
            return !on_link;
        }
        if (w.minCoeff() < -kBary) return false;
        return w[k] > kBary;
    }

    /// Point of face f with the given weights (normalised on the sphere).
    [[nodiscard]] Vec3 face_point(int f, double wa, double wb, double wc) const
    {
        const Face& fc = p_.triangulation.face(f);
        const Vec3 x = wa * p_.centers[fc[0]] + wb * p_.centers[fc[1]] + wc * p_.centers[fc[2]];
        if (p_.mode != Mode::Spherical) return x;
        // a large face contains the antipodal image of its small triangle
        return big_[f] ? Vec3(-x.normalized()) : Vec3(x.normalized());
    }

    /// Centroid of the corners of the would-be interstice of face f, a guess
    /// that works when the interstice is too thin for the face samples.
    [[nodiscard]] std::optional<Vec3> corner_point(int f) const
    {
        if (big_[f] || is_outer(f)) return std::nullopt;
        const Face& fc = p_.triangulation.face(f);
        Vec3 sum = Vec3::Zero();
        for (int k = 0; k < 3; ++k) {
            const int i = fc[(k + 1) % 3];
            const int j = fc[(k + 2) % 3];
            const auto pts = crossings(i, j);
            if (pts.empty()) return std::nullopt;
            // the crossing on the side of the third circle, outside it
            const Vec3* best = nullptr;
            for (const Vec3& x : pts) {
                const double d = dist(x, p_.centers[fc[k]]);
                if (d <= p_.radii[fc[k]]) continue;
                if (!best || d < dist(*best, p_.centers[fc[k]])) best = &x;
            }
            if (!best) return std::nullopt;
            sum += *best;
        }
        sum /= 3.0;
        if (p_.mode == Mode::Spherical) sum.normalize();
        return sum;
    }

    [[nodiscard]] bool is_outer(int f) const
    {
        return p_.mode == Mode::Euclidean && f == p_.marked_face;
    }

    [[nodiscard]] bool uncovered(const Vec3& x, int skip = -1) const
    {
        for (int w = 0; w < p_.size(); ++w) {
            if (w != skip && in_closed(w, x)) return false;
        }
        return true;
    }

private:
    [[nodiscard]] std::vector<Vec3> crossings(int i, int j) const
    {
        if (p_.mode == Mode::Spherical) {
            return circle_intersections(Cap{p_.centers[i], p_.radii[i]},
                                        Cap{p_.centers[j], p_.radii[j]});
        }
        const Vec3 d = p_.centers[j] - p_.centers[i];
        const double len = d.norm();
        if (len <= 0) return {};
        const double ri = p_.radii[i];
        const double rj = p_.radii[j];
        const double a = (ri * ri - rj * rj + len * len) / (2 * len);
        const double h2 = ri * ri - a * a;
        if (h2 < -1e-12 * ri * ri) return {};
        const double h = std::sqrt(std::max(0.0, h2));
        const Vec3 u = d / len;
        const Vec3 perp(-u.y(), u.x(), 0.0);
        const Vec3 base = p_.centers[i] + a * u;
        if (h == 0) return {base};
        return {base + h * perp, base - h * perp};
    }

    [[nodiscard]] bool in_plain_face(int f, const Vec3& x, double slack) const
    {
        return coords(f, x).minCoeff() >= -slack;
    }

    const CirclePattern& p_;
    std::vector<bool> big_;
};

std::vector<std::array<int, 3>> adjacent_triples(const Triangulation& t)
{
    std::vector<std::array<int, 3>> out;
    for (int u = 0; u < t.vertex_count(); ++u) {
        for (int v : t.neighbors(u)) {
            if (v <= u) continue;
            for (int w : t.neighbors(v)) {
                if (w <= v || !t.has_edge(u, w)) continue;
                out.push_back({u, v, w});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CirclePattern CirclePattern::euclidean(const Triangulation& t, const AngleAssignment& theta,
                                       const EuclideanConfiguration& cfg)
{
    CirclePattern p;
    p.mode = Mode::Euclidean;
    p.triangulation = t;
    p.theta = theta;
    p.marked_face = cfg.marked_face;
    p.radii = cfg.radii;
    for (const Vec2& z : cfg.centers) p.centers.push_back(planar(z));
    return p;
}

CirclePattern CirclePattern::spherical(const Triangulation& t, const AngleAssignment& theta,
                                       const SphericalConfiguration& cfg)
{
    CirclePattern p;
    p.mode = Mode::Spherical;
    p.triangulation = t;
    p.theta = theta;
    p.marked_face = cfg.marked_face;
    p.radii = cfg.radii;
    p.centers = cfg.centers;
    return p;
}

double CirclePattern::inversive(int u, int v) const
{
    if (mode == Mode::Spherical) {
        return inversive_distance(centers[u], radii[u], centers[v], radii[v]);
    }
    return inversive_distance(Vec2(centers[u].head<2>()), radii[u], Vec2(centers[v].head<2>()),
                              radii[v]);
}

Cap CirclePattern::cap(int v) const
{
    if (mode == Mode::Spherical) return Cap{centers[v], radii[v]};
    return lift_disk(PlaneDisk{centers[v].head<2>(), radii[v]});
}

ContactGraph contact_graph(const CirclePattern& p, double eps_contact)
{
    check_shape(p);
    const Triangulation& t = p.triangulation;
    ContactGraph g;
    for (int u = 0; u < p.size(); ++u) {
        for (int v = u + 1; v < p.size(); ++v) {
            const double I = p.inversive(u, v);
            const bool adjacent = t.has_edge(u, v);
            if (I < -1.0 - eps_contact) {
                g.nested.push_back(Edge{u, v});
                if (adjacent) g.missing.push_back(Edge{u, v});
                continue;
            }
            if (I <= 1.0 + eps_contact) {
                g.edges.push_back(Edge{u, v});
                if (!adjacent) g.extra.push_back(Edge{u, v});
            }
            else if (adjacent) {
                g.missing.push_back(Edge{u, v});
            }
        }
    }
    g.matches_skeleton = g.missing.empty() && g.extra.empty() && g.nested.empty();
    return g;
}

FlowerResult flower_check(const CirclePattern& p, int v, const VerifyOptions& opts)
{
    check_shape(p);
    if (v < 0 || v >= p.size()) throw Error(ErrorCode::InvalidInput, "vertex out of range");
    const Geometry geo(p);
    const Triangulation& t = p.triangulation;
    const auto& nbrs = t.neighbors(v);
    const auto& faces = t.vertex_faces(v);

    auto covered = [&](const Vec3& x) {
        for (int w : nbrs) {
            if (geo.in_open(w, x)) return true;
        }
        for (int f : faces) {
            if (geo.in_star_part(f, v, x)) return true;
        }
        return false;
    };

    FlowerResult res;
    const double r = p.radii[v];
    const int nb = std::max(opts.boundary_samples, 1);
    for (int k = 0; k < nb; ++k) {
        const Vec3 x = geo.sample(v, r, 2.0 * kPi * k / nb);
        if (!covered(x)) {
            res.ok = false;
            res.witness = x;
            return res;
        }
    }
    const int g = std::max(opts.grid, 1);
    for (int i = 0; i < g; ++i) {
        const double rho = r * std::sqrt((i + 0.5) / g);
        for (int j = 0; j < g; ++j) {
            const Vec3 x = geo.sample(v, rho, 2.0 * kPi * j / g);
            if (!covered(x)) {
                res.ok = false;
                res.witness = x;
                return res;
            }
        }
    }
    return res;
}

VerificationReport verify_pattern(const CirclePattern& p, const VerifyOptions& opts)
{
    check_shape(p);
    const Triangulation& t = p.triangulation;
    const Geometry geo(p);
    const int n = p.size();
    VerificationReport rep;
    rep.boundary_samples = opts.boundary_samples;
    rep.grid = opts.grid;

    // (a) angles
    for (int e = 0; e < t.edge_count(); ++e) {
        const Edge& ed = t.edge(e);
        const double err = angle_error(p.inversive(ed.u, ed.v), p.theta[e]);
        rep.angle_max_err = std::max(rep.angle_max_err, err);
        if (!(err <= opts.tol_angle)) rep.angle_failures.push_back(ed);
    }

    // contact graph and non-adjacent disjointness
    rep.contact = contact_graph(p, opts.eps_contact);
    rep.contact_graph_ok = rep.contact.matches_skeleton;
    rep.min_non_adjacent_inversive = kInf;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (t.has_edge(u, v)) continue;
            const double I = p.inversive(u, v);
            rep.min_non_adjacent_inversive = std::min(rep.min_non_adjacent_inversive, I);
            if (!(I > 1.0 + opts.eps_contact)) rep.offending_pairs.push_back(Edge{u, v});
        }
    }
    rep.non_adjacent_disjoint_ok = rep.offending_pairs.empty();

    // interstices
    std::map<int, Vec3> hit;
    auto record = [&](int f, const Vec3& x) { hit.emplace(f, x); };
    const int m = std::max(opts.face_samples, 3);
    for (int f = 0; f < t.face_count(); ++f) {
        if (geo.is_outer(f)) {
            // Infinity is never covered; report a point far outside every disk.
            double reach = 0.0;
            for (int v = 0; v < n; ++v) reach = std::max(reach, p.centers[v].norm() + p.radii[v]);
            record(f, Vec3(2.0 * reach + 1.0, 0.0, 0.0));
            continue;
        }
        bool found = false;
        if (const auto c = geo.corner_point(f); c && geo.uncovered(*c)) {
            record(f, *c);
            found = true;
        }
        for (int i = 1; i < m && !found; ++i) {
            for (int j = 1; i + j < m && !found; ++j) {
                const int k = m - i - j;
                const Vec3 x = geo.face_point(f, double(i) / m, double(j) / m, double(k) / m);
                if (geo.uncovered(x)) {
                    record(f, x);
                    found = true;
                }
            }
        }
    }
    if (p.mode == Mode::Spherical) {
        const int ng = std::max(opts.global_samples, 1);
        const double golden = kPi * (3.0 - std::sqrt(5.0));
        for (int s = 0; s < ng; ++s) {
            const double z = 1.0 - 2.0 * (s + 0.5) / ng;
            const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
            const Vec3 x(rr * std::cos(golden * s), rr * std::sin(golden * s), z);
            if (!geo.uncovered(x)) continue;
            for (int f = 0; f < t.face_count(); ++f) {
                if (geo.in_face(f, x)) {
                    record(f, x);
                    break;
                }
            }
        }
    }
    for (const auto& [f, x] : hit) {
        rep.interstice_faces.push_back(f);
        rep.interstice_points.push_back(x);
    }
    rep.interstice_count = static_cast<int>(hit.size());

    // irreducibility: a point missed by every disk except possibly D_v
    rep.irreducible_witness.assign(n, std::nullopt);
    if (!rep.interstice_points.empty()) {
        for (int v = 0; v < n; ++v) rep.irreducible_witness[v] = rep.interstice_points.front();
    }
    else {
        const int nb = std::max(opts.boundary_samples, 1);
        const int g = std::max(opts.grid, 1);
        for (int v = 0; v < n; ++v) {
            std::optional<Vec3> w;
            if (geo.uncovered(p.centers[v], v)) w = p.centers[v];
            for (int k = 0; k < nb && !w; ++k) {
                const Vec3 x = geo.sample(v, p.radii[v], 2.0 * kPi * k / nb);
                if (geo.uncovered(x, v)) w = x;
            }
            for (int i = 0; i < g && !w; ++i) {
                const double rho = p.radii[v] * std::sqrt((i + 0.5) / g);
                for (int j = 0; j < g && !w; ++j) {
                    const Vec3 x = geo.sample(v, rho, 2.0 * kPi * j / g);
                    if (geo.uncovered(x, v)) w = x;
                }
            }
            rep.irreducible_witness[v] = w;
        }
    }
    rep.irreducible_ok = std::all_of(rep.irreducible_witness.begin(),
                                     rep.irreducible_witness.end(),
                                     [](const auto& w) { return w.has_value(); });

    // flower cover
    for (int v = 0; v < n; ++v) {
        const FlowerResult fr = flower_check(p, v, opts);
        if (!fr.ok) {
            rep.flower_failures.push_back(v);
            rep.flower_witness.push_back(*fr.witness);
        }
    }
    rep.flower_ok = rep.flower_failures.empty();

    // lens containment on mutually adjacent triples
    std::vector<Cap> caps;
    caps.reserve(n);
    for (int v = 0; v < n; ++v) caps.push_back(p.cap(v));
    rep.lemma26_ok = true;
    for (const auto& tri : adjacent_triples(t)) {
        for (int rot = 0; rot < 3; ++rot) {
            const int i = tri[rot];
            const int j = tri[(rot + 1) % 3];
            const int k = tri[(rot + 2) % 3];
            const std::array<double, 3> th{p.theta[t.edge_id(j, k)], p.theta[t.edge_id(i, k)],
                                           p.theta[t.edge_id(i, j)]};
            try {
                const ContainmentCheck cc =
                    containment_angle_check({caps[i], caps[j], caps[k]}, th, 1e-7);
                ++rep.lemma26_checked;
                if (!cc.holds) rep.lemma26_ok = false;
            }
            catch (const Error& e) {
                if (e.code() != ErrorCode::NotMutuallyIntersecting) throw;
                ++rep.lemma26_checked;
                rep.lemma26_ok = false;
            }
        }
    }

    // empty triple intersections on faces whose angle sum is below pi
    rep.lemma27_ok = true;
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fe = t.face_edges(f);
        const double sum = p.theta[fe[0]] + p.theta[fe[1]] + p.theta[fe[2]];
        if (!(sum < kPi - 1e-12)) continue;
        const Face& fc = t.face(f);
        try {
            ++rep.lemma27_checked;
            if (!triple_intersection_empty({caps[fc[0]], caps[fc[1]], caps[fc[2]]}))
                rep.lemma27_ok = false;
        }
        catch (const Error& e) {
            if (e.code() != ErrorCode::CoversSphere) throw;
            --rep.lemma27_checked;
        }
    }

    rep.passed = rep.angle_failures.empty() && rep.contact_graph_ok &&
                 rep.non_adjacent_disjoint_ok && rep.irreducible_ok && rep.flower_ok &&
                 rep.lemma26_ok && rep.lemma27_ok;
    return rep;
}

}  // namespace cpat
