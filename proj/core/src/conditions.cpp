#include "cpat/conditions.hpp"

#include "cpat/errors.hpp"
#include "cpat/sphere.hpp"

#include <cmath>
#include <functional>

namespace cpat {

AngleAssignment AngleAssignment::constant(const Triangulation& t, double value)
{
    return AngleAssignment{std::vector<double>(t.edge_count(), value)};
}

AngleAssignment AngleAssignment::blend(const AngleAssignment& a, const AngleAssignment& b,
                                       double s)
{
    if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "angle size mismatch");
    AngleAssignment out;
    out.theta.resize(a.size());
    for (std::size_t e = 0; e < a.size(); ++e) out.theta[e] = (1 - s) * a.theta[e] + s * b.theta[e];
    return out;
}

void validate_angles(const Triangulation& t, const AngleAssignment& theta, bool open_interval)
{
    if (static_cast<int>(theta.size()) != t.edge_count()) {
        throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(t.edge_count()) +
                                                 " angles, got " + std::to_string(theta.size()));
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        const double v = theta[e];
        const bool ok = std::isfinite(v) && v < kPi && (open_interval ? v > 0 : v >= 0);
        if (!ok) {
            throw Error(ErrorCode::InvalidInput,
                        "angle on edge [" + std::to_string(t.edge(e).u) + "," +
                            std::to_string(t.edge(e).v) + "] = " + std::to_string(v) +
                            (open_interval ? " not in (0, pi)" : " not in [0, pi)"));
        }
    }
}

std::string_view to_string(Condition c)
{
    switch (c) {
        case Condition::c1: return "c1";
        case Condition::c2: return "c2";
        case Condition::c3: return "c3";
        case Condition::c4: return "c4";
        case Condition::m5: return "m5";
        case Condition::g5: return "g5";
        case Condition::s1: return "s1";
        case Condition::s2: return "s2";
        case Condition::s3: return "s3";
        case Condition::s4: return "s4";
    }
    return "?";
}

std::string_view to_string(AngleClass c)
{
    switch (c) {
        case AngleClass::Marden: return "marden";
        case AngleClass::M5: return "m5";
        case AngleClass::G5: return "g5";
        case AngleClass::Andreev: return "andreev";
    }
    return "?";
}

std::optional<AngleClass> parse_angle_class(std::string_view name)
{
    if (name == "marden") return AngleClass::Marden;
    if (name == "m5") return AngleClass::M5;
    if (name == "g5") return AngleClass::G5;
    if (name == "andreev") return AngleClass::Andreev;
    return std::nullopt;
}

namespace {

// Edge labels for witnesses: the triangulation's own vertex pairs, or the
// polyhedron edges when checking a dual.
using EdgeLabel = std::function<Edge(int)>;

EdgeLabel own_labels(const Triangulation& t)
{
    return [&t](int e) { return t.edge(e); };
}

struct Ctx {
    const Triangulation& t;
    const AngleAssignment& theta;
    double eps;
    EdgeLabel label;
    std::function<int(int)> vertex_label = [](int v) { return v; };
};

Violation make_violation(const Ctx& c, Condition tag, const std::vector<int>& walk,
                         const std::vector<int>& edges, double lhs, double rhs,
                         std::string relation, double slack)
{
    Violation v;
    v.tag = tag;
    for (int w : walk) v.witness.push_back(c.vertex_label(w));
    for (int e : edges) v.edges.push_back(c.label(e));
    v.lhs = lhs;
    v.rhs = rhs;
    v.relation = std::move(relation);
    v.slack = slack;
    return v;
}

double edge_sum(const AngleAssignment& theta, const std::vector<int>& edges)
{
    double s = 0;
    for (int e : edges) s += theta[e];
    return s;
}

void set_flag(ConditionReport& r, Condition c, bool value)
{
    r.flags[static_cast<int>(c)] = value;
    r.evaluated[static_cast<int>(c)] = true;
}

// Three cyclic inequalities theta_i + theta_j < theta_k + pi per face.
bool face_c1(const Ctx& c, Condition tag, std::vector<Violation>& out)
{
    bool ok = true;
    for (int f = 0; f < c.t.face_count(); ++f) {
        const auto& fe = c.t.face_edges(f);
        for (int k = 0; k < 3; ++k) {
            const int ei = fe[(k + 1) % 3];
            const int ej = fe[(k + 2) % 3];
            const int ek = fe[k];
            const double lhs = c.theta[ei] + c.theta[ej];
            const double rhs = c.theta[ek] + kPi;
            if (!(lhs < rhs - c.eps)) {
                ok = false;
                const Face& fc = c.t.face(f);
                out.push_back(make_violation(c, tag, {fc[0], fc[1], fc[2]}, {ei, ej, ek}, lhs,
                                             rhs, "<", rhs - lhs));
            }
        }
    }
    return ok;
}

bool arcs_c2(const Ctx& c, Condition tag, std::vector<Violation>& out)
{
    bool ok = true;
    bool any_strict = false;
    int count = 0;
    for (const Circuit& arc : enumerate_two_arcs(c.t)) {
        if (!arc.is_homologically_non_adjacent) continue;
        ++count;
        const double lhs = edge_sum(c.theta, arc.edges);
        if (lhs > kPi + c.eps) {
            ok = false;
            out.push_back(make_violation(c, tag, arc.vertices, arc.edges, lhs, kPi, "<=",
                                         kPi - lhs));
        }
        if (lhs < kPi - c.eps) any_strict = true;
    }
    if (is_triangular_bipyramid(c.t) && count > 0 && !any_strict) {
        ok = false;
        out.push_back(make_violation(c, tag, {}, {}, kPi, kPi, "some <", 0.0));
    }
    return ok;
}

std::pair<bool, bool> cycles_c3_c4(const Ctx& c, Condition tag3, Condition tag4,
                                   bool prismatic_only, std::vector<Violation>& out)
{
    bool ok3 = true;
    bool ok4 = true;
    for (const Circuit& cyc : enumerate_simple_cycles(c.t, 4)) {
        const bool relevant = prismatic_only ? cyc.is_prismatic : cyc.separates_vertices;
        if (!relevant) continue;
        const int k = cyc.length();
        const double bound = (k - 2) * kPi;
        const double lhs = edge_sum(c.theta, cyc.edges);
        if (!(lhs < bound - c.eps)) {
            (k == 3 ? ok3 : ok4) = false;
            out.push_back(make_violation(c, k == 3 ? tag3 : tag4, cyc.vertices, cyc.edges, lhs,
                                         bound, "<", bound - lhs));
        }
    }
    return {ok3, ok4};
}

void finish(ConditionReport& r, std::initializer_list<Condition> required)
{
    r.passed = true;
    for (Condition c : required) r.passed = r.passed && r.holds(c);
    // Keep only the violations of the requested class.
    std::vector<Violation> kept;
    for (auto& v : r.violations) {
        for (Condition c : required) {
            if (v.tag == c) {
                kept.push_back(std::move(v));
                break;
            }
        }
    }
    r.violations = std::move(kept);
}

Ctx make_ctx(const Triangulation& t, const AngleAssignment& theta, const ConditionOptions& o)
{
    return Ctx{t, theta, o.eps, own_labels(t)};
}

}  // namespace

ConditionReport check_c1(const Triangulation& t, const AngleAssignment& theta,
                         const ConditionOptions& opts)
{
    validate_angles(t, theta);
    const Ctx c = make_ctx(t, theta, opts);
    ConditionReport r;
    set_flag(r, Condition::c1, face_c1(c, Condition::c1, r.violations));
    finish(r, {Condition::c1});
    return r;
}

ConditionReport check_c2(const Triangulation& t, const AngleAssignment& theta,
                         const ConditionOptions& opts)
{
    validate_angles(t, theta);
    const Ctx c = make_ctx(t, theta, opts);
    ConditionReport r;
    set_flag(r, Condition::c2, arcs_c2(c, Condition::c2, r.violations));
    finish(r, {Condition::c2});
    return r;
}

ConditionReport check_c3_c4(const Triangulation& t, const AngleAssignment& theta,
                            const ConditionOptions& opts)
{
    validate_angles(t, theta);
    const Ctx c = make_ctx(t, theta, opts);
    ConditionReport r;
    const auto [ok3, ok4] = cycles_c3_c4(c, Condition::c3, Condition::c4, false, r.violations);
    set_flag(r, Condition::c3, ok3);
    set_flag(r, Condition::c4, ok4);
    finish(r, {Condition::c3, Condition::c4});
    return r;
}

ConditionReport classify(const Triangulation& t, const AngleAssignment& theta, AngleClass cls,
                         const ConditionOptions& opts)
{
    if (cls == AngleClass::Andreev) {
        throw Error(ErrorCode::InvalidInput, "the andreev class is checked on a polyhedron");
    }
    validate_angles(t, theta);
    const Ctx c = make_ctx(t, theta, opts);
    ConditionReport r;
    r.requested = cls;
    set_flag(r, Condition::c1, face_c1(c, Condition::c1, r.violations));
    set_flag(r, Condition::c2, arcs_c2(c, Condition::c2, r.violations));
    const auto [ok3, ok4] = cycles_c3_c4(c, Condition::c3, Condition::c4, false, r.violations);
    set_flag(r, Condition::c3, ok3);
    set_flag(r, Condition::c4, ok4);

    // m5: every face sum >= pi, every angle positive, more than four vertices.
    bool m5 = true;
    bool g5 = false;
    double min_sum = 1e300;
    int min_face = 0;
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fe = t.face_edges(f);
        const std::vector<int> edges{fe[0], fe[1], fe[2]};
        const double sum = edge_sum(theta, edges);
        const Face& fc = t.face(f);
        if (sum < kPi - opts.eps) {
            m5 = false;
            g5 = true;
            r.violations.push_back(make_violation(c, Condition::m5, {fc[0], fc[1], fc[2]}, edges,
                                                  sum, kPi, ">=", sum - kPi));
        }
        if (sum < min_sum) {
            min_sum = sum;
            min_face = f;
        }
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        if (!(theta[e] > opts.eps)) {
            m5 = false;
            r.violations.push_back(make_violation(c, Condition::m5, {t.edge(e).u, t.edge(e).v},
                                                  {e}, theta[e], 0.0, ">", theta[e]));
        }
    }
    if (t.vertex_count() <= 4) {
        m5 = false;
        r.violations.push_back(make_violation(c, Condition::m5, {}, {}, t.vertex_count(), 4,
                                              ">", t.vertex_count() - 4.0));
    }
    if (!g5) {
        const auto& fe = t.face_edges(min_face);
        const Face& fc = t.face(min_face);
        r.violations.push_back(make_violation(c, Condition::g5, {fc[0], fc[1], fc[2]},
                                              {fe[0], fe[1], fe[2]}, min_sum, kPi, "<",
                                              kPi - min_sum));
    }
    set_flag(r, Condition::m5, m5);
    set_flag(r, Condition::g5, g5);

    switch (cls) {
        case AngleClass::Marden:
            finish(r, {Condition::c1, Condition::c2, Condition::c3, Condition::c4});
            break;
        case AngleClass::M5:
            finish(r, {Condition::c1, Condition::c2, Condition::c3, Condition::c4, Condition::m5});
            break;
        case AngleClass::G5:
            finish(r, {Condition::c1, Condition::c2, Condition::c3, Condition::c4, Condition::g5});
            break;
        case AngleClass::Andreev: break;
    }
    return r;
}

ConditionReport audit_lemma21(const Triangulation& t, const AngleAssignment& theta, int max_len,
                              const ConditionOptions& opts)
{
    validate_angles(t, theta);
    ConditionReport r;
    std::vector<Lemma21Entry> entries;
    bool ok = true;
    if (t.vertex_count() > 4) {
        for (const Circuit& cyc : enumerate_simple_cycles(t, max_len)) {
            if (cyc.is_face_boundary) continue;
            Lemma21Entry e;
            e.cycle = cyc.vertices;
            e.sum = edge_sum(theta, cyc.edges);
            e.bound = (cyc.length() - 2) * kPi;
            e.strict = !cyc.is_two_triangle_boundary;
            e.ok = e.strict ? e.sum < e.bound - opts.eps : e.sum <= e.bound + opts.eps;
            ok = ok && e.ok;
            entries.push_back(std::move(e));
        }
    }
    r.lemma21_audit = std::move(entries);
    r.passed = ok;
    return r;
}

ConditionReport check_andreev(const DualTriangulation& dual, const std::vector<double>& theta,
                              const ConditionOptions& opts)
{
    const Triangulation& t = dual.triangulation;
    if (t.vertex_count() <= 4) {
        throw Error(ErrorCode::TooFewFaces, "polyhedron needs more than four faces");
    }
    if (theta.size() != dual.primal_edges.size()) {
        throw Error(ErrorCode::InvalidInput, "expected one angle per polyhedron edge");
    }
    AngleAssignment dual_theta;
    dual_theta.theta.resize(t.edge_count());
    for (int e = 0; e < t.edge_count(); ++e) dual_theta.theta[e] = theta[dual.dual_to_primal_edge[e]];
    validate_angles(t, dual_theta, true);

    Ctx c{t, dual_theta, opts.eps,
          [&dual](int e) { return dual.primal_edges[dual.dual_to_primal_edge[e]]; }};
    ConditionReport r;
    r.requested = AngleClass::Andreev;

    // s1 at every polyhedron vertex, i.e. every dual triangle.
    bool s1 = true;
    std::vector<int> face_to_vertex(t.face_count(), -1);
    for (int v = 0; v < static_cast<int>(dual.primal_vertex_to_face.size()); ++v) {
        face_to_vertex[dual.primal_vertex_to_face[v]] = v;
    }
    for (int f = 0; f < t.face_count(); ++f) {
        const auto& fe = t.face_edges(f);
        const std::vector<int> edges{fe[0], fe[1], fe[2]};
        const double sum = edge_sum(dual_theta, edges);
        if (!(sum > kPi + opts.eps)) {
            s1 = false;
            Violation v = make_violation(c, Condition::s1, {}, edges, sum, kPi, ">", sum - kPi);
            v.witness = {face_to_vertex[f]};
            r.violations.push_back(std::move(v));
        }
    }
    {
        std::vector<Violation> local;
        if (!face_c1(c, Condition::s1, local)) s1 = false;
        for (auto& v : local) {
            const auto f = t.find_face(v.witness[0], v.witness[1], v.witness[2]);
            v.witness = {face_to_vertex[*f]};
            r.violations.push_back(std::move(v));
        }
    }
    set_flag(r, Condition::s1, s1);
    set_flag(r, Condition::s2, arcs_c2(c, Condition::s2, r.violations));
    const auto [ok3, ok4] = cycles_c3_c4(c, Condition::s3, Condition::s4, true, r.violations);
    set_flag(r, Condition::s3, ok3);
    set_flag(r, Condition::s4, ok4);
    finish(r, {Condition::s1, Condition::s2, Condition::s3, Condition::s4});
    return r;
}

ConditionReport check_andreev(const CellComplex& p, const std::vector<double>& theta,
                              const ConditionOptions& opts)
{
    if (p.faces.size() <= 4) {
        throw Error(ErrorCode::TooFewFaces, "polyhedron needs more than four faces");
    }
    return check_andreev(dual_of_trivalent(p), theta, opts);
}

std::vector<Circuit> detect_whitehead(const Triangulation& t)
{
    std::vector<Circuit> out;
    for (Circuit& c : enumerate_simple_cycles(t, 4)) {
        if (c.length() == 4 && c.is_whitehead) out.push_back(std::move(c));
    }
    return out;
}

}  // namespace cpat
