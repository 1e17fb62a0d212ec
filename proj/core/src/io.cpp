#include "cpat/io.hpp"

#include "cpat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace cpat::io {

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw Error(ErrorCode::InvalidInput, what);
}

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

int as_int(const json& j, const char* what)
{
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    return j.get<int>();
}

double as_double(const json& j, const char* what)
{
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

json number(double x)
{
    // JSON has no infinities or NaN.
    if (!std::isfinite(x)) return nullptr;
    return x;
}

json vec(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }
json vec(const Vec2& v) { return json::array({v.x(), v.y()}); }
json edge(const Edge& e) { return json::array({e.u, e.v}); }

json edges(const std::vector<Edge>& es)
{
    json a = json::array();
    for (const Edge& e : es) a.push_back(edge(e));
    return a;
}

std::map<Edge, double> edge_values(const json& j)
{
    std::map<Edge, double> out;
    for (const json& item : field(j, "theta")) {
        const json& e = field(item, "edge");
        if (!e.is_array() || e.size() != 2) bad("edge must be a pair");
        const int a = as_int(e[0], "edge vertex");
        const int b = as_int(e[1], "edge vertex");
        const Edge key = make_edge(a, b);
        if (!out.emplace(key, as_double(field(item, "value"), "theta value")).second) {
            bad("edge [" + std::to_string(key.u) + "," + std::to_string(key.v) +
                "] given twice");
        }
    }
    return out;
}

}  // namespace

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    try {
        return json::parse(in);
    }
    catch (const json::exception& e) {
        bad(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot write " + path);
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Triangulation triangulation_from_json(const json& j)
{
    std::vector<Face> faces;
    for (const json& f : field(j, "faces")) {
        if (!f.is_array() || f.size() != 3) bad("triangulation faces must have three vertices");
        faces.push_back({as_int(f[0], "face vertex"), as_int(f[1], "face vertex"),
                         as_int(f[2], "face vertex")});
    }
    if (j.contains("vertices")) return Triangulation::build(as_int(j.at("vertices"), "vertices"), faces);
    return Triangulation::build(std::move(faces));
}

json to_json(const Triangulation& t)
{
    json faces = json::array();
    for (const Face& f : t.faces()) faces.push_back(json::array({f[0], f[1], f[2]}));
    return json{{"vertices", t.vertex_count()}, {"faces", faces}};
}

AngleAssignment theta_from_json(const json& j, const Triangulation& t)
{
    if (j.is_object() && j.contains("constant")) {
        return AngleAssignment::constant(t, as_double(j.at("constant"), "constant"));
    }
    const auto values = edge_values(j);
    AngleAssignment a;
    a.theta.assign(t.edge_count(), std::numeric_limits<double>::quiet_NaN());
    for (const auto& [e, v] : values) {
        const auto id = t.find_edge(e.u, e.v);
        if (!id) bad("[" + std::to_string(e.u) + "," + std::to_string(e.v) + "] is not an edge");
        a.theta[*id] = v;
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        if (std::isnan(a.theta[e])) {
            bad("no angle for edge [" + std::to_string(t.edge(e).u) + "," +
                std::to_string(t.edge(e).v) + "]");
        }
    }
    return a;
}

json to_json(const Triangulation& t, const AngleAssignment& theta)
{
    json list = json::array();
    for (int e = 0; e < t.edge_count(); ++e) {
        list.push_back(json{{"edge", edge(t.edge(e))}, {"value", theta[e]}});
    }
    return json{{"theta", list}};
}

CellComplex complex_from_json(const json& j)
{
    CellComplex p;
    int top = -1;
    for (const json& f : field(j, "faces")) {
        if (!f.is_array()) bad("faces must be arrays");
        std::vector<int> cyc;
        for (const json& v : f) {
            cyc.push_back(as_int(v, "face vertex"));
            top = std::max(top, cyc.back());
        }
        p.faces.push_back(std::move(cyc));
    }
    p.vertex_count = j.contains("vertices") ? as_int(j.at("vertices"), "vertices") : top + 1;
    return p;
}

json to_json(const CellComplex& p)
{
    json faces = json::array();
    for (const auto& f : p.faces) faces.push_back(f);
    return json{{"vertices", p.vertex_count}, {"faces", faces}};
}

std::vector<Edge> complex_edges(const CellComplex& p)
{
    std::set<Edge> s;
    for (const auto& f : p.faces) {
        for (std::size_t i = 0; i < f.size(); ++i) s.insert(make_edge(f[i], f[(i + 1) % f.size()]));
    }
    return {s.begin(), s.end()};
}

std::vector<double> polyhedron_theta_from_json(const json& j, const std::vector<Edge>& edges)
{
    if (j.is_object() && j.contains("constant")) {
        return std::vector<double>(edges.size(), as_double(j.at("constant"), "constant"));
    }
    const auto values = edge_values(j);
    std::vector<double> out;
    for (const Edge& e : edges) {
        const auto it = values.find(e);
        if (it == values.end()) {
            bad("no angle for edge [" + std::to_string(e.u) + "," + std::to_string(e.v) + "]");
        }
        out.push_back(it->second);
    }
    if (values.size() != edges.size()) bad("angle given for a pair that is not an edge");
    return out;
}

json to_json(const ConditionReport& r)
{
    json flags = json::object();
    for (int c = 0; c < kConditionCount; ++c) {
        if (r.evaluated[c]) flags[std::string(to_string(static_cast<Condition>(c)))] = r.flags[c];
    }
    json viol = json::array();
    for (const Violation& v : r.violations) {
        viol.push_back(json{{"condition", std::string(to_string(v.tag))},
                            {"witness", v.witness},
                            {"edges", edges(v.edges)},
                            {"lhs", number(v.lhs)},
                            {"relation", v.relation},
                            {"rhs", number(v.rhs)},
                            {"slack", number(v.slack)}});
    }
    json out{{"class", std::string(to_string(r.requested))},
             {"passed", r.passed},
             {"flags", flags},
             {"violations", viol}};
    if (r.lemma21_audit) {
        json audit = json::array();
        for (const Lemma21Entry& e : *r.lemma21_audit) {
            audit.push_back(json{{"cycle", e.cycle},
                                 {"sum", e.sum},
                                 {"bound", e.bound},
                                 {"strict", e.strict},
                                 {"ok", e.ok}});
        }
        out["lemma21_audit"] = audit;
    }
    return out;
}

json to_json(const CurvatureReport& r)
{
    json k = json::array();
    for (double x : r.K) k.push_back(number(x));
    json trace = json::array();
    for (double x : r.trace) trace.push_back(number(x));
    return json{{"max_abs_K", number(r.max_abs_K)},
                {"iterations", r.iterations},
                {"fallback_steps", r.fallback_steps},
                {"K", k},
                {"trace", trace}};
}

json to_json(const VerificationReport& r)
{
    json witness = json::array();
    for (const auto& w : r.irreducible_witness) witness.push_back(w ? vec(*w) : json(nullptr));
    json points = json::array();
    for (const Vec3& p : r.interstice_points) points.push_back(vec(p));
    json fw = json::array();
    for (const Vec3& p : r.flower_witness) fw.push_back(vec(p));
    return json{
        {"passed", r.passed},
        {"angle_max_err", number(r.angle_max_err)},
        {"angle_failures", edges(r.angle_failures)},
        {"contact_graph_ok", r.contact_graph_ok},
        {"contact_missing", edges(r.contact.missing)},
        {"contact_extra", edges(r.contact.extra)},
        {"nested", edges(r.contact.nested)},
        {"non_adjacent_disjoint_ok", r.non_adjacent_disjoint_ok},
        {"offending_pairs", edges(r.offending_pairs)},
        {"min_non_adjacent_inversive", number(r.min_non_adjacent_inversive)},
        {"irreducible_ok", r.irreducible_ok},
        {"irreducible_witness", witness},
        {"interstice_count", r.interstice_count},
        {"interstice_faces", r.interstice_faces},
        {"interstice_points", points},
        {"flower_ok", r.flower_ok},
        {"flower_failures", r.flower_failures},
        {"flower_witness", fw},
        {"lemma26_ok", r.lemma26_ok},
        {"lemma26_checked", r.lemma26_checked},
        {"lemma27_ok", r.lemma27_ok},
        {"lemma27_checked", r.lemma27_checked},
        {"resolution", json{{"boundary_samples", r.boundary_samples}, {"grid", r.grid}}}};
}

json to_json(const HyperbolicPolyhedron& q)
{
    json hs = json::array();
    for (const HalfSpace& h : q.half_spaces) {
        hs.push_back(json{{"normal", vec(h.normal)}, {"offset", h.offset}});
    }
    json verts = json::array();
    for (const Vec3& v : q.vertices) verts.push_back(vec(v));
    json es = json::array();
    for (std::size_t i = 0; i < q.edges.size(); ++i) {
        es.push_back(json{{"edge", edge(q.edges[i])},
                          {"triangulation_edge", q.edge_planes[i]},
                          {"dihedral", number(q.dihedral[i])}});
    }
    json faces = json::array();
    for (const auto& f : q.complex.faces) faces.push_back(f);
    return json{{"half_spaces", hs},
                {"vertices", verts},
                {"faces", faces},
                {"edges", es},
                {"max_vertex_norm", q.max_vertex_norm},
                {"has_ideal_vertices", q.has_ideal_vertices}};
}

json to_json(const PolyhedronCheck& c)
{
    return json{{"ok", c.ok},
                {"max_dihedral_error", number(c.max_dihedral_error)},
                {"max_formula_gap", number(c.max_formula_gap)},
                {"convexity_slack", number(c.convexity_slack)},
                {"convex", c.convex},
                {"trivalent", c.trivalent},
                {"compact", c.compact},
                {"matches_dual", c.matches_dual}};
}

json to_json(const std::vector<DegenerationFunctional>& table)
{
    json out = json::array();
    for (const auto& d : table) {
        out.push_back(json{{"subset", d.subset},
                           {"value", d.value},
                           {"euler_char", d.euler_char},
                           {"link_size", d.link_size}});
    }
    return out;
}

json to_json(const CirclePattern& p)
{
    const Face& mf = p.triangulation.face(p.marked_face);
    json circles = json::array();
    for (int v = 0; v < p.size(); ++v) {
        const json c = p.mode == Mode::Spherical ? vec(p.centers[v])
                                                 : vec(Vec2(p.centers[v].head<2>()));
        circles.push_back(json{{"center", c}, {"radius", p.radii[v]}});
    }
    return json{{"mode", p.mode == Mode::Spherical ? "spherical" : "euclidean"},
                {"marked_face", json::array({mf[0], mf[1], mf[2]})},
                {"circles", circles},
                {"triangulation", to_json(p.triangulation)},
                {"theta", to_json(p.triangulation, p.theta)["theta"]}};
}

CirclePattern pattern_from_json(const json& j)
{
    CirclePattern p;
    const std::string mode = field(j, "mode").get<std::string>();
    if (mode == "spherical") p.mode = Mode::Spherical;
    else if (mode == "euclidean") p.mode = Mode::Euclidean;
    else bad("unknown mode '" + mode + "'");
    p.triangulation = triangulation_from_json(field(j, "triangulation"));
    p.theta = theta_from_json(json{{"theta", field(j, "theta")}}, p.triangulation);
    const json& mf = field(j, "marked_face");
    if (!mf.is_array() || mf.size() != 3) bad("marked_face must list three vertices");
    const auto f = p.triangulation.find_face(as_int(mf[0], "vertex"), as_int(mf[1], "vertex"),
                                             as_int(mf[2], "vertex"));
    if (!f) bad("marked_face is not a face");
    p.marked_face = *f;
    for (const json& c : field(j, "circles")) {
        const json& ctr = field(c, "center");
        const std::size_t dim = p.mode == Mode::Spherical ? 3 : 2;
        if (!ctr.is_array() || ctr.size() != dim) bad("center has the wrong dimension");
        Vec3 x = Vec3::Zero();
        for (std::size_t k = 0; k < dim; ++k) x[k] = as_double(ctr[k], "center coordinate");
        p.centers.push_back(x);
        p.radii.push_back(as_double(field(c, "radius"), "radius"));
    }
    if (p.size() != p.triangulation.vertex_count()) {
        throw Error(ErrorCode::MalformedPattern, "circle count does not match the triangulation");
    }
    return p;
}

json pattern_json(const Triangulation& t, const AngleAssignment& theta,
                  const EuclideanSolution& s)
{
    json j = to_json(CirclePattern::euclidean(t, theta, s.config));
    j["normalization"] = json{{"y4", s.config.y4},
                              {"y5", s.config.y5},
                              {"y6", s.config.y6},
                              {"unit_boundary_radii", s.config.unit_boundary_radii}};
    j["residuals"] = json{{"max_abs_K", number(s.report.max_abs_K)},
                          {"max_angle_error", number(s.max_angle_error)},
                          {"layout_disagreement", number(s.config.layout_disagreement)},
                          {"iterations", s.report.iterations},
                          {"fallback_steps", s.report.fallback_steps}};
    return j;
}

json pattern_json(const Triangulation& t, const AngleAssignment& theta,
                  const SphericalSolution& s)
{
    json j = pattern_json(t, theta, s.config);
    j["residuals"] = json{{"max_abs_K", number(s.report.max_abs_K)},
                          {"max_angle_error", number(s.max_angle_error)},
                          {"iterations", s.report.iterations},
                          {"continuation_steps", s.report.fallback_steps},
                          {"t_reached", s.t_reached}};
    return j;
}

json pattern_json(const Triangulation& t, const AngleAssignment& theta,
                  const SphericalConfiguration& cfg)
{
    json j = to_json(CirclePattern::spherical(t, theta, cfg));
    j["normalization"] = json{{"x5", cfg.x5}, {"x6", cfg.x6}};
    return j;
}

SphericalConfiguration spherical_config(const CirclePattern& p)
{
    if (p.mode != Mode::Spherical) bad("pattern is not spherical");
    SphericalConfiguration c;
    c.centers = p.centers;
    c.radii = p.radii;
    c.marked_face = p.marked_face;
    return c;
}

EuclideanConfiguration euclidean_config(const CirclePattern& p)
{
    if (p.mode != Mode::Euclidean) bad("pattern is not euclidean");
    EuclideanConfiguration c;
    for (const Vec3& x : p.centers) c.centers.push_back(x.head<2>());
    c.radii = p.radii;
    c.marked_face = p.marked_face;
    return c;
}

}  // namespace cpat::io
