#include "cli.hpp"

#include "render.hpp"

#include "cpat/conditions.hpp"
#include "cpat/errors.hpp"
#include "cpat/io.hpp"
#include "cpat/kernel.hpp"
#include "cpat/polyhedron.hpp"
#include "cpat/solver.hpp"
#include "cpat/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cpat::cli {

namespace {

using io::json;

/// Error raised by a pipeline stage, tagged with the exit code of the stage.
struct StageError {
    int code;
    std::string message;
};

int exit_for(ErrorCode c, int stage)
{
    switch (c) {
    case ErrorCode::ConditionsViolated:
        return kValidation;
    default:
        return stage;
    }
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty() || path == "-") out << text;
    else io::write_text(path, text);
}

template <class F>
auto load(F&& f) -> decltype(f())
{
    try {
        return f();
    }
    catch (const Error& e) {
        throw StageError{kValidation, std::string(to_string(e.code())) + ": " + e.what()};
    }
}

std::vector<double> parse_triple(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        }
        catch (const std::exception&) {
            throw StageError{kUsage, "not a number: '" + item + "'"};
        }
    }
    if (out.size() != 3) throw StageError{kUsage, "expected three comma separated values"};
    return out;
}

json error_json(const Error& e)
{
    json j{{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto* se = dynamic_cast<const SolveError*>(&e)) {
        j["suspected_subset"] = se->suspected_subset;
        j["suspected_value"] = se->suspected_value;
        j["residual"] = std::isfinite(se->residual) ? json(se->residual) : json(nullptr);
        j["t_reached"] = se->t_reached;
    }
    return j;
}

struct Args {
    // shared
    std::string tri;
    std::string theta;
    std::string pattern;
    std::string out;
    // validate
    std::string cls = "marden";
    int audit = 0;
    // solve
    std::string mode = "auto";
    int marked = -1;
    bool auto_mark = false;
    std::uint64_t seed = 1;
    double tol_K = 1e-10;
    int max_iters = 200;
    int diag_max = 6;
    bool balance = false;
    // verify
    int samples = 4096;
    int grid = 256;
    double tol_angle = 1e-8;
    // polyhedron
    std::string json_out;
    bool allow_ideal = false;
    // render
    RenderOptions render;
    // diagnose
    int top = 20;
    // probe-triple
    std::string radii;
    std::string angles;
};

int do_validate(const Args& a, std::ostream& out)
{
    const auto cls = parse_angle_class(a.cls);
    if (!cls) throw StageError{kUsage, "unknown class '" + a.cls + "'"};
    ConditionReport rep;
    if (*cls == AngleClass::Andreev) {
        const CellComplex p = load([&] { return io::complex_from_json(io::read_json(a.tri)); });
        const auto th = load([&] {
            return io::polyhedron_theta_from_json(io::read_json(a.theta), io::complex_edges(p));
        });
        rep = load([&] { return check_andreev(p, th); });
    }
    else {
        const Triangulation t = load([&] { return io::triangulation_from_json(io::read_json(a.tri)); });
        const AngleAssignment th = load([&] { return io::theta_from_json(io::read_json(a.theta), t); });
        rep = load([&] { return classify(t, th, *cls); });
        if (a.audit > 0) {
            const ConditionReport audit = load([&] { return audit_lemma21(t, th, a.audit); });
            rep.lemma21_audit = audit.lemma21_audit;
        }
    }
    emit(io::dump(io::to_json(rep)), a.out, out);
    return rep.passed ? kOk : kValidation;
}

SolverOptions solver_options(const Args& a)
{
    SolverOptions o;
    o.seed = a.seed;
    o.tol_K = a.tol_K;
    o.max_iters = a.max_iters;
    o.diag_max = a.diag_max;
    o.auto_mark = a.auto_mark;
    return o;
}

int do_solve(const Args& a, std::ostream& out, std::ostream& err)
{
    const Triangulation t = load([&] { return io::triangulation_from_json(io::read_json(a.tri)); });
    const AngleAssignment th = load([&] { return io::theta_from_json(io::read_json(a.theta), t); });
    load([&] { validate_angles(t, th); return 0; });

    std::string mode = a.mode;
    if (mode == "auto") {
        const ConditionReport g = classify(t, th, AngleClass::G5);
        if (g.passed) mode = "euclidean";
        else if (classify(t, th, AngleClass::M5).passed) mode = "spherical";
        else {
            emit(io::dump(io::to_json(g)), a.out, out);
            err << "angles satisfy neither the interstice nor the interstice-free conditions\n";
            return kValidation;
        }
    }
    const SolverOptions opts = solver_options(a);
    try {
        json doc;
        if (mode == "euclidean") {
            std::optional<int> marked;
            if (a.marked >= 0) marked = a.marked;
            doc = io::pattern_json(t, th, solve_euclidean(t, th, marked, opts));
        }
        else if (mode == "spherical") {
            SphericalSolution s = solve_spherical(t, th, opts, std::max(a.marked, 0));
            if (a.balance) {
                s.config = balance_pattern(s.config);
                doc = io::pattern_json(t, th, s);
                doc["normalization"]["balanced"] = true;
            }
            else {
                doc = io::pattern_json(t, th, s);
            }
        }
        else {
            throw StageError{kUsage, "unknown mode '" + mode + "'"};
        }
        emit(io::dump(doc), a.out, out);
        return kOk;
    }
    catch (const Error& e) {
        err << io::dump(error_json(e));
        return exit_for(e.code(), kSolve);
    }
}

int do_lift(const Args& a, std::ostream& out, std::ostream& err)
{
    const CirclePattern p = load([&] { return io::pattern_from_json(io::read_json(a.pattern)); });
    if (p.mode != Mode::Euclidean) throw StageError{kUsage, "lift expects a euclidean pattern"};
    try {
        SphericalConfiguration cfg = lift_to_sphere(io::euclidean_config(p));
        if (a.balance) cfg = balance_pattern(cfg);
        emit(io::dump(io::pattern_json(p.triangulation, p.theta, cfg)), a.out, out);
        return kOk;
    }
    catch (const Error& e) {
        err << io::dump(error_json(e));
        return kSolve;
    }
}

int do_verify(const Args& a, std::ostream& out, std::ostream& err)
{
    const CirclePattern p = load([&] { return io::pattern_from_json(io::read_json(a.pattern)); });
    VerifyOptions o;
    o.boundary_samples = a.samples;
    o.grid = a.grid;
    o.tol_angle = a.tol_angle;
    try {
        const VerificationReport rep = verify_pattern(p, o);
        emit(io::dump(io::to_json(rep)), a.out, out);
        return rep.passed ? kOk : kVerify;
    }
    catch (const Error& e) {
        err << io::dump(error_json(e));
        return kVerify;
    }
}

int do_polyhedron(const Args& a, std::ostream& out, std::ostream& err)
{
    const CirclePattern p = load([&] { return io::pattern_from_json(io::read_json(a.pattern)); });
    if (p.mode != Mode::Spherical) throw StageError{kUsage, "polyhedron expects a spherical pattern"};
    PolyhedronOptions o;
    o.allow_ideal = a.allow_ideal;
    try {
        const HyperbolicPolyhedron q = build_polyhedron(p.triangulation, io::spherical_config(p), o);
        const PolyhedronCheck c = check_polyhedron(q, p.triangulation, p.theta);
        if (!a.json_out.empty()) {
            json j = io::to_json(q);
            j["check"] = io::to_json(c);
            io::write_text(a.json_out, io::dump(j));
        }
        emit(export_obj(q), a.out, out);
        if (!c.ok) {
            err << io::dump(io::to_json(c));
            return kPolyhedron;
        }
        return kOk;
    }
    catch (const Error& e) {
        err << io::dump(error_json(e));
        return kPolyhedron;
    }
}

int do_render(const Args& a, std::ostream& out)
{
    const CirclePattern p = load([&] { return io::pattern_from_json(io::read_json(a.pattern)); });
    if (p.mode != Mode::Euclidean) throw StageError{kUsage, "render expects a euclidean pattern"};
    emit(render_svg(p, a.render), a.out, out);
    return kOk;
}

int do_diagnose(const Args& a, std::ostream& out)
{
    const Triangulation t = load([&] { return io::triangulation_from_json(io::read_json(a.tri)); });
    const AngleAssignment th = load([&] { return io::theta_from_json(io::read_json(a.theta), t); });
    std::optional<int> marked;
    if (a.marked >= 0) marked = a.marked;
    auto table = load([&] { return degeneration_table(t, th, a.diag_max, marked); });
    if (a.top >= 0 && static_cast<int>(table.size()) > a.top) table.resize(a.top);
    json j{{"max_size", a.diag_max}, {"entries", io::to_json(table)}};
    if (marked) j["marked_face"] = *marked;
    emit(io::dump(j), a.out, out);
    return kOk;
}

int do_probe(const Args& a, std::ostream& out)
{
    TripleSpec spec;
    if (a.mode == "spherical") spec.mode = Mode::Spherical;
    else if (a.mode == "euclidean" || a.mode == "auto") spec.mode = Mode::Euclidean;
    else throw StageError{kUsage, "unknown mode '" + a.mode + "'"};
    const auto r = parse_triple(a.radii);
    const auto th = parse_triple(a.angles);
    for (int i = 0; i < 3; ++i) {
        spec.r[i] = r[i];
        spec.theta[i] = th[i];
    }
    load([&] { validate_spec(spec); return 0; });
    const TripleGeometry g = triple_geometry(spec);
    json j{{"mode", spec.mode == Mode::Spherical ? "spherical" : "euclidean"},
           {"l", g.l},
           {"feasible", g.feasible},
           {"margin", g.margin},
           {"lambda", g.lambda}};
    if (g.feasible) j["alpha"] = g.alpha;
    if (g.phi) j["phi"] = *g.phi;
    emit(io::dump(j), a.out, out);
    return g.feasible ? kOk : kValidation;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Circle patterns with prescribed intersection angles"};
    app.require_subcommand(1);
    Args a;

    auto* validate = app.add_subcommand("validate", "Check the angle conditions");
    validate->add_option("triangulation", a.tri, "Triangulation (or polyhedron for andreev)")->required();
    validate->add_option("theta", a.theta, "Edge angles")->required();
    validate->add_option("--class", a.cls, "marden, m5, g5 or andreev");
    validate->add_option("--audit", a.audit, "Also audit non-facial cycles up to this length");
    validate->add_option("--out", a.out, "Report path");

    auto* solve = app.add_subcommand("solve", "Compute a circle pattern");
    solve->add_option("triangulation", a.tri)->required();
    solve->add_option("theta", a.theta)->required();
    solve->add_option("--mode", a.mode, "auto, euclidean or spherical");
    solve->add_option("--marked-face", a.marked, "Face id to host infinity / normalize");
    solve->add_flag("--auto-mark", a.auto_mark, "Pick the face with the smallest angle sum");
    solve->add_option("--seed", a.seed);
    solve->add_option("--tol-K", a.tol_K);
    solve->add_option("--max-iters", a.max_iters);
    solve->add_option("--diag-max", a.diag_max);
    solve->add_flag("--balance", a.balance, "Apply the balancing Mobius map (spherical)");
    solve->add_option("--out", a.out, "Pattern path");

    auto* lift = app.add_subcommand("lift", "Project a planar pattern to the sphere");
    lift->add_option("pattern", a.pattern)->required();
    lift->add_flag("--balance", a.balance);
    lift->add_option("--out", a.out);

    auto* verify = app.add_subcommand("verify", "Check a pattern");
    verify->add_option("--pattern,pattern", a.pattern)->required();
    verify->add_option("--samples,--resolution", a.samples, "Boundary samples per circle");
    verify->add_option("--grid", a.grid, "Interior grid resolution per disk");
    verify->add_option("--tol-angle,--tol", a.tol_angle);
    verify->add_option("--out", a.out);

    auto* poly = app.add_subcommand("polyhedron", "Build the hyperbolic polyhedron");
    poly->add_option("--pattern,pattern", a.pattern, "Spherical pattern");
    poly->add_option("--out", a.out, "OBJ path");
    poly->add_option("--json", a.json_out, "Polyhedron dump with half-spaces");
    poly->add_flag("--allow-ideal", a.allow_ideal, "Report vertices at infinity instead of failing");

    auto* render = app.add_subcommand("render", "SVG of a planar pattern");
    render->add_option("pattern", a.pattern)->required();
    render->add_option("--out", a.out);
    render->add_option("--size", a.render.size);
    render->add_option("--stroke-width", a.render.stroke_width);
    render->add_flag("--contacts", a.render.show_contacts, "Draw the contact graph");
    render->add_flag("--star", a.render.show_star, "Outline the center triangles");

    auto* diagnose = app.add_subcommand("diagnose", "Degeneration functional table");
    diagnose->add_option("triangulation", a.tri)->required();
    diagnose->add_option("theta", a.theta)->required();
    diagnose->add_option("--max-size", a.diag_max);
    diagnose->add_option("--marked-face", a.marked);
    diagnose->add_option("--top", a.top);
    diagnose->add_option("--out", a.out);

    auto* probe = app.add_subcommand("probe-triple", "Geometry of three circles");
    probe->add_option("--mode", a.mode);
    probe->add_option("--r", a.radii, "r0,r1,r2")->required();
    probe->add_option("--theta", a.angles, "t0,t1,t2")->required();
    probe->add_option("--out", a.out);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return do_validate(a, out);
        if (*solve) return do_solve(a, out, err);
        if (*lift) return do_lift(a, out, err);
        if (*verify) return do_verify(a, out, err);
        if (*poly) {
            if (a.pattern.empty()) throw StageError{kUsage, "polyhedron needs a pattern"};
            return do_polyhedron(a, out, err);
        }
        if (*render) return do_render(a, out);
        if (*diagnose) return do_diagnose(a, out);
        if (*probe) return do_probe(a, out);
    }
    catch (const StageError& e) {
        err << e.message << "\n";
        return e.code;
    }
    catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

}  // namespace cpat::cli
