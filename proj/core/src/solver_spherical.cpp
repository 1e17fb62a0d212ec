#include "cpat/solver.hpp"

#include "cpat/errors.hpp"
#include "face_util.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

namespace cpat {

using detail::face_angles;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMarkedRadius = kPi / 4;

double radius_of(double u) { return 2 * std::atan(std::exp(u)); }
double param_of(double r) { return std::log(std::tan(0.5 * r)); }

bool in_face(const Face& f, int v) { return f[0] == v || f[1] == v || f[2] == v; }

// ---------------------------------------------------------------------------
// Radius least squares: all cone angles 2 pi, marked radii fixed.

struct RadiusSystem {
    const Triangulation& t;
    const AngleAssignment& theta;
    std::vector<int> unknowns;
    std::vector<double> fixed;

    RadiusSystem(const Triangulation& tr, const AngleAssignment& th, int marked)
        : t(tr), theta(th), fixed(tr.vertex_count(), kMarkedRadius)
    {
        const Face& mf = t.face(marked);
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (!in_face(mf, v)) unknowns.push_back(v);
        }
    }

    std::vector<double> radii(const Eigen::VectorXd& u) const
    {
        std::vector<double> r = fixed;
        for (std::size_t i = 0; i < unknowns.size(); ++i) r[unknowns[i]] = radius_of(u[i]);
        return r;
    }

    bool residual(const Eigen::VectorXd& u, Eigen::VectorXd& out) const
    {
        const auto r = radii(u);
        out.setConstant(t.vertex_count(), 2 * kPi);
        for (int f = 0; f < t.face_count(); ++f) {
            const auto a = face_angles(Mode::Spherical, t, theta, r, f);
            for (int k = 0; k < 3; ++k) {
                if (std::isnan(a[k])) return false;
                out[t.face(f)[k]] -= a[k];
            }
        }
        return true;
    }
};

std::optional<Eigen::VectorXd> radius_lm(const RadiusSystem& sys, Eigen::VectorXd u, double tol,
                                         int max_iters, std::vector<double>* trace)
{
    const Eigen::Index n = u.size();
    const Eigen::Index m = sys.t.vertex_count();
    Eigen::VectorXd f(m);
    if (!sys.residual(u, f)) return std::nullopt;
    double mu = 1e-3;
    Eigen::VectorXd fp(m);
    for (int it = 0; it < max_iters; ++it) {
        if (trace) trace->push_back(f.norm());
        if (f.cwiseAbs().maxCoeff() <= tol) return u;
        Eigen::MatrixXd j(m, n);
        Eigen::VectorXd up = u;
        bool ok = true;
        for (Eigen::Index c = 0; c < n && ok; ++c) {
            const double h = 1e-7 * std::max(1.0, std::abs(u[c]));
            up[c] = u[c] + h;
            ok = sys.residual(up, fp);
            j.col(c) = (fp - f) / h;
            up[c] = u[c];
        }
        if (!ok) return std::nullopt;
        const Eigen::MatrixXd a = j.transpose() * j;
        const Eigen::VectorXd g = j.transpose() * f;
        bool accepted = false;
        while (mu < 1e12) {
            Eigen::MatrixXd damped = a;
            for (Eigen::Index d = 0; d < n; ++d) damped(d, d) += mu * (a(d, d) + 1e-12);
            const Eigen::VectorXd step = damped.ldlt().solve(-g);
            const Eigen::VectorXd trial = u + step;
            if (step.allFinite() && sys.residual(trial, fp) && fp.norm() < f.norm()) {
                u = trial;
                f = fp;
                mu = std::max(mu / 3, 1e-15);
                accepted = true;
                break;
            }
            mu *= 4;
        }
        if (!accepted) return f.cwiseAbs().maxCoeff() <= tol ? std::optional(u) : std::nullopt;
    }
    return f.cwiseAbs().maxCoeff() <= tol ? std::optional(u) : std::nullopt;
}

// ---------------------------------------------------------------------------
// Full (center, radius) system: one residual I_e - cos theta_e per edge.

struct State {
    std::vector<Vec3> centers;
    std::vector<double> radii;
};

struct EvSystem {
    const Triangulation& t;
    int a, b, c;  // marked face vertices
    std::vector<int> others;

    EvSystem(const Triangulation& tr, int marked) : t(tr)
    {
        const Face& mf = t.face(marked);
        a = mf[0];
        b = mf[1];
        c = mf[2];
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (!in_face(mf, v)) others.push_back(v);
        }
    }

    [[nodiscard]] Eigen::Index size() const
    {
        return static_cast<Eigen::Index>(3 + 3 * others.size());
    }

    // Moves the state by x in charts centred at `base`.
    State apply(const State& base, const Eigen::VectorXd& x) const
    {
        State s = base;
        {
            const Vec3& pb = base.centers[b];
            const double polar = std::atan2(pb.x(), -pb.z()) + x[0];
            s.centers[b] = Vec3(std::sin(polar), 0, -std::cos(polar));
        }
        auto move = [&](int v, double dx, double dy) {
            const auto [e1, e2] = tangent_frame(base.centers[v]);
            s.centers[v] = (base.centers[v] + dx * e1 + dy * e2).normalized();
        };
        move(c, x[1], x[2]);
        for (std::size_t i = 0; i < others.size(); ++i) {
            const int v = others[i];
            const Eigen::Index o = static_cast<Eigen::Index>(3 + 3 * i);
            move(v, x[o], x[o + 1]);
            s.radii[v] = radius_of(param_of(base.radii[v]) + x[o + 2]);
        }
        return s;
    }

    Eigen::VectorXd residual(const State& s, const std::vector<double>& cos_theta) const
    {
        Eigen::VectorXd r(t.edge_count());
        for (int e = 0; e < t.edge_count(); ++e) {
            const Edge& ed = t.edge(e);
            r[e] = inversive_distance(s.centers[ed.u], s.radii[ed.u], s.centers[ed.v],
                                      s.radii[ed.v]) -
                   cos_theta[e];
        }
        return r;
    }

    // Every face keeps the orientation of the normalized layout.
    bool oriented(const State& s) const
    {
        for (const Face& f : t.faces()) {
            const double det = s.centers[f[0]].dot(s.centers[f[1]].cross(s.centers[f[2]]));
            if (!(det < 0)) return false;
        }
        return s.centers[c].y() > 0 && s.centers[b].x() > 0;
    }
};

struct NewtonResult {
    bool ok = false;
    int iterations = 0;
    double residual = kInf;
    State state;
};

NewtonResult newton_ev(const EvSystem& sys, const State& start, const AngleAssignment& target,
                       double tol, int max_iters)
{
    std::vector<double> cos_theta(target.size());
    for (std::size_t e = 0; e < target.size(); ++e) cos_theta[e] = std::cos(target.theta[e]);
    NewtonResult res;
    res.state = start;
    State cur = start;
    Eigen::VectorXd r = sys.residual(cur, cos_theta);
    const Eigen::Index n = sys.size();
    for (int it = 0; it < max_iters; ++it) {
        res.residual = r.cwiseAbs().maxCoeff();
        if (res.residual <= tol) {
            res.ok = true;
            res.iterations = it;
            res.state = cur;
            return res;
        }
        Eigen::MatrixXd j(r.size(), n);
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        for (Eigen::Index col = 0; col < n; ++col) {
            const double h = 1e-7;
            x[col] = h;
            j.col(col) = (sys.residual(sys.apply(cur, x), cos_theta) - r) / h;
            x[col] = 0;
        }
        const Eigen::VectorXd step = j.colPivHouseholderQr().solve(-r);
        if (!step.allFinite()) break;
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 20; ++ls, lambda *= 0.5) {
            State trial = sys.apply(cur, lambda * step);
            const Eigen::VectorXd rt = sys.residual(trial, cos_theta);
            if (rt.allFinite() && rt.norm() < r.norm() && sys.oriented(trial)) {
                cur = std::move(trial);
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    res.residual = r.cwiseAbs().maxCoeff();
    res.ok = res.residual <= tol;
    res.iterations = max_iters;
    res.state = cur;
    return res;
}

}  // namespace

CurvatureReport spherical_curvature(const Triangulation& t, const AngleAssignment& theta,
                                    const std::vector<double>& radii)
{
    CurvatureReport rep;
    rep.sigma.assign(t.vertex_count(), 0.0);
    for (int f = 0; f < t.face_count(); ++f) {
        const auto a = face_angles(Mode::Spherical, t, theta, radii, f);
        for (int k = 0; k < 3; ++k) rep.sigma[t.face(f)[k]] += a[k];
    }
    rep.K.resize(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) {
        rep.K[v] = 2 * kPi - rep.sigma[v];
        rep.max_abs_K = std::max(rep.max_abs_K, std::isnan(rep.K[v]) ? kInf : std::abs(rep.K[v]));
    }
    return rep;
}

std::vector<Vec3> layout_spherical(const Triangulation& t, const AngleAssignment& theta,
                                   const std::vector<double>& radii, int marked_face,
                                   double tol_layout, double* disagreement)
{
    const int n = t.vertex_count();
    std::vector<Vec3> pos(n, Vec3::Zero());
    std::vector<char> placed(n, 0);
    auto dist = [&](int e) {
        const Edge& ed = t.edge(e);
        return center_distance(Mode::Spherical, radii[ed.u], radii[ed.v], theta[e]);
    };
    const Face& mf = t.face(marked_face);
    const double lab = dist(t.edge_id(mf[0], mf[1]));
    pos[mf[0]] = Vec3(0, 0, -1);
    pos[mf[1]] = Vec3(std::sin(lab), 0, -std::cos(lab));
    const auto pc = trilaterate(pos[mf[0]], pos[mf[1]], dist(t.edge_id(mf[0], mf[2])),
                                dist(t.edge_id(mf[1], mf[2])), -1);
    if (!pc) throw SolveError(ErrorCode::LayoutInconsistent, "marked face cannot be placed");
    pos[mf[2]] = *pc;
    placed[mf[0]] = placed[mf[1]] = placed[mf[2]] = 1;

    double worst = 0.0;
    std::vector<char> done(t.face_count(), 0);
    std::queue<int> queue;
    queue.push(marked_face);
    done[marked_face] = 1;
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop();
        const Face& fc = t.face(f);
        for (int k = 0; k < 3; ++k) {
            const int p = fc[k];
            const int q = fc[(k + 1) % 3];
            const int x = fc[(k + 2) % 3];
            if (!placed[p] || !placed[q]) continue;
            const auto w = trilaterate(pos[p], pos[q], dist(t.edge_id(p, x)), dist(t.edge_id(q, x)), -1);
            if (!w) throw SolveError(ErrorCode::LayoutInconsistent, "face cannot be placed");
            if (placed[x]) {
                worst = std::max(worst, (*w - pos[x]).norm());
            } else {
                pos[x] = *w;
                placed[x] = 1;
            }
        }
        for (int e : t.face_edges(f)) {
            const auto& ef = t.edge_faces(e);
            const int g = ef[0] == f ? ef[1] : ef[0];
            if (!done[g]) {
                done[g] = 1;
                queue.push(g);
            }
        }
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        const Edge& ed = t.edge(e);
        worst = std::max(worst, std::abs(sphere_distance(pos[ed.u], pos[ed.v]) - dist(e)));
    }
    if (disagreement) *disagreement = worst;
    if (worst > tol_layout) {
        std::ostringstream os;
        os << "spherical face placements disagree by " << worst;
        throw SolveError(ErrorCode::LayoutInconsistent, os.str());
    }
    return pos;
}

SphericalSolution solve_spherical(const Triangulation& t, const AngleAssignment& theta,
                                  const SolverOptions& opts, int marked_face)
{
    validate_angles(t, theta, true);
    const ConditionReport cr = classify(t, theta, AngleClass::M5);
    if (!cr.passed) {
        std::ostringstream os;
        os << "angles fail the spherical class";
        for (std::size_t i = 0; i < cr.violations.size() && i < 4; ++i) {
            os << "; " << to_string(cr.violations[i].tag) << " lhs=" << cr.violations[i].lhs
               << " rhs=" << cr.violations[i].rhs;
        }
        throw SolveError(ErrorCode::ConditionsViolated, os.str());
    }
    if (marked_face < 0 || marked_face >= t.face_count()) {
        throw Error(ErrorCode::InvalidInput, "marked face index out of range");
    }

    SphericalSolution sol;
    sol.base_theta = AngleAssignment::blend(AngleAssignment::constant(t, kPi / 3), theta,
                                            opts.base_weight);

    // Base problem: radii only, then develop.
    const RadiusSystem rsys(t, sol.base_theta, marked_face);
    const Eigen::Index nu = static_cast<Eigen::Index>(rsys.unknowns.size());
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> jitter(0.0, 0.5);
    std::optional<State> base;
    for (int start = 0; start < std::max(1, opts.base_starts) && !base; ++start) {
        Eigen::VectorXd u0 = Eigen::VectorXd::Constant(nu, param_of(kMarkedRadius));
        if (start > 0) {
            for (Eigen::Index i = 0; i < nu; ++i) u0[i] += jitter(rng);
        }
        const auto u = radius_lm(rsys, u0, 1e-13, opts.max_iters, &sol.report.trace);
        if (!u) continue;
        try {
            State s;
            s.radii = rsys.radii(*u);
            s.centers = layout_spherical(t, sol.base_theta, s.radii, marked_face, 1e-9);
            base = std::move(s);
        } catch (const Error&) {
            continue;
        }
    }
    if (!base) {
        throw SolveError(ErrorCode::BaseSolveFailed, "no start converged for the base problem");
    }

    // Continuation from the base angles to the target.
    const EvSystem ev(t, marked_face);
    State cur = *base;
    double tcur = 0.0;
    double dt = 0.1;
    const double ev_tol = 1e-12;
    int steps = 0;
    while (tcur < 1.0) {
        const double tnext = std::min(1.0, tcur + dt);
        const AngleAssignment target = AngleAssignment::blend(sol.base_theta, theta, tnext);
        NewtonResult nr = newton_ev(ev, cur, target, ev_tol, 30);
        if (nr.ok) {
            cur = std::move(nr.state);
            tcur = tnext;
            ++steps;
            if (nr.iterations <= 4) dt *= 2;
            continue;
        }
        dt *= 0.5;
        if (dt >= opts.min_step) continue;
        // Last resort at this parameter: re-solve radii and develop again.
        Eigen::VectorXd u0(nu);
        for (Eigen::Index i = 0; i < nu; ++i) u0[i] = param_of(cur.radii[rsys.unknowns[i]]);
        const RadiusSystem fsys(t, target, marked_face);
        const auto u = radius_lm(fsys, u0, 1e-13, opts.max_iters, nullptr);
        bool recovered = false;
        if (u) {
            try {
                State s;
                s.radii = fsys.radii(*u);
                s.centers = layout_spherical(t, target, s.radii, marked_face, 1e-9);
                cur = std::move(s);
                tcur = tnext;
                dt = opts.min_step * 4;
                ++sol.report.fallback_steps;
                recovered = true;
            } catch (const Error&) {
            }
        }
        if (!recovered) {
            SolveError err(ErrorCode::ContinuationStuck,
                           "continuation step fell below " + std::to_string(opts.min_step));
            err.t_reached = tcur;
            err.residual = nr.residual;
            try {
                const auto table = degeneration_table(t, theta, opts.diag_max, marked_face);
                if (!table.empty()) {
                    err.suspected_subset = table.front().subset;
                    err.suspected_value = table.front().value;
                }
            } catch (const Error&) {
            }
            throw err;
        }
    }
    sol.t_reached = tcur;
    sol.report.iterations = steps;

    SphericalConfiguration& cfg = sol.config;
    cfg.centers = cur.centers;
    cfg.radii = cur.radii;
    cfg.marked_face = marked_face;
    const Face& mf = t.face(marked_face);
    cfg.x5 = cfg.centers[mf[0]] == Vec3(0, 0, -1) && cfg.centers[mf[1]].y() == 0 &&
             cfg.centers[mf[1]].x() > 0 && cfg.centers[mf[2]].y() > 0;
    cfg.x6 = cfg.radii[mf[0]] == kMarkedRadius && cfg.radii[mf[1]] == kMarkedRadius &&
             cfg.radii[mf[2]] == kMarkedRadius;

    const CurvatureReport k = spherical_curvature(t, theta, cfg.radii);
    sol.report.sigma = k.sigma;
    sol.report.K = k.K;
    sol.report.max_abs_K = k.max_abs_K;
    const auto errs = spherical_angle_errors(t, theta, cfg.centers, cfg.radii);
    sol.max_angle_error = *std::max_element(errs.begin(), errs.end());
    return sol;
}

SphericalConfiguration balance_pattern(const SphericalConfiguration& cfg)
{
    std::vector<Cap> caps;
    caps.reserve(cfg.radii.size());
    for (std::size_t v = 0; v < cfg.radii.size(); ++v) caps.push_back(Cap{cfg.centers[v], cfg.radii[v]});
    const auto moved = balance_caps(caps);
    SphericalConfiguration out;
    out.marked_face = cfg.marked_face;
    for (const Cap& c : moved) {
        out.centers.push_back(c.center);
        out.radii.push_back(c.radius);
    }
    return out;
}

}  // namespace cpat
