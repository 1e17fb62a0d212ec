#include "cpat/solver.hpp"

#include "cpat/errors.hpp"
#include "face_util.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace cpat {

using detail::face_angles;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(const std::vector<Violation>& vs)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < vs.size() && i < 4; ++i) {
        if (i) os << "; ";
        os << to_string(vs[i].tag) << " lhs=" << vs[i].lhs << " rhs=" << vs[i].rhs;
    }
    if (vs.size() > 4) os << "; ...";
    return os.str();
}

double euclid_len(double rj, double rk, double theta)
{
    return std::sqrt(std::max(0.0, rj * rj + rk * rk + 2 * std::cos(theta) * rj * rk));
}

struct EuclideanSystem {
    const Triangulation& t;
    const AngleAssignment& theta;
    int marked;
    std::vector<int> unknowns;  // vertex ids
    std::vector<int> slot;      // vertex -> unknown index or -1

    EuclideanSystem(const Triangulation& tr, const AngleAssignment& th, int m)
        : t(tr), theta(th), marked(m), slot(tr.vertex_count(), -1)
    {
        const Face& mf = t.face(marked);
        for (int v = 0; v < t.vertex_count(); ++v) {
            if (v == mf[0] || v == mf[1] || v == mf[2]) continue;
            slot[v] = static_cast<int>(unknowns.size());
            unknowns.push_back(v);
        }
    }

    std::vector<double> radii(const Eigen::VectorXd& u) const
    {
        std::vector<double> r(t.vertex_count(), 1.0);
        for (std::size_t i = 0; i < unknowns.size(); ++i) r[unknowns[i]] = std::exp(u[i]);
        return r;
    }

    // Curvatures at the unknown vertices; returns false if a face is infeasible.
    bool residual(const Eigen::VectorXd& u, Eigen::VectorXd& out) const
    {
        const auto r = radii(u);
        out.setConstant(static_cast<Eigen::Index>(unknowns.size()), 2 * kPi);
        for (int f = 0; f < t.face_count(); ++f) {
            if (f == marked) continue;
            const auto a = face_angles(Mode::Euclidean, t, theta, r, f);
            const Face& fc = t.face(f);
            for (int k = 0; k < 3; ++k) {
                if (std::isnan(a[k])) return false;
                const int s = slot[fc[k]];
                if (s >= 0) out[s] -= a[k];
            }
        }
        return true;
    }

    double cone_angle(const std::vector<double>& r, int v) const
    {
        double s = 0;
        for (int f : t.vertex_faces(v)) {
            if (f == marked) continue;
            const detail::Corner c = detail::corner_at(t, f, v);
            s += inner_angle_at(Mode::Euclidean, r[c.v[0]], r[c.v[1]], r[c.v[2]], theta[c.e[0]],
                                theta[c.e[1]], theta[c.e[2]]);
        }
        return s;
    }
};

// One Gauss-Seidel sweep: each unknown vertex gets the radius making its
// cone angle 2 pi with the others fixed.
void bisection_sweep(const EuclideanSystem& sys, Eigen::VectorXd& u)
{
    for (std::size_t i = 0; i < sys.unknowns.size(); ++i) {
        const int v = sys.unknowns[i];
        auto r = sys.radii(u);
        auto sigma_at = [&](double lu) {
            r[v] = std::exp(lu);
            return sys.cone_angle(r, v);
        };
        double lo = u[i] - 1;
        double hi = u[i] + 1;
        int guard = 0;
        while (sigma_at(lo) < 2 * kPi && guard++ < 60) lo -= 2;
        guard = 0;
        while (sigma_at(hi) > 2 * kPi && guard++ < 60) hi += 2;
        const double slo = sigma_at(lo);
        const double shi = sigma_at(hi);
        if (!(slo >= 2 * kPi && shi <= 2 * kPi)) continue;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (sigma_at(mid) > 2 * kPi) lo = mid;
            else hi = mid;
        }
        u[i] = 0.5 * (lo + hi);
    }
}

Eigen::MatrixXd fd_jacobian(const EuclideanSystem& sys, const Eigen::VectorXd& u,
                            const Eigen::VectorXd& f0, bool& ok)
{
    const Eigen::Index n = u.size();
    Eigen::MatrixXd j(n, n);
    Eigen::VectorXd up = u;
    Eigen::VectorXd fp(n);
    ok = true;
    for (Eigen::Index c = 0; c < n; ++c) {
        const double h = 1e-7 * std::max(1.0, std::abs(u[c]));
        up[c] = u[c] + h;
        if (!sys.residual(up, fp)) {
            ok = false;
            return j;
        }
        j.col(c) = (fp - f0) / h;
        up[c] = u[c];
    }
    return j;
}

}  // namespace

int choose_marked_face(const Triangulation& t, const AngleAssignment& theta,
                       std::optional<int> requested, bool auto_mark)
{
    auto face_sum = [&](int f) {
        const auto& fe = t.face_edges(f);
        return theta[fe[0]] + theta[fe[1]] + theta[fe[2]];
    };
    const int want = requested.value_or(0);
    if (want < 0 || want >= t.face_count()) {
        throw Error(ErrorCode::InvalidInput, "marked face index out of range");
    }
    if (face_sum(want) < kPi - 1e-12) return want;
    if (!auto_mark) {
        throw SolveError(ErrorCode::ConditionsViolated,
                         "marked face " + std::to_string(want) +
                             " has angle sum >= pi and cannot host infinity");
    }
    int best = 0;
    for (int f = 1; f < t.face_count(); ++f) {
        if (face_sum(f) < face_sum(best)) best = f;
    }
    if (!(face_sum(best) < kPi - 1e-12)) {
        throw SolveError(ErrorCode::ConditionsViolated, "no face has angle sum < pi");
    }
    return best;
}

CurvatureReport euclidean_curvature(const Triangulation& t, const AngleAssignment& theta,
                                    const std::vector<double>& radii, int marked_face)
{
    CurvatureReport rep;
    rep.sigma.assign(t.vertex_count(), 0.0);
    for (int f = 0; f < t.face_count(); ++f) {
        if (f == marked_face) continue;
        const auto a = face_angles(Mode::Euclidean, t, theta, radii, f);
        for (int k = 0; k < 3; ++k) rep.sigma[t.face(f)[k]] += a[k];
    }
    rep.K.assign(t.vertex_count(), kNaN);
    const Face& mf = t.face(marked_face);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (v == mf[0] || v == mf[1] || v == mf[2]) {
            rep.sigma[v] = kNaN;
            continue;
        }
        rep.K[v] = 2 * kPi - rep.sigma[v];
        rep.max_abs_K = std::max(rep.max_abs_K, std::isnan(rep.K[v]) ? kInf : std::abs(rep.K[v]));
    }
    return rep;
}

std::vector<Vec2> layout_euclidean(const Triangulation& t, const AngleAssignment& theta,
                                   const std::vector<double>& radii, int marked_face,
                                   double tol_layout, double* disagreement)
{
    const int n = t.vertex_count();
    std::vector<Vec2> pos(n, Vec2::Zero());
    std::vector<char> placed(n, 0);
    double worst = 0.0;

    const int seed = marked_face == 0 ? (t.face_count() > 1 ? 1 : 0) : 0;
    {
        const Face& f = t.face(seed);
        const auto& fe = t.face_edges(seed);
        const auto a = face_angles(Mode::Euclidean, t, theta, radii, seed);
        const double l2 = euclid_len(radii[f[0]], radii[f[1]], theta[fe[2]]);
        const double l1 = euclid_len(radii[f[2]], radii[f[0]], theta[fe[1]]);
        pos[f[0]] = Vec2(0, 0);
        pos[f[1]] = Vec2(l2, 0);
        pos[f[2]] = Vec2(l1 * std::cos(a[0]), l1 * std::sin(a[0]));
        placed[f[0]] = placed[f[1]] = placed[f[2]] = 1;
    }

    std::vector<char> done(t.face_count(), 0);
    std::queue<int> queue;
    queue.push(seed);
    done[seed] = 1;
    while (!queue.empty()) {
        const int f = queue.front();
        queue.pop();
        const auto a = face_angles(Mode::Euclidean, t, theta, radii, f);
        if (std::isnan(a[0]) || std::isnan(a[1]) || std::isnan(a[2])) {
            throw SolveError(ErrorCode::LayoutInconsistent, "infeasible face during layout");
        }
        const Face& fc = t.face(f);
        const auto& fe = t.face_edges(f);
        for (int k = 0; k < 3; ++k) {
            const int p = fc[k];
            const int q = fc[(k + 1) % 3];
            const int x = fc[(k + 2) % 3];
            if (!placed[p] || !placed[q]) continue;
            const Vec2 d = pos[q] - pos[p];
            const double lpx = euclid_len(radii[p], radii[x], theta[fe[(k + 1) % 3]]);
            const double c = std::cos(a[k]);
            const double s = std::sin(a[k]);
            const Vec2 rot(c * d.x() - s * d.y(), s * d.x() + c * d.y());
            const Vec2 predicted = pos[p] + rot * (lpx / d.norm());
            if (placed[x]) {
                worst = std::max(worst, (predicted - pos[x]).norm());
            } else {
                pos[x] = predicted;
                placed[x] = 1;
            }
        }
        for (int e : fe) {
            const auto& ef = t.edge_faces(e);
            const int g = ef[0] == f ? ef[1] : ef[0];
            if (g == marked_face || done[g]) continue;
            done[g] = 1;
            queue.push(g);
        }
    }
    // Every edge length must match the placed centers.
    for (int f = 0; f < t.face_count(); ++f) {
        if (f == marked_face) continue;
        const Face& fc = t.face(f);
        const auto& fe = t.face_edges(f);
        for (int k = 0; k < 3; ++k) {
            const double want = euclid_len(radii[fc[(k + 1) % 3]], radii[fc[(k + 2) % 3]], theta[fe[k]]);
            const double got = (pos[fc[(k + 1) % 3]] - pos[fc[(k + 2) % 3]]).norm();
            worst = std::max(worst, std::abs(want - got));
        }
    }

    double diameter = 0.0;
    for (int v = 0; v < n; ++v) {
        for (int w = v + 1; w < n; ++w) diameter = std::max(diameter, (pos[v] - pos[w]).norm());
    }
    if (disagreement) *disagreement = worst;
    if (worst > tol_layout * std::max(1.0, diameter)) {
        std::ostringstream os;
        os << "face placements disagree by " << worst;
        throw SolveError(ErrorCode::LayoutInconsistent, os.str());
    }

    // z_a = 0, z_b on the positive real axis, Im z_c > 0.
    const Face& mf = t.face(marked_face);
    const Vec2 za = pos[mf[0]];
    const Vec2 db = pos[mf[1]] - za;
    const double ang = std::atan2(db.y(), db.x());
    const double c = std::cos(-ang);
    const double s = std::sin(-ang);
    for (Vec2& p : pos) {
        const Vec2 d = p - za;
        p = Vec2(c * d.x() - s * d.y(), s * d.x() + c * d.y());
    }
    pos[mf[0]] = Vec2(0, 0);
    pos[mf[1]].y() = 0;
    if (pos[mf[2]].y() < 0) {
        for (Vec2& p : pos) p.y() = -p.y();
    }
    return pos;
}

EuclideanSolution solve_euclidean(const Triangulation& t, const AngleAssignment& theta,
                                  std::optional<int> marked_face, const SolverOptions& opts)
{
    const ConditionReport cr = classify(t, theta, AngleClass::G5);
    if (!cr.passed) {
        throw SolveError(ErrorCode::ConditionsViolated,
                         "angles fail the euclidean class: " + describe(cr.violations));
    }
    const int marked = choose_marked_face(t, theta, marked_face, opts.auto_mark);
    EuclideanSystem sys(t, theta, marked);
    const Eigen::Index n = static_cast<Eigen::Index>(sys.unknowns.size());

    EuclideanSolution sol;
    CurvatureReport& rep = sol.report;
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd f(n);
    if (!sys.residual(u, f)) {
        throw SolveError(ErrorCode::Stalled, "initial radii give an infeasible face");
    }

    auto max_abs = [](const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; };
    int polish = 0;
    int stagnant = 0;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        const double fnorm = f.norm();
        rep.trace.push_back(fnorm);
        if (max_abs(f) <= opts.tol_K) {
            if (polish >= 2 || max_abs(f) < 1e-14) break;
            ++polish;
        }
        bool jac_ok = false;
        const Eigen::MatrixXd j = fd_jacobian(sys, u, f, jac_ok);
        bool accepted = false;
        if (jac_ok) {
            const Eigen::VectorXd step = j.colPivHouseholderQr().solve(-f);
            if (step.allFinite()) {
                double lambda = 1.0;
                Eigen::VectorXd trial_f(n);
                for (int ls = 0; ls < 30; ++ls, lambda *= 0.5) {
                    const Eigen::VectorXd trial = u + lambda * step;
                    if (sys.residual(trial, trial_f) && trial_f.norm() < fnorm) {
                        u = trial;
                        f = trial_f;
                        accepted = true;
                        break;
                    }
                }
            }
        }
        if (!accepted) {
            if (max_abs(f) <= opts.tol_K) break;  // converged, polishing failed
            ++rep.fallback_steps;
            Eigen::VectorXd trial = u;
            bisection_sweep(sys, trial);
            Eigen::VectorXd trial_f(n);
            if (sys.residual(trial, trial_f) && trial_f.norm() < fnorm) {
                u = trial;
                f = trial_f;
                stagnant = 0;
            } else if (++stagnant >= 3) {
                break;
            }
        }
    }
    rep.iterations = it;

    const auto radii = sys.radii(u);
    const CurvatureReport final_rep = euclidean_curvature(t, theta, radii, marked);
    rep.sigma = final_rep.sigma;
    rep.K = final_rep.K;
    rep.max_abs_K = final_rep.max_abs_K;
    if (!(rep.max_abs_K <= opts.tol_K)) {
        SolveError err(ErrorCode::Stalled, "curvature residual stalled at " +
                                               std::to_string(rep.max_abs_K));
        err.residual = rep.max_abs_K;
        try {
            const auto table = degeneration_table(t, theta, opts.diag_max, marked);
            if (!table.empty()) {
                err.suspected_subset = table.front().subset;
                err.suspected_value = table.front().value;
            }
        } catch (const Error&) {
            // The diagnostic is best effort.
        }
        throw err;
    }

    EuclideanConfiguration& cfg = sol.config;
    cfg.marked_face = marked;
    cfg.unit_boundary_radii = radii;
    cfg.centers = layout_euclidean(t, theta, radii, marked, opts.tol_layout,
                                   &cfg.layout_disagreement);
    double total = 0;
    for (double r : radii) total += r;
    cfg.radii.resize(radii.size());
    for (std::size_t v = 0; v < radii.size(); ++v) cfg.radii[v] = radii[v] / total;
    for (Vec2& p : cfg.centers) p /= total;
    const Face& mf = t.face(marked);
    cfg.y4 = cfg.centers[mf[0]].norm() == 0 && cfg.centers[mf[1]].x() > 0 &&
             cfg.centers[mf[1]].y() == 0 && cfg.centers[mf[2]].y() > 0;
    cfg.y5 = cfg.radii[mf[0]] == cfg.radii[mf[1]] && cfg.radii[mf[1]] == cfg.radii[mf[2]];
    double check = 0;
    for (double r : cfg.radii) check += r;
    cfg.y6 = std::abs(check - 1) < 1e-12;

    const auto errs = euclidean_angle_errors(t, theta, cfg.centers, cfg.radii);
    sol.max_angle_error = errs.empty() ? 0.0 : *std::max_element(errs.begin(), errs.end());
    return sol;
}

SphericalConfiguration lift_to_sphere(const EuclideanConfiguration& cfg)
{
    SphericalConfiguration out;
    out.marked_face = cfg.marked_face;
    out.centers.reserve(cfg.centers.size());
    out.radii.reserve(cfg.radii.size());
    for (std::size_t v = 0; v < cfg.centers.size(); ++v) {
        const Cap c = lift_disk(PlaneDisk{cfg.centers[v], cfg.radii[v]});
        out.centers.push_back(c.center);
        out.radii.push_back(c.radius);
    }
    return out;
}

std::vector<double> euclidean_angle_errors(const Triangulation& t, const AngleAssignment& theta,
                                           const std::vector<Vec2>& centers,
                                           const std::vector<double>& radii)
{
    std::vector<double> out(t.edge_count());
    for (int e = 0; e < t.edge_count(); ++e) {
        const Edge& ed = t.edge(e);
        out[e] = angle_error(
            inversive_distance(centers[ed.u], radii[ed.u], centers[ed.v], radii[ed.v]), theta[e]);
    }
    return out;
}

std::vector<double> spherical_angle_errors(const Triangulation& t, const AngleAssignment& theta,
                                           const std::vector<Vec3>& centers,
                                           const std::vector<double>& radii)
{
    std::vector<double> out(t.edge_count());
    for (int e = 0; e < t.edge_count(); ++e) {
        const Edge& ed = t.edge(e);
        out[e] = angle_error(
            inversive_distance(centers[ed.u], radii[ed.u], centers[ed.v], radii[ed.v]), theta[e]);
    }
    return out;
}

}  // namespace cpat
