#include "cpat/kernel.hpp"

#include "cpat/errors.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cpat {

using detail::CompensatedSum;
using detail::sqr;

namespace {

struct Idx {
    int i, j, k;
};

constexpr Idx kCyc[3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};

// 1 - cos l and 1 + cos l for the spherical edge opposite i, in forms that do
// not cancel for short or nearly antipodal edges.
std::pair<double, double> spherical_one_minus_plus_cos(double rj, double rk, double theta)
{
    const double sj = std::sin(rj);
    const double sk = std::sin(rk);
    const double minus = 2 * sqr(std::sin(0.5 * (rj - rk))) + 2 * sqr(std::cos(0.5 * theta)) * sj * sk;
    const double plus = 2 * sqr(std::cos(0.5 * (rj + rk))) + 2 * sqr(std::sin(0.5 * theta)) * sj * sk;
    return {minus, plus};
}

double euclidean_l2(double rj, double rk, double theta)
{
    return rj * rj + rk * rk + 2 * std::cos(theta) * rj * rk;
}

double euclidean_margin(const std::array<double, 3>& r, const std::array<double, 3>& th)
{
    CompensatedSum s;
    for (const auto& [i, j, k] : kCyc) {
        const double si = std::sin(th[i]);
        s.add(si * si * r[j] * r[j] * r[k] * r[k]);
    }
    for (const auto& [i, j, k] : kCyc) {
        const double lambda = std::cos(th[i]) + std::cos(th[j]) * std::cos(th[k]);
        s.add(2 * lambda * r[j] * r[k] * r[i] * r[i]);
    }
    return s.value();
}

double spherical_margin(const std::array<double, 3>& r, const std::array<double, 3>& th)
{
    std::array<double, 3> a{};
    std::array<double, 3> x{};
    for (int m = 0; m < 3; ++m) {
        a[m] = std::cos(r[m]);
        x[m] = std::sin(r[m]);
    }
    const double zeta = sqr(std::sin(th[0])) + sqr(std::sin(th[1])) + sqr(std::sin(th[2])) -
                        (2 + 2 * std::cos(th[0]) * std::cos(th[1]) * std::cos(th[2]));
    CompensatedSum s;
    for (const auto& [i, j, k] : kCyc) {
        s.add(sqr(std::sin(th[i])) * a[i] * a[i] * x[j] * x[j] * x[k] * x[k]);
    }
    s.add(zeta * x[0] * x[0] * x[1] * x[1] * x[2] * x[2]);
    for (const auto& [i, j, k] : kCyc) {
        const double lambda = std::cos(th[i]) + std::cos(th[j]) * std::cos(th[k]);
        s.add(2 * lambda * a[j] * a[k] * x[j] * x[k] * x[i] * x[i]);
    }
    return s.value();
}

double margin_of(Mode mode, const std::array<double, 3>& r, const std::array<double, 3>& th)
{
    return mode == Mode::Spherical ? spherical_margin(r, th) : euclidean_margin(r, th);
}

}  // namespace

double checked_acos(double x)
{
    if (std::isnan(x) || x > 1 + kClampEps || x < -1 - kClampEps) {
        throw Error(ErrorCode::DomainError, "arccos argument " + std::to_string(x) +
                                                " outside [-1, 1]");
    }
    return std::acos(std::clamp(x, -1.0, 1.0));
}

void validate_spec(const TripleSpec& spec)
{
    for (int m = 0; m < 3; ++m) {
        const double r = spec.r[m];
        const double t = spec.theta[m];
        if (!std::isfinite(r) || !std::isfinite(t)) {
            throw Error(ErrorCode::InvalidInput, "non-finite triple data");
        }
        if (!(r > 0)) throw Error(ErrorCode::InvalidInput, "radius must be positive");
        if (spec.mode == Mode::Spherical) {
            if (!(r < kPi)) throw Error(ErrorCode::InvalidInput, "spherical radius must be < pi");
            if (!(t > 0 && t < kPi)) {
                throw Error(ErrorCode::InvalidInput, "spherical angles must lie in (0, pi)");
            }
        } else if (!(t >= 0 && t < kPi)) {
            throw Error(ErrorCode::InvalidInput, "angles must lie in [0, pi)");
        }
    }
}

double edge_length(const TripleSpec& spec, int which)
{
    validate_spec(spec);
    if (which < 0 || which > 2) throw Error(ErrorCode::InvalidInput, "edge index must be 0..2");
    const auto [i, j, k] = kCyc[which];
    (void)i;
    if (spec.mode == Mode::Euclidean) {
        return std::sqrt(std::max(0.0, euclidean_l2(spec.r[j], spec.r[k], spec.theta[which])));
    }
    // arccos(cos r_j cos r_k - cos theta sin r_j sin r_k), evaluated through
    // the half-angle forms of 1 -/+ cos l.
    const auto [minus, plus] = spherical_one_minus_plus_cos(spec.r[j], spec.r[k], spec.theta[which]);
    if (minus < -2 * kClampEps || plus < -2 * kClampEps) {
        throw Error(ErrorCode::DomainError, "spherical edge length out of domain");
    }
    return 2 * std::atan2(std::sqrt(std::max(0.0, minus)), std::sqrt(std::max(0.0, plus)));
}

double center_distance(Mode mode, double rj, double rk, double theta)
{
    if (mode == Mode::Euclidean) return std::sqrt(std::max(0.0, euclidean_l2(rj, rk, theta)));
    const auto [minus, plus] = spherical_one_minus_plus_cos(rj, rk, theta);
    return 2 * std::atan2(std::sqrt(std::max(0.0, minus)), std::sqrt(std::max(0.0, plus)));
}

std::array<double, 3> edge_lengths(const TripleSpec& spec)
{
    return {edge_length(spec, 0), edge_length(spec, 1), edge_length(spec, 2)};
}

Feasibility feasibility(const TripleSpec& spec)
{
    validate_spec(spec);
    Feasibility f;
    f.margin = margin_of(spec.mode, spec.r, spec.theta);
    f.feasible = f.margin > 0;
    return f;
}

double inner_angle_at(Mode mode, double ri, double rj, double rk, double theta_i,
                      double theta_j, double theta_k)
{
    const std::array<double, 3> r{ri, rj, rk};
    const std::array<double, 3> th{theta_i, theta_j, theta_k};
    const double m = margin_of(mode, r, th);
    if (!(m > 0)) return std::nan("");
    if (mode == Mode::Euclidean) {
        const double li2 = euclidean_l2(rj, rk, theta_i);
        const double lj2 = euclidean_l2(rk, ri, theta_j);
        const double lk2 = euclidean_l2(ri, rj, theta_k);
        // tan(alpha) = 4 area / (lj^2 + lk^2 - li^2), and 16 area^2 = 4 m.
        return std::atan2(2 * std::sqrt(m), lj2 + lk2 - li2);
    }
    // Gram determinant and law of cosines rewritten in v = 1 - cos l.
    const double vi = spherical_one_minus_plus_cos(rj, rk, theta_i).first;
    const double vj = spherical_one_minus_plus_cos(rk, ri, theta_j).first;
    const double vk = spherical_one_minus_plus_cos(ri, rj, theta_k).first;
    const double g = 2 * (vi * vj + vj * vk + vk * vi) - vi * vi - vj * vj - vk * vk -
                     2 * vi * vj * vk;
    return std::atan2(std::sqrt(std::max(g, 0.0)), vj + vk - vi - vj * vk);
}

std::array<double, 3> inner_angles(const TripleSpec& spec)
{
    const Feasibility f = feasibility(spec);
    if (!f.feasible) {
        throw Error(ErrorCode::Infeasible,
                    "triple is not realizable (margin " + std::to_string(f.margin) + ")");
    }
    std::array<double, 3> out{};
    for (const auto& [i, j, k] : kCyc) {
        out[i] = inner_angle_at(spec.mode, spec.r[i], spec.r[j], spec.r[k], spec.theta[i],
                                spec.theta[j], spec.theta[k]);
    }
    return out;
}

TripleGeometry triple_geometry(const TripleSpec& spec)
{
    TripleGeometry g;
    const Feasibility f = feasibility(spec);
    g.margin = f.margin;
    g.feasible = f.feasible;
    g.l = edge_lengths(spec);
    if (g.feasible) g.alpha = inner_angles(spec);
    const auto& th = spec.theta;
    for (const auto& [i, j, k] : kCyc) {
        g.lambda[i] = std::cos(th[i]) + std::cos(th[j]) * std::cos(th[k]);
    }
    const bool c1 = th[0] + th[1] < th[2] + kPi && th[1] + th[2] < th[0] + kPi &&
                    th[2] + th[0] < th[1] + kPi;
    if (th[0] + th[1] + th[2] > kPi && c1 && th[0] > 0 && th[1] > 0 && th[2] > 0) {
        std::array<double, 3> phi{};
        for (const auto& [i, j, k] : kCyc) {
            phi[i] = checked_acos(g.lambda[i] / (std::sin(th[j]) * std::sin(th[k])));
        }
        g.phi = phi;
    }
    return g;
}

double inversive_distance(const Vec2& ci, double ri, const Vec2& cj, double rj)
{
    return ((ci - cj).squaredNorm() - ri * ri - rj * rj) / (2 * ri * rj);
}

double inversive_distance(const Vec3& ci, double ri, const Vec3& cj, double rj)
{
    // (cos ri cos rj - cos d) / (sin ri sin rj), rewritten with
    // 1 - cos d = |ci - cj|^2 / 2 to keep precision for close centers.
    const double chord2 = (ci - cj).squaredNorm();
    const double num = 0.5 * chord2 - 2 * sqr(std::sin(0.5 * (ri - rj)));
    return num / (std::sin(ri) * std::sin(rj)) - 1;
}

double angle_error(double inversive, double theta)
{
    if (std::sin(theta) < 1e-3) {
        const double d = std::abs(inversive - std::cos(theta));
        return std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
    }
    const auto a = exterior_angle(inversive);
    return a ? std::abs(*a - theta) : std::numeric_limits<double>::infinity();
}

std::optional<double> exterior_angle(double inversive)
{
    if (std::isnan(inversive) || inversive > 1 + kClampEps || inversive < -1 - kClampEps) {
        return std::nullopt;
    }
    return std::acos(std::clamp(inversive, -1.0, 1.0));
}

LimitProfile limit_profile(const TripleSpec& base, LimitKind kind,
                           const std::vector<double>& scales)
{
    LimitProfile p;
    p.kind = kind;
    for (double s : scales) {
        TripleSpec spec = base;
        switch (kind) {
            case LimitKind::OneRadius: spec.r[0] *= s; break;
            case LimitKind::TwoRadii:
                spec.r[0] *= s;
                spec.r[1] *= s;
                break;
            case LimitKind::ThreeRadii:
                for (double& r : spec.r) r *= s;
                break;
        }
        LimitSample sample;
        sample.scale = s;
        sample.alpha = inner_angles(spec);
        switch (kind) {
            case LimitKind::OneRadius:
                sample.gap = std::abs(sample.alpha[0] - (kPi - spec.theta[0]));
                break;
            case LimitKind::TwoRadii:
                sample.gap = std::abs(sample.alpha[0] + sample.alpha[1] - kPi);
                break;
            case LimitKind::ThreeRadii:
                sample.gap = std::abs(sample.alpha[0] + sample.alpha[1] + sample.alpha[2] - kPi);
                break;
        }
        if (!p.samples.empty() && sample.gap > p.samples.back().gap + 1e-15) p.monotone = false;
        p.samples.push_back(sample);
    }
    if (!p.samples.empty()) p.final_gap = p.samples.back().gap;
    return p;
}

std::array<Vec3, 3> place_triple(const TripleSpec& spec)
{
    const auto l = edge_lengths(spec);
    const auto alpha = inner_angles(spec);
    if (spec.mode == Mode::Euclidean) {
        return {Vec3(0, 0, 0), Vec3(l[2], 0, 0),
                Vec3(l[1] * std::cos(alpha[0]), l[1] * std::sin(alpha[0]), 0)};
    }
    const Vec3 c0(0, 0, -1);
    const Vec3 c1(std::sin(l[2]), 0, -std::cos(l[2]));
    auto c2 = trilaterate(c0, c1, l[1], l[0], -1);
    if (!c2) throw Error(ErrorCode::Infeasible, "spherical triple cannot be placed");
    return {c0, c1, *c2};
}

// ---------------------------------------------------------------------------

namespace {

bool caps_meet(const Cap& a, const Cap& b, double eps)
{
    return sphere_distance(a.center, b.center) <= a.radius + b.radius + eps;
}

bool cap_inside(const Cap& inner, const Cap& outer, double eps)
{
    return sphere_distance(inner.center, outer.center) + inner.radius <= outer.radius + eps;
}

// Point of the boundary circle of c farthest from p.
Vec3 farthest_on_circle(const Cap& c, const Vec3& p)
{
    const auto [e1, e2] = tangent_frame(c.center);
    const double u = e1.dot(p);
    const double v = e2.dot(p);
    const double t = (std::hypot(u, v) < 1e-15) ? 0.0 : std::atan2(-v, -u);
    return circle_point(c, t);
}

}  // namespace

ContainmentCheck containment_angle_check(const std::array<Cap, 3>& disks,
                                         const std::array<double, 3>& theta, double tol)
{
    for (int a = 0; a < 3; ++a) {
        if (!caps_meet(disks[a], disks[(a + 1) % 3], kGeomEps)) {
            throw Error(ErrorCode::NotMutuallyIntersecting, "disks do not pairwise intersect");
        }
    }
    const Cap& di = disks[0];
    const Cap& dj = disks[1];
    const Cap& dk = disks[2];
    ContainmentCheck out;
    out.lhs = theta[0] + theta[1];

    const double d = sphere_distance(di.center, dj.center);
    auto on_boundary_k = [&](const Vec3& p) {
        return std::abs(sphere_distance(dk.center, p) - dk.radius) <= 1e-9;
    };

    if (std::abs(d - (di.radius + dj.radius)) <= kGeomEps) {
        // External tangency: the lens is one point.
        out.single_point = true;
        const Vec3 axis = di.center.cross(dj.center);
        Vec3 p = di.center;
        if (axis.norm() > 1e-15) {
            const Vec3 dir = axis.normalized().cross(di.center);
            p = std::cos(di.radius) * di.center + std::sin(di.radius) * dir;
        }
        out.contained = cap_contains(dk, p, kGeomEps);
        out.boundaries_share_point = on_boundary_k(p);
        out.rhs = kPi;
    } else if (d <= std::abs(di.radius - dj.radius) + kGeomEps) {
        // One disk inside the other; the lens is the smaller disk.
        const Cap& small = di.radius <= dj.radius ? di : dj;
        out.contained = cap_inside(small, dk, kGeomEps);
        out.rhs = theta[2] + kPi;
    } else if (d >= 2 * kPi - di.radius - dj.radius - kGeomEps) {
        // Complements are disjoint; the lens is the sphere minus two caps.
        const Cap ck = complement(dk);
        out.contained = dk.radius >= kPi ||
                        cap_inside(ck, complement(di), kGeomEps) ||
                        cap_inside(ck, complement(dj), kGeomEps);
        out.rhs = theta[2] + kPi;
    } else {
        const auto corners = circle_intersections(di, dj);
        std::vector<Vec3> candidates(corners.begin(), corners.end());
        const Vec3 fi = farthest_on_circle(di, dk.center);
        if (cap_contains(dj, fi, kGeomEps)) candidates.push_back(fi);
        const Vec3 fj = farthest_on_circle(dj, dk.center);
        if (cap_contains(di, fj, kGeomEps)) candidates.push_back(fj);
        bool boundary_in = true;
        for (const Vec3& p : candidates) boundary_in = boundary_in && cap_contains(dk, p, kGeomEps);
        // With the lens boundary inside D_k, the lens escapes D_k only if the
        // complement of D_k sits inside the lens.
        const Vec3 anti = -dk.center;
        const bool hole_inside = dk.radius < kPi &&
                                 sphere_distance(di.center, anti) < di.radius - kGeomEps &&
                                 sphere_distance(dj.center, anti) < dj.radius - kGeomEps;
        out.contained = boundary_in && !hole_inside;
        for (const Vec3& p : corners) out.boundaries_share_point |= on_boundary_k(p);
        out.rhs = theta[2] + kPi;
    }
    if (out.contained) out.holds = out.lhs >= out.rhs - tol;
    return out;
}

bool caps_have_common_point(const std::array<Cap, 3>& disks, double eps)
{
    std::vector<Vec3> candidates;
    for (int a = 0; a < 3; ++a) {
        candidates.push_back(disks[a].center);
        candidates.push_back(circle_point(disks[a], 0.0));
        for (int b = a + 1; b < 3; ++b) {
            for (const Vec3& p : circle_intersections(disks[a], disks[b])) candidates.push_back(p);
        }
    }
    for (const Vec3& p : candidates) {
        if (cap_contains(disks[0], p, eps) && cap_contains(disks[1], p, eps) &&
            cap_contains(disks[2], p, eps)) {
            return true;
        }
    }
    return false;
}

bool triple_intersection_empty(const std::array<Cap, 3>& disks, double eps)
{
    const std::array<Cap, 3> comp{complement(disks[0]), complement(disks[1]),
                                  complement(disks[2])};
    if (!caps_have_common_point(comp, 0.0)) {
        throw Error(ErrorCode::CoversSphere, "open disks cover the sphere");
    }
    return !caps_have_common_point(disks, eps);
}

}  // namespace cpat
