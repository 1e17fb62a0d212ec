#include "cpat/sphere.hpp"

#include "cpat/errors.hpp"

#include <cmath>

namespace cpat {

double sphere_distance(const Vec3& a, const Vec3& b)
{
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

Vec3 to_sphere(const Vec2& z)
{
    const double n2 = z.squaredNorm();
    return Vec3(2 * z.x(), 2 * z.y(), n2 - 1) / (1 + n2);
}

std::optional<Vec2> to_plane(const Vec3& p)
{
    const double d = 1 - p.z();
    if (d <= 1e-300) return std::nullopt;
    return Vec2(p.x() / d, p.y() / d);
}

Cap lift_disk(const PlaneDisk& d)
{
    const double dist = d.center.norm();
    const Vec2 dir = dist > 0 ? Vec2(d.center / dist) : Vec2(1, 0);
    // Signed positions of the two diametral points along the ray, mapped to
    // polar angles measured from the south pole.
    const double phi1 = 2 * std::atan(dist - d.radius);
    const double phi2 = 2 * std::atan(dist + d.radius);
    const double phic = 0.5 * (phi1 + phi2);
    Cap c;
    c.radius = 0.5 * (phi2 - phi1);
    c.center = Vec3(std::sin(phic) * dir.x(), std::sin(phic) * dir.y(), -std::cos(phic));
    return c;
}

bool cap_contains(const Cap& c, const Vec3& p, double eps)
{
    return sphere_distance(c.center, p) <= c.radius + eps;
}

Cap complement(const Cap& c) { return Cap{-c.center, kPi - c.radius}; }

std::pair<Vec3, Vec3> tangent_frame(const Vec3& n)
{
    const Vec3 helper = std::abs(n.z()) < 0.9 ? Vec3(0, 0, 1) : Vec3(1, 0, 0);
    Vec3 e1 = helper.cross(n).normalized();
    Vec3 e2 = n.cross(e1);
    return {e1, e2};
}

Vec3 offset_point(const Vec3& from, double dist, double t)
{
    const auto [e1, e2] = tangent_frame(from);
    const Vec3 dir = std::cos(t) * e1 + std::sin(t) * e2;
    return std::cos(dist) * from + std::sin(dist) * dir;
}

Vec3 circle_point(const Cap& c, double t) { return offset_point(c.center, c.radius, t); }

std::vector<Vec3> circle_intersections(const Cap& a, const Cap& b, double eps)
{
    // Points x with x.a = cos ra, x.b = cos rb, |x| = 1.
    const double g = a.center.dot(b.center);
    const Vec3 cr = a.center.cross(b.center);
    const double s2 = cr.squaredNorm();
    if (s2 < 1e-24) return {};
    const double ca = std::cos(a.radius);
    const double cb = std::cos(b.radius);
    const double alpha = (ca - g * cb) / s2;
    const double beta = (cb - g * ca) / s2;
    const Vec3 base = alpha * a.center + beta * b.center;
    const double rest = 1 - base.squaredNorm();
    if (rest < -eps) return {};
    if (rest <= eps) return {base.normalized()};
    const double gamma = std::sqrt(rest / s2);
    return {(base + gamma * cr).normalized(), (base - gamma * cr).normalized()};
}

std::optional<Vec3> trilaterate(const Vec3& u, const Vec3& v, double du, double dv, int sign)
{
    const double g = u.dot(v);
    const Vec3 cr = u.cross(v);
    const double s2 = cr.squaredNorm();
    if (s2 < 1e-24) return std::nullopt;
    const double cu = std::cos(du);
    const double cv = std::cos(dv);
    const double alpha = (cu - g * cv) / s2;
    const double beta = (cv - g * cu) / s2;
    const Vec3 base = alpha * u + beta * v;
    if (1 - base.squaredNorm() < -1e-9) return std::nullopt;
    // Gram determinant in product form; 1 - |base|^2 cancels for flat triangles
    const double duv = std::atan2(std::sqrt(s2), g);
    const double h = 0.5 * (du + dv + duv);
    const double gram = 4 * std::sin(h) * std::sin(h - du) * std::sin(h - dv) * std::sin(h - duv);
    const double gamma = std::sqrt(std::max(gram, 0.0)) / s2;
    return (base + (sign >= 0 ? gamma : -gamma) * cr).normalized();
}

double lorentz_inner(const Vec4& a, const Vec4& b)
{
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec4 cap_to_lorentz(const Cap& c)
{
    const double s = std::sin(c.radius);
    return Vec4(std::cos(c.radius) / s, c.center.x() / s, c.center.y() / s, c.center.z() / s);
}

Cap lorentz_to_cap(const Vec4& m)
{
    const Vec3 dir(m[1], m[2], m[3]);
    const double len = dir.norm();
    return Cap{dir / len, std::atan2(1.0, m[0] * 1.0)};
}

Eigen::Matrix4d boost_to_origin(const Vec4& x)
{
    const Vec3 s(x[1], x[2], x[3]);
    Eigen::Matrix4d b;
    b(0, 0) = x[0];
    b.block<1, 3>(0, 1) = -s.transpose();
    b.block<3, 1>(1, 0) = -s;
    b.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + s * s.transpose() / (1 + x[0]);
    return b;
}

std::vector<Cap> balance_caps(const std::vector<Cap>& caps)
{
    if (caps.empty()) return {};
    const Eigen::Matrix4d j = Eigen::Vector4d(-1, 1, 1, 1).asDiagonal();
    Eigen::Matrix4d moment = Eigen::Matrix4d::Zero();
    std::vector<Vec4> ms;
    ms.reserve(caps.size());
    for (const Cap& c : caps) {
        ms.push_back(cap_to_lorentz(c));
        moment += ms.back() * ms.back().transpose();
    }
    const Eigen::Matrix4d b = j * moment * j;
    // J x = mu B x has exactly one negative eigenvalue; its eigenvector is the
    // time-like stationary point.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix4d> es(j, b);
    if (es.info() != Eigen::Success) {
        throw Error(ErrorCode::DomainError, "degenerate cap configuration");
    }
    Vec4 x = es.eigenvectors().col(0);
    const double norm2 = -lorentz_inner(x, x);
    if (!(norm2 > 0)) throw Error(ErrorCode::DomainError, "no time-like barycentre");
    x /= std::sqrt(norm2);
    if (x[0] < 0) x = -x;
    const Eigen::Matrix4d boost = boost_to_origin(x);
    std::vector<Cap> out;
    out.reserve(caps.size());
    for (const Vec4& m : ms) out.push_back(lorentz_to_cap(boost * m));
    return out;
}

}  // namespace cpat
