#include "cpat/kernel.hpp"
#include "cpat/sphere.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cpat;

namespace {

Vec3 random_unit(std::mt19937& rng)
{
    std::normal_distribution<double> n;
    return Vec3(n(rng), n(rng), n(rng)).normalized();
}

double lorentz(const Vec4& a, const Vec4& b) { return -a[0] * b[0] + a.tail<3>().dot(b.tail<3>()); }

}  // namespace

TEST_CASE("stereographic chart")
{
    CHECK(to_sphere(Vec2(0, 0)).isApprox(Vec3(0, 0, -1)));
    CHECK(std::abs(to_sphere(Vec2(0.6, 0.8)).z()) < 1e-15);
    CHECK_FALSE(to_plane(Vec3(0, 0, 1)));

    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 200; ++i) {
        const Vec2 z(u(rng), u(rng));
        const Vec3 p = to_sphere(z);
        CHECK(p.norm() == doctest::Approx(1.0));
        CHECK((*to_plane(p) - z).norm() < 1e-12 * (1 + z.squaredNorm()));
    }
    // metric 2|dz|/(1+|z|^2)
    const Vec2 z(0.7, -0.3);
    const Vec2 dz(1e-7, 0);
    const double ds = sphere_distance(to_sphere(z), to_sphere(z + dz));
    CHECK(ds == doctest::Approx(2 * 1e-7 / (1 + z.squaredNorm())).epsilon(1e-6));
}

TEST_CASE("sphere distance")
{
    const Vec3 a(0, 0, 1);
    CHECK(sphere_distance(a, a) == 0.0);
    CHECK(sphere_distance(a, -a) == doctest::Approx(kPi));
    const Vec3 b = Vec3(1e-9, 0, 1).normalized();
    CHECK(sphere_distance(a, b) == doctest::Approx(1e-9).epsilon(1e-6));
    const Vec3 c = Vec3(1e-9, 0, -1).normalized();
    CHECK(kPi - sphere_distance(a, c) == doctest::Approx(1e-9).epsilon(1e-6));
}

TEST_CASE("lifted disks")
{
    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(-3, 3);
    std::uniform_real_distribution<double> ur(0.1, 2);
    std::uniform_real_distribution<double> ut(0, 2 * kPi);
    for (int i = 0; i < 100; ++i) {
        const PlaneDisk d{Vec2(u(rng), u(rng)), ur(rng)};
        const Cap c = lift_disk(d);
        for (int k = 0; k < 8; ++k) {
            const double t = ut(rng);
            const Vec2 p = d.center + d.radius * Vec2(std::cos(t), std::sin(t));
            CHECK(sphere_distance(c.center, to_sphere(p)) == doctest::Approx(c.radius));
        }
        CHECK(cap_contains(c, to_sphere(d.center)));
    }
    // a disk around the origin of radius > 1 holds more than a hemisphere
    CHECK(lift_disk(PlaneDisk{Vec2(0, 0), 2.0}).radius > kPi / 2);
}

TEST_CASE("inversive distance is preserved by the chart")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    std::uniform_real_distribution<double> ur(0.1, 1.5);
    for (int i = 0; i < 200; ++i) {
        const PlaneDisk a{Vec2(u(rng), u(rng)), ur(rng)};
        const PlaneDisk b{Vec2(u(rng), u(rng)), ur(rng)};
        const double ip = inversive_distance(a.center, a.radius, b.center, b.radius);
        const Cap ca = lift_disk(a);
        const Cap cb = lift_disk(b);
        const double is = inversive_distance(ca.center, ca.radius, cb.center, cb.radius);
        CHECK(is == doctest::Approx(ip).epsilon(1e-9).scale(1.0));
        CHECK(lorentz_inner(cap_to_lorentz(ca), cap_to_lorentz(cb)) ==
              doctest::Approx(-is).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("lorentz model of caps")
{
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> ur(0.05, 3.0);
    for (int i = 0; i < 100; ++i) {
        const Cap c{random_unit(rng), ur(rng)};
        const Vec4 m = cap_to_lorentz(c);
        CHECK(lorentz_inner(m, m) == doctest::Approx(1.0));
        CHECK(lorentz_inner(m, Vec4(1, 2, 3, 4)) == doctest::Approx(lorentz(m, Vec4(1, 2, 3, 4))));
        const Cap back = lorentz_to_cap(m);
        CHECK((back.center - c.center).norm() < 1e-12);
        CHECK(back.radius == doctest::Approx(c.radius));
    }
    const Cap c{Vec3(0, 0, 1), 0.4};
    const Cap cc = complement(c);
    CHECK(cc.center.isApprox(Vec3(0, 0, -1)));
    CHECK(cc.radius == doctest::Approx(kPi - 0.4));
}

TEST_CASE("boosts")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    const Eigen::Matrix4d j = Eigen::Vector4d(-1, 1, 1, 1).asDiagonal();
    for (int i = 0; i < 50; ++i) {
        const Vec3 v(u(rng), u(rng), u(rng));
        const Vec4 x(std::sqrt(1 + v.squaredNorm()), v.x(), v.y(), v.z());
        const Eigen::Matrix4d b = boost_to_origin(x);
        CHECK((b * x - Vec4(1, 0, 0, 0)).norm() < 1e-12);
        CHECK((b.transpose() * j * b - j).norm() < 1e-10);
    }
}

TEST_CASE("balancing symmetric configurations")
{
    // six equal caps on the axes, moved off balance by a boost
    std::vector<Cap> caps;
    for (int a = 0; a < 3; ++a) {
        for (double s : {1.0, -1.0}) {
            Vec3 c = Vec3::Zero();
            c[a] = s;
            caps.push_back(Cap{c, 0.7});
        }
    }
    const Vec3 v(0.4, -0.2, 0.3);
    const Vec4 x(std::sqrt(1 + v.squaredNorm()), v.x(), v.y(), v.z());
    const Eigen::Matrix4d b = boost_to_origin(x);
    std::vector<Cap> moved;
    for (const Cap& c : caps) moved.push_back(lorentz_to_cap(b * cap_to_lorentz(c)));
    double spread = 0;
    for (const Cap& c : moved) spread = std::max(spread, std::abs(c.radius - moved[0].radius));
    REQUIRE(spread > 0.05);

    const auto out = balance_caps(moved);
    for (const Cap& c : out) CHECK(c.radius == doctest::Approx(0.7).epsilon(1e-10));
    for (std::size_t i = 0; i < caps.size(); ++i) {
        for (std::size_t k = i + 1; k < caps.size(); ++k) {
            const double before = inversive_distance(caps[i].center, caps[i].radius,
                                                     caps[k].center, caps[k].radius);
            const double after = inversive_distance(out[i].center, out[i].radius, out[k].center,
                                                    out[k].radius);
            CHECK(after == doctest::Approx(before).epsilon(1e-10).scale(1.0));
        }
    }
}

TEST_CASE("circle intersections")
{
    const Cap a{Vec3(1, 0, 0), kPi / 2};
    const Cap b{Vec3(0, 1, 0), kPi / 2};
    const auto p = circle_intersections(a, b);
    REQUIRE(p.size() == 2);
    for (const Vec3& q : p) CHECK(std::abs(std::abs(q.z()) - 1) < 1e-12);
    CHECK(circle_intersections(Cap{Vec3(0, 0, 1), 0.1}, Cap{Vec3(0, 0, -1), 0.1}).empty());
    const auto t = circle_intersections(Cap{Vec3(1, 0, 0), 0.5},
                                        Cap{Vec3(std::cos(1.0), std::sin(1.0), 0), 0.5});
    CHECK(t.size() == 1);
}

TEST_CASE("frames, offsets and trilateration")
{
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> ud(0.2, 1.2);
    std::uniform_real_distribution<double> ut(0, 2 * kPi);
    for (int i = 0; i < 100; ++i) {
        const Vec3 n = random_unit(rng);
        const auto [e1, e2] = tangent_frame(n);
        CHECK(std::abs(e1.dot(n)) < 1e-12);
        CHECK(e1.cross(e2).dot(n) == doctest::Approx(1.0));

        const double d = ud(rng);
        const Vec3 q = offset_point(n, d, ut(rng));
        CHECK(sphere_distance(n, q) == doctest::Approx(d));

        const Vec3 u = random_unit(rng);
        const Vec3 v = offset_point(u, ud(rng), ut(rng));
        const Vec3 w = offset_point(v, ud(rng), ut(rng));
        const double du = sphere_distance(u, w);
        const double dv = sphere_distance(v, w);
        const int sign = u.dot(v.cross(w)) > 0 ? 1 : -1;
        const auto got = trilaterate(u, v, du, dv, sign);
        REQUIRE(got);
        CHECK((*got - w).norm() < 1e-9);
        const auto other = trilaterate(u, v, du, dv, -sign);
        REQUIRE(other);
        CHECK(u.dot(v.cross(*other)) * sign <= 1e-12);
    }
    CHECK_FALSE(trilaterate(Vec3(0, 0, 1), Vec3(1, 0, 0), 0.1, 0.1, 1));
}
