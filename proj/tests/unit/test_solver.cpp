#include "oracles/symmetric.hpp"
#include "support.hpp"

#include "cpat/errors.hpp"
#include "cpat/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <set>

using namespace cpat;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    }
    catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidInput;
}

int interior_vertex(const Triangulation& t, int marked)
{
    const Face& f = t.face(marked);
    for (int v = 0; v < t.vertex_count(); ++v) {
        if (v != f[0] && v != f[1] && v != f[2]) return v;
    }
    return -1;
}

double max_of(const std::vector<double>& v)
{
    double m = 0;
    for (double x : v) m = std::max(m, x);
    return m;
}

}  // namespace

TEST_CASE("tangent tetrahedron matches the Descartes circle")
{
    const auto t = testing::load_triangulation("tetrahedron");
    const auto a = testing::load_theta(t, "tetrahedron_tangent");
    for (int marked = 0; marked < 4; ++marked) {
        const auto s = solve_euclidean(t, a, marked);
        const auto& c = s.config;
        const int v = interior_vertex(t, marked);
        CHECK(std::abs(c.unit_boundary_radii[v] - (2 * std::sqrt(3.0) / 3 - 1)) < 1e-10);
        for (int w : t.face(marked)) CHECK(c.unit_boundary_radii[w] == 1.0);
        for (const Edge& e : t.edges()) {
            const double d = (c.centers[e.u] - c.centers[e.v]).norm();
            CHECK(std::abs(d - (c.radii[e.u] + c.radii[e.v])) < 1e-8);
        }
        CHECK(s.report.max_abs_K < 1e-10);
        CHECK(c.marked_face == marked);
    }
}

TEST_CASE("oblique tetrahedron matches the cone-angle oracle")
{
    const auto t = testing::load_triangulation("tetrahedron");
    const auto a = testing::load_theta(t, "tetrahedron_pi4");
    const auto s = solve_euclidean(t, a, 0);
    const int v = interior_vertex(t, 0);
    const double rho = oracle::tetra_inner_radius(kPi / 4);
    // closed form of the same equation
    const double q = 1 - (2 + std::sqrt(2.0)) / 3;
    const double closed = (-std::sqrt(2.0) + std::sqrt(2 - 4 * q)) / 2;
    CHECK(rho == doctest::Approx(closed).epsilon(1e-12));
    CHECK(std::abs(s.config.unit_boundary_radii[v] - rho) < 1e-8);
    CHECK(max_of(euclidean_angle_errors(t, a, s.config.centers, s.config.radii)) < 1e-8);
}

TEST_CASE("normalization of euclidean solutions")
{
    const auto t = testing::load_triangulation("octahedron");
    const auto a = AngleAssignment::constant(t, kPi / 4);
    const auto s = solve_euclidean(t, a, 2);
    const auto& c = s.config;
    CHECK(c.y4);
    CHECK(c.y5);
    CHECK(c.y6);
    double sum = 0;
    for (double r : c.radii) sum += r;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    const Face& f = t.face(2);
    CHECK(c.centers[f[0]].norm() < 1e-14);
    CHECK(std::abs(c.centers[f[1]].y()) < 1e-14);
    CHECK(c.centers[f[1]].x() > 0);
    CHECK(c.centers[f[2]].y() > 0);
    CHECK(c.radii[f[0]] == doctest::Approx(c.radii[f[1]]).epsilon(1e-14));
    CHECK(c.radii[f[0]] == doctest::Approx(c.radii[f[2]]).epsilon(1e-14));
    CHECK(c.layout_disagreement < 1e-9);
    CHECK(max_of(euclidean_angle_errors(t, a, c.centers, c.radii)) < 1e-8);

    // the raw iterate and the normalized pattern differ by a similarity
    const double scale = c.radii[f[0]];
    for (int v = 0; v < t.vertex_count(); ++v) {
        CHECK(c.radii[v] == doctest::Approx(scale * c.unit_boundary_radii[v]).epsilon(1e-12));
    }
}

TEST_CASE("obtuse bipyramid")
{
    const auto t = testing::load_triangulation("triangular_bipyramid");
    const auto a = testing::load_theta(t, "bipyramid_obtuse");
    bool obtuse = false;
    for (double x : a.theta) obtuse = obtuse || x > kPi / 2;
    REQUIRE(obtuse);
    REQUIRE(classify(t, a, AngleClass::G5).passed);
    const auto s = solve_euclidean(t, a, std::nullopt, SolverOptions{});
    CHECK(s.report.max_abs_K < 1e-10);
    CHECK(s.max_angle_error < 1e-8);
}

TEST_CASE("random obtuse-free instances in the interstice class")
{
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(0.0, kPi / 3 - 0.05);
    for (const char* name : {"octahedron", "stacked_6", "pentagonal_bipyramid"}) {
        const auto t = testing::load_triangulation(name);
        for (int trial = 0; trial < 3; ++trial) {
            AngleAssignment a;
            for (int e = 0; e < t.edge_count(); ++e) a.theta.push_back(u(rng));
            REQUIRE(classify(t, a, AngleClass::G5).passed);
            const auto s = solve_euclidean(t, a, 0);
            CHECK(s.report.max_abs_K < 1e-10);
            const auto lifted = lift_to_sphere(s.config);
            for (const Edge& e : t.edges()) {
                const double ip = inversive_distance(s.config.centers[e.u], s.config.radii[e.u],
                                                     s.config.centers[e.v], s.config.radii[e.v]);
                const double is = inversive_distance(lifted.centers[e.u], lifted.radii[e.u],
                                                     lifted.centers[e.v], lifted.radii[e.v]);
                CHECK(std::abs(ip - is) < 1e-10);
            }
        }
    }
}

TEST_CASE("marked face selection")
{
    const auto t = testing::load_triangulation("octahedron");
    const auto pi3 = AngleAssignment::constant(t, kPi / 3);
    CHECK(code_of([&] { solve_euclidean(t, pi3, 0); }) == ErrorCode::ConditionsViolated);

    AngleAssignment a = AngleAssignment::constant(t, kPi / 3);
    const auto& fe = t.face_edges(5);
    for (int e : fe) a.theta[e] = 0.2;
    CHECK(code_of([&] { choose_marked_face(t, a, 0, false); }) == ErrorCode::ConditionsViolated);
    CHECK(choose_marked_face(t, a, 0, true) == 5);
    CHECK(choose_marked_face(t, a, 5, false) == 5);
    CHECK(code_of([&] { choose_marked_face(t, a, 8, false); }) == ErrorCode::InvalidInput);
}

TEST_CASE("inadmissible angles are refused")
{
    const auto oct = testing::load_triangulation("octahedron");
    const auto half = AngleAssignment::constant(oct, kPi / 2);
    CHECK(code_of([&] { solve_euclidean(oct, half, 0); }) == ErrorCode::ConditionsViolated);
    CHECK(code_of([&] { solve_spherical(oct, half); }) == ErrorCode::ConditionsViolated);
    CHECK(code_of([&] { solve_spherical(oct, AngleAssignment::constant(oct, kPi / 4)); }) ==
          ErrorCode::ConditionsViolated);
    const auto tet = testing::load_triangulation("tetrahedron");
    CHECK(code_of([&] { solve_spherical(tet, AngleAssignment::constant(tet, 1.2)); }) ==
          ErrorCode::ConditionsViolated);
}

TEST_CASE("degeneration functional")
{
    const auto oct = testing::load_triangulation("octahedron");
    const auto a = AngleAssignment::constant(oct, kPi / 3);
    const auto d = degeneration_functional(oct, a, {0});
    CHECK(d.value == doctest::Approx(-2 * kPi / 3));
    CHECK(d.euler_char == 1);
    CHECK(d.link_size == 4);

    std::mt19937 rng(2);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    const auto ico = testing::load_triangulation("icosahedron");
    AngleAssignment r;
    for (int e = 0; e < ico.edge_count(); ++e) r.theta.push_back(u(rng));
    for (int v = 0; v < ico.vertex_count(); ++v) {
        const auto& nb = ico.neighbors(v);
        double sum = 0;
        for (std::size_t k = 0; k < nb.size(); ++k) {
            sum += r[ico.edge_id(nb[k], nb[(k + 1) % nb.size()])];
        }
        const double m = static_cast<double>(nb.size());
        CHECK(degeneration_functional(ico, r, {v}).value ==
              doctest::Approx(2 * kPi - m * kPi + sum));
    }
    // two non-adjacent vertices: values add
    int far = -1;
    for (int w = 1; w < ico.vertex_count() && far < 0; ++w) {
        bool near = ico.has_edge(0, w);
        for (int x : ico.neighbors(0)) near = near || ico.has_edge(x, w);
        if (!near) far = w;
    }
    REQUIRE(far > 0);
    CHECK(degeneration_functional(ico, r, {0, far}).value ==
          doctest::Approx(degeneration_functional(ico, r, {0}).value +
                          degeneration_functional(ico, r, {far}).value));

    CHECK(code_of([&] { degeneration_functional(oct, a, {}); }) == ErrorCode::EmptySubset);
    const Face& f = oct.face(0);
    CHECK(code_of([&] { degeneration_functional(oct, a, {f[0]}, 0); }) ==
          ErrorCode::InvalidInput);
}

TEST_CASE("degeneration table is sorted and negative on admissible data")
{
    const auto t = testing::load_triangulation("icosahedron");
    const auto a = AngleAssignment::constant(t, 0.3);
    REQUIRE(classify(t, a).passed);
    const auto table = degeneration_table(t, a, 4, 0);
    REQUIRE_FALSE(table.empty());
    std::set<std::vector<int>> seen;
    const Face& mf = t.face(0);
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (i > 0) CHECK(table[i - 1].value >= table[i].value);
        CHECK(table[i].value < 0);
        CHECK(seen.insert(table[i].subset).second);
        for (int v : table[i].subset) CHECK((v != mf[0] && v != mf[1] && v != mf[2]));
    }
    // 12 vertices, 3 marked: 9 singletons
    int singles = 0;
    for (const auto& d : table) singles += d.subset.size() == 1;
    CHECK(singles == 9);
}

TEST_CASE("symmetric spherical solutions")
{
    SUBCASE("octahedron pi/3")
    {
        const auto t = testing::load_triangulation("octahedron");
        const auto a = testing::load_theta(t, "octahedron_pi3");
        const auto s = solve_spherical(t, a);
        CHECK(s.config.x6);
        for (int v : t.face(s.config.marked_face)) {
            CHECK(s.config.radii[v] == doctest::Approx(kPi / 4).epsilon(1e-14));
        }
        CHECK(s.max_angle_error < 1e-8);
        const auto b = balance_pattern(s.config);
        const double ref = oracle::symmetric_spherical_radius(kPi / 2, kPi / 3);
        CHECK(ref == doctest::Approx(std::atan(std::sqrt(2.0))).epsilon(1e-12));
        for (double r : b.radii) CHECK(std::abs(r - ref) < 1e-8);
        // antipodal vertices are the non-neighbours
        for (int v = 0; v < 6; ++v) {
            for (int w = v + 1; w < 6; ++w) {
                const double d = sphere_distance(b.centers[v], b.centers[w]);
                CHECK(std::abs(d - (t.has_edge(v, w) ? kPi / 2 : kPi)) < 1e-7);
            }
        }
        CHECK(max_of(spherical_angle_errors(t, a, b.centers, b.radii)) < 1e-8);
    }
    SUBCASE("icosahedron 2pi/5")
    {
        const auto t = testing::load_triangulation("icosahedron");
        const auto a = testing::load_theta(t, "icosahedron_2pi5");
        const auto s = solve_spherical(t, a);
        CHECK(s.max_angle_error < 1e-8);
        const auto b = balance_pattern(s.config);
        const double ref =
            oracle::symmetric_spherical_radius(std::acos(1 / std::sqrt(5.0)), 2 * kPi / 5);
        for (double r : b.radii) CHECK(std::abs(r - ref) < 1e-8);
        CHECK(max_of(spherical_angle_errors(t, a, b.centers, b.radii)) < 1e-8);
    }
}

TEST_CASE("random instances in the interstice-free class")
{
    const auto t = testing::load_triangulation("octahedron");
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(kPi / 3 + 0.01, kPi / 2 - 0.01);
    for (int trial = 0; trial < 3; ++trial) {
        AngleAssignment a;
        for (int e = 0; e < t.edge_count(); ++e) a.theta.push_back(u(rng));
        REQUIRE(classify(t, a, AngleClass::M5).passed);
        const auto s = solve_spherical(t, a);
        CHECK(s.t_reached == 1.0);
        CHECK(s.max_angle_error < 1e-8);
        CHECK(max_of(spherical_angle_errors(t, a, s.config.centers, s.config.radii)) < 1e-8);
    }
    // a few edges nudged away from 2pi/5
    AngleAssignment a = AngleAssignment::constant(t, 2 * kPi / 5);
    a.theta[0] += 0.05;
    a.theta[3] -= 0.05;
    a.theta[7] += 0.05;
    REQUIRE(classify(t, a, AngleClass::M5).passed);
    CHECK(solve_spherical(t, a).max_angle_error < 1e-8);
}

TEST_CASE("solves are deterministic")
{
    const auto t = testing::load_triangulation("octahedron");
    const auto a = testing::load_theta(t, "octahedron_2pi5");
    SolverOptions o;
    o.seed = 42;
    const auto s1 = solve_spherical(t, a, o);
    const auto s2 = solve_spherical(t, a, o);
    CHECK(s1.config.radii == s2.config.radii);
    for (int v = 0; v < t.vertex_count(); ++v) CHECK(s1.config.centers[v] == s2.config.centers[v]);

    const auto e1 = solve_euclidean(t, AngleAssignment::constant(t, 0.5), 1, o);
    const auto e2 = solve_euclidean(t, AngleAssignment::constant(t, 0.5), 1, o);
    CHECK(e1.config.radii == e2.config.radii);
}

TEST_CASE("curvatures")
{
    const auto t = testing::load_triangulation("tetrahedron");
    const auto a = AngleAssignment::constant(t, 0.0);
    const auto rep = euclidean_curvature(t, a, {1, 1, 1, 1}, 0);
    for (int v : t.face(0)) CHECK(std::isnan(rep.K[v]));
    const int v = interior_vertex(t, 0);
    // three equilateral triangles around the interior vertex
    CHECK(rep.sigma[v] == doctest::Approx(kPi));
    CHECK(rep.K[v] == doctest::Approx(kPi));

    const auto oct = testing::load_triangulation("octahedron");
    const auto sp = spherical_curvature(oct, AngleAssignment::constant(oct, kPi / 3),
                                        std::vector<double>(6, std::atan(std::sqrt(2.0))));
    CHECK(sp.max_abs_K < 1e-12);
}
