#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "vfdeg/degree.hpp"
#include "vfdeg/errors.hpp"

using namespace vfdeg;

TEST_SUITE("degree") {

TEST_CASE("winding: linear fields over the unit disk") {
    Region disk = Region::ball({0, 0}, 1.0);

    DegreeReport att = winding_degree(catalog("attractor(2)"), disk);
    CHECK(att.degree == 1); // sign det(-I2) = +1
    CHECK(std::abs(att.raw - 1.0) < 1e-9);

    DegreeReport sad = winding_degree(catalog("saddle2"), disk);
    CHECK(sad.degree == -1); // sign det diag(1,-1)
    CHECK(std::abs(sad.raw + 1.0) < 1e-9);
}

TEST_CASE("winding: the zero-free shell has degree 0") {
    DegreeReport rep = winding_degree(catalog("limit_cycle"), Region::shell({0, 0}, 0.5, 1.5));
    CHECK(rep.degree == 0);
    CHECK(std::abs(rep.raw) < 1e-9);
}

TEST_CASE("winding flags boundary zeros") {
    // saddle vanishes at the origin, placed on this circle
    FieldDef f = catalog("saddle2");
    Region circle = Region::ball({1, 0}, 1.0);
    CHECK_THROWS_WITH_AS(winding_degree(f, circle), doctest::Contains("boundary"),
                         numerical_error);
}

TEST_CASE("kronecker: radial fields over the unit ball") {
    Region ball = Region::ball({0, 0, 0}, 1.0);
    DegreeReport att = kronecker_degree(catalog("attractor(3)"), ball);
    CHECK(att.degree == -1); // sign det(-I3) = -1
    CHECK(std::abs(att.raw + 1.0) < 1e-6);

    DegreeReport rep = kronecker_degree(catalog("repeller(3)"), ball);
    CHECK(rep.degree == 1);
    CHECK(std::abs(rep.raw - 1.0) < 1e-6);
}

TEST_CASE("kronecker: Lorenz over the global-attractor ball gives -1") {
    FieldDef f = catalog("lorenz"); // r = 24
    DegreeReport rep = kronecker_degree(f, Region::ball({0, 0, 0}, 60.0));
    CHECK(rep.degree == -1);
    CHECK(std::abs(rep.raw - (-1.0)) < 0.05);
}

TEST_CASE("kronecker: Lorenz over the origin-only box gives +1") {
    FieldDef f = catalog("lorenz");
    DegreeReport rep = kronecker_degree(f, Region::box({-6, -6, -6}, {6, 6, 6}));
    CHECK(rep.degree == 1);
    CHECK(std::abs(rep.raw - 1.0) < 0.05);
}

TEST_CASE("kronecker over a cube-set surface") {
    CubeSet C;
    C.n = 3;
    C.h = 1.0;
    for (int i = -1; i <= 0; ++i)
        for (int j = -1; j <= 0; ++j)
            for (int k = -1; k <= 0; ++k) C.cells.insert({i, j, k});
    DegreeReport rep = kronecker_degree(catalog("repeller(3)"), Region::cubeset(C));
    CHECK(rep.degree == 1);
}

TEST_CASE("zero count: the three Lorenz equilibria at r=24") {
    const double b = 8.0 / 3.0, r = 24.0;
    const double c = std::sqrt(b * (r - 1.0));
    FieldDef f = catalog("lorenz");
    DegreeReport rep = zero_count_degree(f, Region::ball({0, 0, 0}, 60.0));
    REQUIRE(rep.zeros.size() == 3);
    CHECK(rep.degree == -1);
    // zeros are sorted lexicographically: C-, origin, C+
    CHECK(testutil::dist(rep.zeros[0].point, {-c, -c, r - 1}) < 1e-6);
    CHECK(rep.zeros[0].index == -1);
    CHECK(testutil::dist(rep.zeros[1].point, {0, 0, 0}) < 1e-6);
    CHECK(rep.zeros[1].index == 1);
    CHECK(testutil::dist(rep.zeros[2].point, {c, c, r - 1}) < 1e-6);
    CHECK(rep.zeros[2].index == -1);
    for (const auto& z : rep.zeros) CHECK(z.residual < defaults::newton_tol);
}

TEST_CASE("zero count: a single repelling zero") {
    DegreeReport rep = zero_count_degree(catalog("repeller(2)"), Region::ball({0, 0}, 1.0));
    REQUIRE(rep.zeros.size() == 1);
    CHECK(rep.zeros[0].index == 1);
    CHECK(rep.degree == 1);
}

TEST_CASE("zero count rejects degenerate zeros") {
    FieldDef f = parse_field("x^2, y", 2, {});
    CHECK_THROWS_WITH_AS(zero_count_degree(f, Region::ball({0, 0}, 1.0)),
                         doctest::Contains("degenerate"), numerical_error);
}

TEST_CASE("point indices of hyperbolic zeros") {
    CHECK(point_index(catalog("saddle2"), std::vector<double>{0, 0}, 0.5) == -1);
    CHECK(point_index(catalog("attractor(3)"), std::vector<double>{0, 0, 0}, 0.5) == -1);
    CHECK(point_index(catalog("repeller(2)"), std::vector<double>{0, 0}, 0.5) == 1);
}

TEST_CASE("the even field has index 2 at its degenerate zero") {
    // (x^2-y^2, 2xy) is z^2 in complex notation: the winding doubles.
    CHECK(point_index(catalog("even_field"), std::vector<double>{0, 0}, 1.0) == 2);
}

TEST_CASE("point_index refuses a ball containing another zero") {
    // C+- lie 25.5 from the origin, inside ball(0, 30).
    FieldDef f = catalog("lorenz");
    CHECK_THROWS_WITH_AS(point_index(f, std::vector<double>{0, 0, 0}, 30.0),
                         doctest::Contains("another zero"), numerical_error);
}

TEST_CASE("auto cross-validates the boundary method against zero counting") {
    DegreeReport lor = compute_degree(catalog("lorenz"), Region::ball({0, 0, 0}, 60.0));
    CHECK(lor.method == "auto");
    CHECK(lor.cross_validated);
    CHECK(lor.degree == -1);
    CHECK(lor.zeros.size() == 3);

    DegreeReport sad = compute_degree(catalog("saddle2"), Region::ball({0, 0}, 1.0));
    CHECK(sad.cross_validated);
    CHECK(sad.degree == -1);

    DegreeReport cyc = compute_degree(catalog("limit_cycle"), Region::shell({0, 0}, 0.5, 1.5));
    CHECK(cyc.degree == 0);
    CHECK(cyc.zeros.empty());
}

TEST_CASE("auto falls back to the boundary method on degeneracy") {
    FieldDef f = parse_field("x^2, y", 2, {});
    DegreeReport rep = compute_degree(f, Region::ball({0, 0}, 1.0));
    CHECK_FALSE(rep.cross_validated);
    REQUIRE(!rep.warnings.empty());
    CHECK(rep.warnings[0].find("degenerate") != std::string::npos);
    CHECK(rep.degree == 2); // winding still sees z^2
}

TEST_CASE("degree is additive over the Lorenz equilibrium balls") {
    const double b = 8.0 / 3.0, r = 24.0;
    const double c = std::sqrt(b * (r - 1.0));
    FieldDef f = catalog("lorenz");
    int whole = compute_degree(f, Region::ball({0, 0, 0}, 60.0)).degree;
    int origin = compute_degree(f, Region::ball({0, 0, 0}, 5.0)).degree;
    int plus = compute_degree(f, Region::ball({c, c, r - 1}, 5.0)).degree;
    int minus = compute_degree(f, Region::ball({-c, -c, r - 1}, 5.0)).degree;
    CHECK(whole == origin + plus + minus);
    CHECK(origin == 1);
    CHECK(plus == -1);
    CHECK(minus == -1);
}

TEST_CASE("winding and zero counting agree on 50 seeded random fields") {
    std::mt19937_64 rng(20250810);
    std::uniform_real_distribution<double> rad(0.8, 2.0);
    DegreeOptions opt;
    opt.seeds_per_axis = 24;
    int done = 0, skipped = 0, guard = 0;
    while (done < 50 && guard < 2000) {
        ++guard;
        FieldDef f = testutil::random_planar_field(rng);
        Region N = Region::ball({0, 0}, rad(rng));
        try {
            DegreeReport w = winding_degree(f, N, opt);
            DegreeReport z = zero_count_degree(f, N, opt);
            CHECK(w.degree == z.degree);
            ++done;
        } catch (const numerical_error&) {
            ++skipped; // zero too close to the circle or degenerate: draw again
        }
    }
    CHECK(done == 50);
}

TEST_CASE("homotopy smoke: positive scaling keeps the degree, -F flips by (-1)^n") {
    Region disk = Region::ball({0, 0}, 1.0);
    FieldDef scaled = parse_field("2.5*x, -2.5*y", 2, {});
    CHECK(winding_degree(scaled, disk).degree == winding_degree(catalog("saddle2"), disk).degree);

    CHECK(winding_degree(negate(catalog("attractor(2)")), disk).degree ==
          winding_degree(catalog("attractor(2)"), disk).degree); // (-1)^2 = +1

    Region ball = Region::ball({0, 0, 0}, 1.0);
    CHECK(kronecker_degree(negate(catalog("attractor(3)")), ball).degree ==
          -kronecker_degree(catalog("attractor(3)"), ball).degree); // (-1)^3 = -1
}

TEST_CASE("every reported zero is interior by the merge radius") {
    DegreeReport rep = zero_count_degree(catalog("lorenz"), Region::ball({0, 0, 0}, 60.0));
    Region N = Region::ball({0, 0, 0}, 60.0);
    for (const auto& z : rep.zeros)
        CHECK(N.boundary_distance(z.point) >= defaults::merge_radius_factor * N.diameter());
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(winding_degree(catalog("lorenz"), Region::ball({0, 0, 0}, 1.0)), input_error);
    CHECK_THROWS_AS(kronecker_degree(catalog("saddle2"), Region::ball({0, 0}, 1.0)), input_error);
}

} // TEST_SUITE
