#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vfdeg/errors.hpp"
#include "vfdeg/linalg.hpp"
#include "vfdeg/ode.hpp"

using namespace vfdeg;

TEST_SUITE("flow") {

TEST_CASE("linear attractor decays to the origin") {
    FieldDef f = catalog("attractor(2)");
    Trajectory t = integrate(f, std::vector<double>{1, 0}, 0, 10);
    CHECK(norm(t.back()) < 1e-3);
    CHECK(t.status == TrajStatus::Completed);
    for (std::size_t k = 1; k < t.times.size(); ++k) CHECK(t.times[k] > t.times[k - 1]);
}

TEST_CASE("limit cycle attracts the radial dynamics") {
    // rdot = r(1-r^2) has r=1 attracting, so the final radius is 1.
    FieldDef f = catalog("limit_cycle");
    Trajectory t = integrate(f, std::vector<double>{0.1, 0}, 0, 50);
    CHECK(std::abs(norm(t.back()) - 1.0) < 1e-3);
}

TEST_CASE("Lorenz orbit stays inside the trapping ball over [0,1]") {
    FieldDef f = catalog("lorenz", {{"r", 28.0}});
    Trajectory t = integrate(f, std::vector<double>{1, 1, 1}, 0, 1);
    for (const auto& p : t.points) CHECK(norm(p) < 100.0);
}

TEST_CASE("negative spans integrate the reversed field") {
    FieldDef f = catalog("attractor(2)");
    // Backwards the attractor expands: e^{1} from (0.1, 0).
    Trajectory t = integrate(f, std::vector<double>{0.1, 0}, 0, -1);
    CHECK(t.back()[0] == doctest::Approx(0.1 * std::exp(1.0)).epsilon(1e-6));
}

TEST_CASE("halving the tolerance moves endpoints by less than 10x the coarser tol") {
    struct Case {
        const char* name;
        std::vector<double> x0;
        double T;
    } cases[] = {{"attractor(2)", {1, 0}, 5.0},
                 {"limit_cycle", {0.1, 0}, 10.0},
                 {"lorenz", {1, 1, 1}, 1.0}};
    for (const auto& c : cases) {
        FieldDef f = catalog(c.name);
        auto coarse = integrate(f, c.x0, 0, c.T, 1e-8).back();
        auto fine = integrate(f, c.x0, 0, c.T, 5e-9).back();
        CHECK(testutil::dist(coarse, fine) < 10 * 1e-8);
    }
}

TEST_CASE("dense output matches recorded step points") {
    FieldDef f = catalog("limit_cycle");
    Trajectory t = integrate(f, std::vector<double>{0.3, 0.4}, 0, 5);
    for (std::size_t k = 0; k < t.times.size(); k += 7)
        CHECK(testutil::dist(t.at(t.times[k]), t.points[k]) < 1e-12);
}

TEST_CASE("exit time of the radial repeller from (0.5,0) is ln 2") {
    // Closed form: x(t) = x0 e^t crosses |x|=1 at t = ln 2.
    FieldDef f = catalog("repeller(2)");
    Region N = Region::ball({0, 0}, 1.0);
    ExitTime et = exit_time(f, N, std::vector<double>{0.5, 0}, 10.0, 1e-10);
    REQUIRE(et.exited);
    CHECK(et.t == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(std::abs(N.boundary_distance(et.point)) < 1e-6);
}

TEST_CASE("forward-invariant regions report stays-within-horizon") {
    FieldDef f = catalog("attractor(2)");
    Region N = Region::ball({0, 0}, 1.0);
    ExitTime et = exit_time(f, N, std::vector<double>{0.5, 0}, 10.0);
    CHECK_FALSE(et.exited);
}

TEST_CASE("the saddle exits the box through the x-face at ln 2") {
    FieldDef f = catalog("saddle2");
    Region N = Region::box({-1, -1}, {1, 1});
    ExitTime et = exit_time(f, N, std::vector<double>{0.5, 0.1}, 10.0, 1e-10);
    REQUIRE(et.exited);
    CHECK(et.t == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(et.point[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(N.boundary_distance(et.point)) < 1e-6);
}

TEST_CASE("exit_time rejects start points outside the region") {
    FieldDef f = catalog("saddle2");
    Region N = Region::ball({0, 0}, 1.0);
    CHECK_THROWS_AS(exit_time(f, N, std::vector<double>{2, 0}, 1.0), input_error);
}

TEST_CASE("omega estimates land on the known limit sets") {
    FieldDef att = catalog("attractor(2)");
    for (const auto& p : omega_estimate(att, std::vector<double>{1, 1}, 15, 2))
        CHECK(norm(p) < 1e-3);

    FieldDef cyc = catalog("limit_cycle");
    for (const auto& p : omega_estimate(cyc, std::vector<double>{2, 0}, 20, 5))
        CHECK(std::abs(norm(p) - 1.0) < 1e-3);

    // Phase line of xdot = 1-x^2: from x=-0.9 the orbit crawls to (1,0).
    FieldDef seg = catalog("segment_flow");
    for (const auto& p : omega_estimate(seg, std::vector<double>{-0.9, 0.5}, 8, 2))
        CHECK(testutil::dist(p, {1.0, 0.0}) < 1e-3);
}

TEST_CASE("negative asymptotic set of the saddle is the x-axis strip") {
    // Backward orbits blow up in y: kept centers need |y| <= e^{-T}.
    FieldDef f = catalog("saddle2");
    Region N = Region::box({-1, -1}, {1, 1});
    AsymptoticSet a = asymptotic_approx(f, N, 0.125, 2.0, -1);
    CHECK(a.indeterminate == 0);
    REQUIRE(!a.cells.cells.empty());
    int columns = 0;
    for (const auto& cell : a.cells.cells) {
        auto c = a.cells.center(cell);
        CHECK(std::abs(c[1]) < std::exp(-2.0) + 1e-12);
        ++columns;
    }
    // every x-column of the box survives, two rows straddle the axis
    CHECK(columns == 32);
}

TEST_CASE("invariant directions keep every cell") {
    FieldDef att = catalog("attractor(2)");
    Region ball = Region::ball({0, 0}, 1.0);
    AsymptoticSet fwd = asymptotic_approx(att, ball, 0.25, 5.0, +1);
    CHECK(fwd.cells.cells == rasterize(ball, 0.25).cells);

    FieldDef rep = catalog("repeller(2)");
    AsymptoticSet bwd = asymptotic_approx(rep, ball, 0.25, 5.0, -1);
    CHECK(bwd.cells.cells == rasterize(ball, 0.25).cells);
}

TEST_CASE("asymptotic sets are antitone in the horizon") {
    FieldDef f = catalog("saddle2");
    Region N = Region::box({-1, -1}, {1, 1});
    AsymptoticSet small = asymptotic_approx(f, N, 0.125, 2.0, -1);
    AsymptoticSet large = asymptotic_approx(f, N, 0.125, 2.5, -1);
    for (const auto& cell : large.cells.cells) CHECK(small.cells.cells.count(cell) == 1);
    AsymptoticSet larger = asymptotic_approx(f, N, 0.125, 3.0, -1);
    for (const auto& cell : larger.cells.cells) CHECK(large.cells.cells.count(cell) == 1);
}

} // TEST_SUITE
