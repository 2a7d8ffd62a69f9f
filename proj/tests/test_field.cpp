#include <doctest.h>

#include <cstring>
#include <random>

#include "helpers.hpp"
#include "vfdeg/errors.hpp"
#include "vfdeg/field.hpp"

using namespace vfdeg;

TEST_SUITE("field") {

TEST_CASE("the origin is an equilibrium of the Lorenz formula") {
    FieldDef f = catalog("lorenz");
    auto v = eval(f, std::vector<double>{0, 0, 0});
    CHECK(v == std::vector<double>{0, 0, 0});
}

TEST_CASE("saddle field at (1,1)") {
    FieldDef f = catalog("saddle2");
    auto v = eval(f, std::vector<double>{1, 1});
    CHECK(v[0] == 1.0);
    CHECK(v[1] == -1.0);
}

TEST_CASE("limit-cycle field at (1,0)") {
    // By hand: x(1-(x^2+y^2))-y = 1*(1-1)-0 = 0, y(1-r^2)+x = 0+1 = 1.
    FieldDef f = catalog("limit_cycle");
    auto v = eval(f, std::vector<double>{1, 0});
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(1.0));
}

TEST_CASE("Lorenz Jacobian at the origin") {
    // Differentiating (sigma(y-x), rx-y-xz, xy-bz) by hand and evaluating at 0
    // gives [[-sigma, sigma, 0], [r, -1, 0], [0, 0, -b]].
    FieldDef f = catalog("lorenz"); // sigma=10, r=24, b=8/3
    Jet jet = jacobian(f, std::vector<double>{0, 0, 0});
    const double b = 8.0 / 3.0;
    double expected[9] = {-10, 10, 0, 24, -1, 0, 0, 0, -b};
    for (int i = 0; i < 9; ++i) CHECK(jet.jacobian[static_cast<std::size_t>(i)] == doctest::Approx(expected[i]));
    CHECK(jet.value == std::vector<double>{0, 0, 0});
}

TEST_CASE("linear fields have constant Jacobians") {
    FieldDef f = parse_field("a*x+b*y, c*x+d*y", 2, {{"a", 2}, {"b", 3}, {"c", 5}, {"d", 7}});
    Jet jet = jacobian(f, std::vector<double>{1.3, -0.7});
    CHECK(jet.jacobian == std::vector<double>{2, 3, 5, 7});
}

TEST_CASE("AD agrees with central differences on 1000 random points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pt(-2.0, 2.0);
    std::vector<FieldDef> fields;
    for (const char* name : {"lorenz", "saddle2", "attractor(2)", "repeller(3)", "limit_cycle",
                             "segment_flow", "even_field"})
        fields.push_back(catalog(name));
    int checked = 0;
    while (checked < 1000) {
        for (const FieldDef& f : fields) {
            std::vector<double> p(static_cast<std::size_t>(f.n));
            for (auto& c : p) c = pt(rng);
            Jet jet = jacobian(f, p);
            auto fd = testutil::fd_jacobian(f, p);
            for (std::size_t k = 0; k < fd.size(); ++k) {
                double rel = std::abs(jet.jacobian[k] - fd[k]) /
                             std::max(1.0, std::abs(jet.jacobian[k]));
                CHECK(rel < 1e-6);
            }
            ++checked;
        }
    }
}

TEST_CASE("AD matches finite differences on a random polynomial field") {
    std::mt19937_64 rng(99);
    FieldDef f = testutil::random_planar_field(rng);
    std::vector<double> p{0.37, -1.21};
    Jet jet = jacobian(f, p);
    auto fd = testutil::fd_jacobian(f, p);
    for (std::size_t k = 0; k < fd.size(); ++k)
        CHECK(std::abs(jet.jacobian[k] - fd[k]) / std::max(1.0, std::abs(jet.jacobian[k])) < 1e-6);
}

TEST_CASE("eval is bitwise deterministic") {
    FieldDef f = catalog("lorenz", {{"r", 28.0}});
    std::vector<double> p{1.1, -2.2, 3.3};
    auto v1 = eval(f, p), v2 = eval(f, p);
    CHECK(std::memcmp(v1.data(), v2.data(), v1.size() * sizeof(double)) == 0);
    FieldDef copy = f;
    auto v3 = eval(copy, p);
    CHECK(std::memcmp(v1.data(), v3.data(), v1.size() * sizeof(double)) == 0);
}

TEST_CASE("domain errors name the offending subexpression") {
    FieldDef f = parse_field("sqrt(x)", 1, {});
    CHECK_THROWS_WITH_AS(eval(f, std::vector<double>{-1.0}), doctest::Contains("sqrt"),
                         numerical_error);
    FieldDef g = parse_field("1/x", 1, {});
    CHECK_THROWS_WITH_AS(eval(g, std::vector<double>{0.0}), doctest::Contains("1/x"),
                         numerical_error);
    FieldDef h = parse_field("x^-1", 1, {});
    CHECK_THROWS_AS(eval(h, std::vector<double>{0.0}), numerical_error);
}

TEST_CASE("catalog defaults and overrides") {
    FieldDef lorenz = catalog("lorenz", {{"r", 28.0}});
    CHECK(lorenz.params.at("sigma") == 10.0);
    CHECK(lorenz.params.at("b") == doctest::Approx(8.0 / 3.0));
    CHECK(lorenz.params.at("r") == 28.0);

    FieldDef rep = catalog("repeller(3)");
    CHECK(eval(rep, std::vector<double>{1, 2, 3}) == std::vector<double>{1, 2, 3});
    FieldDef att = catalog("attractor(2)");
    CHECK(eval(att, std::vector<double>{1, 2}) == std::vector<double>{-1, -2});

    FieldDef seg = catalog("segment_flow");
    auto v = eval(seg, std::vector<double>{-0.9, 0.5});
    CHECK(v[0] == doctest::Approx(0.19));
    CHECK(v[1] == doctest::Approx(-0.5));

    FieldDef even = catalog("even_field");
    auto w = eval(even, std::vector<double>{2, 1});
    CHECK(w[0] == 3.0);
    CHECK(w[1] == 4.0);

    CHECK_THROWS_WITH_AS(catalog("nope"), doctest::Contains("unknown catalog"), input_error);
    CHECK_THROWS_AS(catalog("saddle2", {{"a", 1.0}}), input_error);
    CHECK_THROWS_AS(catalog("lorenz", {{"tau", 1.0}}), input_error);
    CHECK_THROWS_AS(catalog("attractor(0)"), input_error);
}

TEST_CASE("negate flips every component") {
    FieldDef f = catalog("saddle2");
    FieldDef g = negate(f);
    auto v = eval(g, std::vector<double>{2, 3});
    CHECK(v[0] == -2.0);
    CHECK(v[1] == 3.0);
}

TEST_CASE("dimension mismatches are input errors") {
    FieldDef f = catalog("saddle2");
    CHECK_THROWS_AS(eval(f, std::vector<double>{1, 2, 3}), input_error);
    CHECK_THROWS_AS(jacobian(f, std::vector<double>{1}), input_error);
}

} // TEST_SUITE
