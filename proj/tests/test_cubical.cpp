#include <doctest.h>

#include <map>
#include <random>
#include <string>

#include "helpers.hpp"
#include "vfdeg/cubical.hpp"
#include "vfdeg/errors.hpp"
#include "vfdeg/region.hpp"

using namespace vfdeg;

namespace {

CubeSet make_set(int n, double h, std::initializer_list<std::vector<int>> cells) {
    CubeSet C;
    C.n = n;
    C.h = h;
    for (const auto& c : cells) C.cells.insert(c);
    return C;
}

// Face-closes an explicit cell list; test-side builder for euler_pair inputs.
void insert_with_faces(CubicalComplex& X, const std::vector<int>& cell) {
    int dim = 0;
    for (std::size_t a = 0; a + 1 < cell.size(); a += 2) dim += cell[a + 1];
    X.cells[static_cast<std::size_t>(dim)].insert(cell);
    for (std::size_t a = 0; a + 1 < cell.size(); a += 2) {
        if (cell[a + 1] == 0) continue;
        for (int end = 0; end <= 1; ++end) {
            std::vector<int> face = cell;
            face[a] += end;
            face[a + 1] = 0;
            insert_with_faces(X, face);
        }
    }
}

CubicalComplex make_complex(int n, std::initializer_list<std::vector<int>> cells) {
    CubicalComplex X;
    X.n = n;
    X.cells.resize(static_cast<std::size_t>(n) + 1);
    for (const auto& c : cells) insert_with_faces(X, c);
    return X;
}

} // namespace

TEST_SUITE("cubical") {

TEST_CASE("closure of one square: 4 vertices, 4 edges, 1 face") {
    CubeSet C = make_set(2, 1.0, {{0, 0}});
    CubicalComplex X = closure(C);
    CHECK(X.count(0) == 4);
    CHECK(X.count(1) == 4);
    CHECK(X.count(2) == 1);
    CHECK(euler(X) == 1); // contractible
    auto brute = testutil::brute_closure_counts(C);
    CHECK(brute[0] == 4);
    CHECK(brute[1] == 4);
    CHECK(brute[2] == 1);
}

TEST_CASE("closure of two edge-adjacent squares: 6 vertices, 7 edges, 2 faces") {
    CubeSet C = make_set(2, 1.0, {{0, 0}, {1, 0}});
    CubicalComplex X = closure(C);
    CHECK(X.count(0) == 6);
    CHECK(X.count(1) == 7);
    CHECK(X.count(2) == 2);
    auto brute = testutil::brute_closure_counts(C);
    CHECK(brute[0] == 6);
    CHECK(brute[1] == 7);
    CHECK(brute[2] == 2);
}

TEST_CASE("closure of one cube: 8 vertices, 12 edges, 6 squares, 1 cube") {
    CubeSet C = make_set(3, 1.0, {{0, 0, 0}});
    CubicalComplex X = closure(C);
    CHECK(X.count(0) == 8);
    CHECK(X.count(1) == 12);
    CHECK(X.count(2) == 6);
    CHECK(X.count(3) == 1);
    CHECK(euler(X) == 1);
}

TEST_CASE("a ring of 8 squares around a missing center has chi 0") {
    CubeSet C;
    C.n = 2;
    C.h = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(i == 1 && j == 1)) C.cells.insert({i, j});
    CHECK(euler(closure(C)) == 0); // a circle
    CHECK(testutil::brute_euler(C) == 0);
}

TEST_CASE("the 26 boundary cubes of a 3x3x3 block form a 2-sphere") {
    CubeSet C;
    C.n = 3;
    C.h = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                if (!(i == 1 && j == 1 && k == 1)) C.cells.insert({i, j, k});
    CHECK(C.cells.size() == 26);
    CHECK(euler(closure(C)) == 2);
    CHECK(testutil::brute_euler(C) == 2);
}

TEST_CASE("closure is idempotent in effect") {
    CubeSet C = make_set(2, 0.5, {{0, 0}, {0, 1}, {5, 5}});
    CubicalComplex X = closure(C);
    // every face of every cell is present
    for (std::size_t k = 0; k < X.cells.size(); ++k)
        for (const auto& cell : X.cells[k])
            for (std::size_t a = 0; a + 1 < cell.size(); a += 2) {
                if (cell[a + 1] == 0) continue;
                for (int end = 0; end <= 1; ++end) {
                    std::vector<int> face = cell;
                    face[a] += end;
                    face[a + 1] = 0;
                    CHECK(X.cells[k - 1].count(face) == 1);
                }
            }
}

TEST_CASE("euler_pair subtracts subcomplex characteristics") {
    CubicalComplex square = make_complex(2, {{0, 1, 0, 1}});
    CubicalComplex rim = make_complex(2, {{0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}});
    CHECK(euler(square) == 1);
    CHECK(euler(rim) == 0);
    CHECK(euler_pair(square, rim) == 1); // chi(square)-chi(boundary) = 1-0

    CubicalComplex empty;
    empty.n = 2;
    empty.cells.resize(3);
    CHECK(euler_pair(square, empty) == euler(square));

    // interval relative to its endpoints: 1 - 2 = -1 (a 1-d saddle block)
    CubicalComplex interval = make_complex(1, {{0, 1}});
    CubicalComplex ends = make_complex(1, {{0, 0}, {1, 0}});
    CHECK(euler_pair(interval, ends) == -1);

    CubicalComplex stray = make_complex(2, {{7, 0, 7, 0}});
    CHECK_THROWS_AS(euler_pair(square, stray), input_error);
}

TEST_CASE("rasterized disk is symmetric and nonempty") {
    Region disk = Region::ball({0, 0}, 1.0);
    CubeSet C = rasterize(disk, 0.25);
    CHECK(!C.cells.empty());
    for (const auto& c : C.cells) {
        // mirror cell of [i,i+1) is [-i-1,-i)
        std::vector<int> m{-c[0] - 1, -c[1] - 1};
        CHECK(C.cells.count(m) == 1);
    }
}

TEST_CASE("rasterized shell keeps its hole") {
    Region shell = Region::shell({0, 0}, 0.5, 1.5);
    CubeSet C = rasterize(shell, 0.1);
    REQUIRE(!C.cells.empty());
    // complement inside the bounding box splits into hole + outside
    CubeSet comp;
    comp.n = 2;
    comp.h = C.h;
    for (int i = -18; i < 18; ++i)
        for (int j = -18; j < 18; ++j)
            if (!C.cells.count({i, j})) comp.cells.insert({i, j});
    CHECK(components(comp).size() == 2);
}

TEST_CASE("unit box at width 1 is a single cube") {
    Region box2 = Region::box({0, 0}, {1, 1});
    CHECK(rasterize(box2, 1.0).cells.size() == 1);
    Region box4 = Region::box({0, 0, 0, 0}, {1, 1, 1, 1});
    CHECK(rasterize(box4, 1.0).cells.size() == 1);
}

TEST_CASE("components are face-connected and ordered") {
    CubeSet two = make_set(2, 1.0, {{0, 0}, {5, 5}});
    auto comps = components(two);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0][0] == std::vector<int>{0, 0});
    CHECK(comps[1][0] == std::vector<int>{5, 5});

    // diagonal neighbors are not face-adjacent
    CubeSet diag = make_set(2, 1.0, {{0, 0}, {1, 1}});
    CHECK(components(diag).size() == 2);

    CubeSet ring;
    ring.n = 2;
    ring.h = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(i == 1 && j == 1)) ring.cells.insert({i, j});
    CHECK(components(ring).size() == 1);

    CubeSet empty;
    empty.n = 2;
    CHECK(components(empty).empty());
}

TEST_CASE("boundary faces count free faces with outward normals") {
    CubeSet one = make_set(2, 1.0, {{0, 0}});
    CHECK(boundary_faces(one).size() == 4);

    CubeSet block = make_set(2, 1.0, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    CHECK(boundary_faces(block).size() == 8);

    CubeSet one3 = make_set(3, 1.0, {{0, 0, 0}});
    auto faces = boundary_faces(one3);
    CHECK(faces.size() == 6);
    for (const auto& bf : faces) {
        auto c = bf.center(1.0);
        CHECK(c[static_cast<std::size_t>(bf.axis)] == (bf.sign > 0 ? 1.0 : 0.0));
    }
}

TEST_CASE("boundary faces close up: every vertex meets exactly two loop edges") {
    CubeSet ring;
    ring.n = 2;
    ring.h = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(i == 1 && j == 1)) ring.cells.insert({i, j});
    auto faces = boundary_faces(ring);
    CHECK(faces.size() == 16); // 12 outer + 4 inner
    std::map<std::vector<int>, int> vertex_degree;
    for (const auto& bf : faces) {
        int free_axis = 1 - bf.axis;
        std::vector<int> v0 = bf.cube, v1 = bf.cube;
        v0[static_cast<std::size_t>(bf.axis)] += bf.sign > 0 ? 1 : 0;
        v1[static_cast<std::size_t>(bf.axis)] += bf.sign > 0 ? 1 : 0;
        v1[static_cast<std::size_t>(free_axis)] += 1;
        ++vertex_degree[v0];
        ++vertex_degree[v1];
    }
    for (const auto& [v, deg] : vertex_degree) CHECK(deg == 2);
}

TEST_CASE("3-d boundary faces form a closed surface: every edge is shared twice") {
    CubeSet blob = make_set(3, 1.0, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    auto faces = boundary_faces(blob);
    std::map<std::string, int> edge_count;
    for (const auto& bf : faces) {
        int u = (bf.axis + 1) % 3, v = (bf.axis + 2) % 3;
        int pin = bf.cube[static_cast<std::size_t>(bf.axis)] + (bf.sign > 0 ? 1 : 0);
        for (int pinned : {u, v}) {
            int other = pinned == u ? v : u;
            for (int end = 0; end <= 1; ++end) {
                std::vector<int> lo(3), ext(3, 0);
                lo[static_cast<std::size_t>(bf.axis)] = pin;
                lo[static_cast<std::size_t>(pinned)] = bf.cube[static_cast<std::size_t>(pinned)] + end;
                lo[static_cast<std::size_t>(other)] = bf.cube[static_cast<std::size_t>(other)];
                ext[static_cast<std::size_t>(other)] = 1;
                std::string key;
                for (int a = 0; a < 3; ++a)
                    key += std::to_string(lo[static_cast<std::size_t>(a)]) + (ext[static_cast<std::size_t>(a)] ? "u|" : "p|");
                ++edge_count[key];
            }
        }
    }
    for (const auto& [key, count] : edge_count) CHECK(count == 2);
}

TEST_CASE("chi is stable under refinement for the catalog regions") {
    Region disk = Region::ball({0, 0}, 1.0);
    CHECK(euler(closure(rasterize(disk, 0.2))) == 1);
    CHECK(euler(closure(rasterize(disk, 0.1))) == 1);

    Region shell2 = Region::shell({0, 0}, 0.5, 1.5);
    CHECK(euler(closure(rasterize(shell2, 0.1))) == 0);
    CHECK(euler(closure(rasterize(shell2, 0.05))) == 0);

    Region shell3 = Region::shell({0, 0, 0}, 0.7, 1.3); // cubical 2-sphere
    CHECK(euler(closure(rasterize(shell3, 0.2))) == 2);
    CHECK(euler(closure(rasterize(shell3, 0.1))) == 2);
}

TEST_CASE("euler is additive over disjoint unions") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coord(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
        CubeSet A, B, U;
        A.n = B.n = U.n = 2;
        A.h = B.h = U.h = 1.0;
        for (int k = 0; k < 6; ++k) {
            std::vector<int> a{coord(rng), coord(rng)};
            std::vector<int> b{coord(rng) + 100, coord(rng) + 100}; // far apart
            A.cells.insert(a);
            B.cells.insert(b);
            U.cells.insert(a);
            U.cells.insert(b);
        }
        CHECK(euler(closure(U)) == euler(closure(A)) + euler(closure(B)));
    }
}

TEST_CASE("rasterize rejects non-positive widths") {
    CHECK_THROWS_AS(rasterize(Region::ball({0, 0}, 1.0), 0.0), input_error);
}

} // TEST_SUITE
