#include "boundary_geom.hpp"

#include <algorithm>
#include <numeric>

#include "vfdeg/errors.hpp"

namespace vfdeg::detail {

namespace {

// Lattice corner coordinates of the oriented endpoints of a boundary edge.
// Walking direction is the outward normal rotated by +90 degrees, which keeps
// the member cube on the left.
void edge_corners(const BoundaryFace& bf, std::array<int, 2>& a, std::array<int, 2>& b) {
    int i = bf.cube[0], j = bf.cube[1];
    if (bf.axis == 0) {
        int x = i + (bf.sign > 0 ? 1 : 0);
        if (bf.sign > 0) { a = {x, j}; b = {x, j + 1}; }     // normal +x, walk +y
        else { a = {x, j + 1}; b = {x, j}; }                  // normal -x, walk -y
    } else {
        int y = j + (bf.sign > 0 ? 1 : 0);
        if (bf.sign > 0) { a = {i + 1, y}; b = {i, y}; }      // normal +y, walk -x
        else { a = {i, y}; b = {i + 1, y}; }                  // normal -y, walk +x
    }
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

std::vector<std::vector<OrientedEdge>> cubeset_loops_2d(const CubeSet& C) {
    if (C.n != 2) throw input_error("cubeset_loops_2d needs a planar cube set");
    auto faces = boundary_faces(C);
    std::vector<std::array<int, 2>> starts(faces.size()), ends(faces.size());
    std::map<std::array<int, 2>, std::vector<std::size_t>> by_start;
    for (std::size_t k = 0; k < faces.size(); ++k) {
        edge_corners(faces[k], starts[k], ends[k]);
        by_start[starts[k]].push_back(k);
    }

    std::vector<bool> used(faces.size(), false);
    std::vector<std::vector<OrientedEdge>> loops;
    for (std::size_t k0 = 0; k0 < faces.size(); ++k0) {
        if (used[k0]) continue;
        std::vector<OrientedEdge> loop;
        std::size_t k = k0;
        while (!used[k]) {
            used[k] = true;
            const auto& bf = faces[k];
            OrientedEdge e;
            e.a = {starts[k][0] * C.h, starts[k][1] * C.h};
            e.b = {ends[k][0] * C.h, ends[k][1] * C.h};
            e.normal = {bf.axis == 0 ? static_cast<double>(bf.sign) : 0.0,
                        bf.axis == 1 ? static_cast<double>(bf.sign) : 0.0};
            loop.push_back(e);
            auto it = by_start.find(ends[k]);
            if (it == by_start.end()) throw numerical_error("open boundary chain in cube set");
            std::size_t next = faces.size();
            for (std::size_t cand : it->second)
                if (!used[cand]) { next = cand; break; }
            if (next == faces.size()) break; // loop closed back onto k0
            k = next;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

std::vector<std::vector<BoundaryFace>> cubeset_patches_3d(const CubeSet& C) {
    if (C.n != 3) throw input_error("cubeset_patches_3d needs a 3-d cube set");
    auto faces = boundary_faces(C);
    // Two boundary faces belong to the same surface patch when they share a
    // geometric lattice edge.
    std::map<std::vector<int>, std::vector<int>> edge_to_faces;
    for (std::size_t k = 0; k < faces.size(); ++k) {
        const auto& bf = faces[k];
        int a = bf.axis;
        int u = (a + 1) % 3, v = (a + 2) % 3;
        int pin = bf.cube[static_cast<std::size_t>(a)] + (bf.sign > 0 ? 1 : 0);
        // The face spans one lattice cell along u and v; its four edges pin one
        // of the spanning axes at either end. Key: (lo0,ext0,lo1,ext1,lo2,ext2).
        for (int pinned : {u, v}) {
            int other = pinned == u ? v : u;
            for (int end = 0; end <= 1; ++end) {
                std::vector<int> key(6, 0);
                key[static_cast<std::size_t>(2 * a)] = pin;
                key[static_cast<std::size_t>(2 * a + 1)] = 0;
                key[static_cast<std::size_t>(2 * pinned)] = bf.cube[static_cast<std::size_t>(pinned)] + end;
                key[static_cast<std::size_t>(2 * pinned + 1)] = 0;
                key[static_cast<std::size_t>(2 * other)] = bf.cube[static_cast<std::size_t>(other)];
                key[static_cast<std::size_t>(2 * other + 1)] = 1;
                edge_to_faces[key].push_back(static_cast<int>(k));
            }
        }
    }
    UnionFind uf(faces.size());
    for (const auto& [key, ids] : edge_to_faces)
        for (std::size_t i = 1; i < ids.size(); ++i) uf.unite(ids[0], ids[static_cast<std::size_t>(i)]);

    std::map<int, std::vector<BoundaryFace>> groups;
    for (std::size_t k = 0; k < faces.size(); ++k)
        groups[uf.find(static_cast<int>(k))].push_back(faces[k]);
    std::vector<std::vector<BoundaryFace>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

} // namespace vfdeg::detail
