#pragma once

#include <set>
#include <vector>

namespace vfdeg {

struct Region;

// A finite set of full n-cubes on the uniform lattice of width h. The cube
// with coordinates (k_1..k_n) occupies the product of [k_i*h, (k_i+1)*h].
struct CubeSet {
    int n = 0;
    double h = 1.0;
    std::set<std::vector<int>> cells;

    bool member(const std::vector<int>& c) const { return cells.count(c) != 0; }
    std::vector<double> center(const std::vector<int>& c) const;
};

// A face-closed cubical complex. An elementary cell is stored flattened as
// (lo_1, ext_1, ..., lo_n, ext_n) with ext in {0,1}; its dimension is the
// number of unit extents. cells[k] holds the k-cells.
struct CubicalComplex {
    int n = 0;
    std::vector<std::set<std::vector<int>>> cells;

    long long count(int k) const { return static_cast<long long>(cells[k].size()); }
};

// Cubes whose centers lie in R. An empty result is legal (callers report it).
CubeSet rasterize(const Region& R, double h);

// All faces of all member cubes, every dimension; idempotent by construction.
CubicalComplex closure(const CubeSet& C);

// Alternating cell count sum_k (-1)^k |cells_k|.
long long euler(const CubicalComplex& X);

// euler(X) - euler(A). Throws input_error if A is not a subcomplex of X.
long long euler_pair(const CubicalComplex& X, const CubicalComplex& A);

// Connected components under face adjacency (cubes sharing an (n-1)-face),
// ordered by their lexicographically least cube.
std::vector<std::vector<std::vector<int>>> components(const CubeSet& C);

// A free face of a member cube: the (n-1)-face not shared with another member,
// tagged with its outward normal (axis, sign).
struct BoundaryFace {
    std::vector<int> cube;
    int axis = 0;
    int sign = 1; // +1: the face at cube[axis]+1; -1: the face at cube[axis]

    std::vector<double> center(double h) const;
};

std::vector<BoundaryFace> boundary_faces(const CubeSet& C);

} // namespace vfdeg
