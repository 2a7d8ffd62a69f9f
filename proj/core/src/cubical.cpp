#include "vfdeg/cubical.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "vfdeg/errors.hpp"
#include "vfdeg/region.hpp"

namespace vfdeg {

std::vector<double> CubeSet::center(const std::vector<int>& c) const {
    std::vector<double> p(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) p[i] = (c[i] + 0.5) * h;
    return p;
}

std::vector<double> BoundaryFace::center(double h) const {
    std::vector<double> p(cube.size());
    for (std::size_t i = 0; i < cube.size(); ++i) p[i] = (cube[i] + 0.5) * h;
    p[static_cast<std::size_t>(axis)] = (cube[static_cast<std::size_t>(axis)] + (sign > 0 ? 1.0 : 0.0)) * h;
    return p;
}

CubeSet rasterize(const Region& R, double h) {
    if (h <= 0.0) throw input_error("cell width must be positive");
    CubeSet out;
    out.n = R.n;
    out.h = h;
    auto [lo, hi] = R.bbox();
    std::vector<int> ilo(static_cast<std::size_t>(R.n)), ihi(static_cast<std::size_t>(R.n));
    for (int a = 0; a < R.n; ++a) {
        ilo[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(lo[static_cast<std::size_t>(a)] / h)) - 1;
        ihi[static_cast<std::size_t>(a)] = static_cast<int>(std::ceil(hi[static_cast<std::size_t>(a)] / h)) + 1;
    }
    std::vector<int> c = ilo;
    std::vector<double> p(static_cast<std::size_t>(R.n));
    for (;;) {
        for (int a = 0; a < R.n; ++a) p[static_cast<std::size_t>(a)] = (c[static_cast<std::size_t>(a)] + 0.5) * h;
        if (R.contains(p)) out.cells.insert(c);
        int a = 0;
        while (a < R.n) {
            if (++c[static_cast<std::size_t>(a)] <= ihi[static_cast<std::size_t>(a)]) break;
            c[static_cast<std::size_t>(a)] = ilo[static_cast<std::size_t>(a)];
            ++a;
        }
        if (a == R.n) break;
    }
    return out;
}

CubicalComplex closure(const CubeSet& C) {
    CubicalComplex X;
    X.n = C.n;
    X.cells.resize(static_cast<std::size_t>(C.n) + 1);
    // Per axis a cube contributes the unit interval and its two endpoints.
    std::vector<int> cell(static_cast<std::size_t>(2 * C.n));
    for (const auto& q : C.cells) {
        std::vector<int> choice(static_cast<std::size_t>(C.n), 0); // 0: unit, 1: lo point, 2: hi point
        for (;;) {
            int dim = 0;
            for (int a = 0; a < C.n; ++a) {
                int ch = choice[static_cast<std::size_t>(a)];
                cell[static_cast<std::size_t>(2 * a)] = q[static_cast<std::size_t>(a)] + (ch == 2 ? 1 : 0);
                cell[static_cast<std::size_t>(2 * a) + 1] = (ch == 0) ? 1 : 0;
                dim += (ch == 0);
            }
            X.cells[static_cast<std::size_t>(dim)].insert(cell);
            int a = 0;
            while (a < C.n) {
                if (++choice[static_cast<std::size_t>(a)] <= 2) break;
                choice[static_cast<std::size_t>(a)] = 0;
                ++a;
            }
            if (a == C.n) break;
        }
    }
    return X;
}

long long euler(const CubicalComplex& X) {
    long long chi = 0;
    for (std::size_t k = 0; k < X.cells.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(X.cells[k].size());
    return chi;
}

long long euler_pair(const CubicalComplex& X, const CubicalComplex& A) {
    if (A.n != X.n) throw input_error("euler_pair: dimension mismatch");
    for (std::size_t k = 0; k < A.cells.size(); ++k)
        for (const auto& cell : A.cells[k])
            if (k >= X.cells.size() || !X.cells[k].count(cell))
                throw input_error("euler_pair: A is not a subcomplex of X");
    return euler(X) - euler(A);
}

std::vector<std::vector<std::vector<int>>> components(const CubeSet& C) {
    std::vector<std::vector<std::vector<int>>> comps;
    std::set<std::vector<int>> seen;
    for (const auto& start : C.cells) {
        if (seen.count(start)) continue;
        std::vector<std::vector<int>> comp;
        std::deque<std::vector<int>> queue{start};
        seen.insert(start);
        while (!queue.empty()) {
            auto q = queue.front();
            queue.pop_front();
            comp.push_back(q);
            for (int a = 0; a < C.n; ++a) {
                for (int s : {-1, +1}) {
                    auto nb = q;
                    nb[static_cast<std::size_t>(a)] += s;
                    if (C.cells.count(nb) && !seen.count(nb)) {
                        seen.insert(nb);
                        queue.push_back(nb);
                    }
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::vector<BoundaryFace> boundary_faces(const CubeSet& C) {
    std::vector<BoundaryFace> out;
    for (const auto& q : C.cells) {
        for (int a = 0; a < C.n; ++a) {
            for (int s : {-1, +1}) {
                auto nb = q;
                nb[static_cast<std::size_t>(a)] += s;
                if (!C.cells.count(nb)) out.push_back({q, a, s});
            }
        }
    }
    return out;
}

} // namespace vfdeg
