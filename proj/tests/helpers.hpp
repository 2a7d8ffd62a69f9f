#pragma once

// Shared test utilities: independent oracles (finite differences, brute-force
// cell enumeration) and seeded generators. These stay independent of the
// library paths they are used to check.

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "vfdeg/cubical.hpp"
#include "vfdeg/field.hpp"

namespace testutil {

// Central-difference Jacobian, the oracle for the forward-mode AD.
inline std::vector<double> fd_jacobian(const vfdeg::FieldDef& f, const std::vector<double>& p,
                                       double step = 1e-5) {
    const std::size_t n = p.size();
    std::vector<double> jac(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> hi = p, lo = p;
        hi[j] += step;
        lo[j] -= step;
        std::vector<double> fhi = vfdeg::eval(f, hi), flo = vfdeg::eval(f, lo);
        for (std::size_t i = 0; i < n; ++i) jac[i * n + j] = (fhi[i] - flo[i]) / (2 * step);
    }
    return jac;
}

// Brute-force closure cell counts keyed by strings; independent of the
// library's cell encoding.
inline std::map<int, long long> brute_closure_counts(const vfdeg::CubeSet& C) {
    std::map<int, std::set<std::string>> cells;
    std::vector<int> choice(static_cast<std::size_t>(C.n), 0);
    for (const auto& q : C.cells) {
        std::fill(choice.begin(), choice.end(), 0);
        for (;;) {
            std::string key;
            int dim = 0;
            for (int a = 0; a < C.n; ++a) {
                int ch = choice[static_cast<std::size_t>(a)];
                int lo = q[static_cast<std::size_t>(a)] + (ch == 2 ? 1 : 0);
                int ext = ch == 0 ? 1 : 0;
                dim += ext;
                key += std::to_string(lo) + (ext ? "u" : "p") + "|";
            }
            cells[dim].insert(key);
            int a = 0;
            while (a < C.n) {
                if (++choice[static_cast<std::size_t>(a)] <= 2) break;
                choice[static_cast<std::size_t>(a)] = 0;
                ++a;
            }
            if (a == C.n) break;
        }
    }
    std::map<int, long long> counts;
    for (const auto& [dim, set] : cells) counts[dim] = static_cast<long long>(set.size());
    return counts;
}

inline long long brute_euler(const vfdeg::CubeSet& C) {
    long long chi = 0;
    for (const auto& [dim, count] : brute_closure_counts(C))
        chi += (dim % 2 == 0 ? 1 : -1) * count;
    return chi;
}

// Random planar polynomial field of component degree <= 3, emitted as source
// text so the parser is on the tested path.
inline vfdeg::FieldDef random_planar_field(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    auto component = [&] {
        const char* monos[10] = {"",    "x",   "y",     "x^2",   "x*y",
                                 "y^2", "x^3", "x^2*y", "x*y^2", "y^3"};
        std::string src;
        char buf[64];
        for (int k = 0; k < 10; ++k) {
            std::snprintf(buf, sizeof buf, "%.10g", coef(rng));
            if (k) src += " + ";
            src += "(";
            src += buf;
            src += ")";
            if (monos[k][0] != '\0') {
                src += "*";
                src += monos[k];
            }
        }
        return src;
    };
    std::string src = component() + ", " + component();
    return vfdeg::parse_field(src, 2, {});
}

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

} // namespace testutil
