#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vfdeg/cubical.hpp"

namespace vfdeg {

// A compact candidate block: analytic (ball, box, shell) or a cube set.
// Text form, shared with the CLI:
//   ball:cx,cy[,cz]:r
//   box:lo1,lo2[,lo3]:hi1,hi2[,hi3]
//   shell:cx,cy[,cz]:rin:rout
struct Region {
    enum class Kind { Ball, Box, Shell, Cubes };

    Kind kind = Kind::Ball;
    int n = 0;
    std::vector<double> center; // ball, shell
    double radius = 0.0;        // ball
    double rin = 0.0, rout = 0.0; // shell
    std::vector<double> lo, hi; // box
    CubeSet cubes;              // cubeset

    static Region ball(std::vector<double> c, double r);
    static Region box(std::vector<double> lo, std::vector<double> hi);
    static Region shell(std::vector<double> c, double rin, double rout);
    static Region cubeset(CubeSet cs);

    bool contains(std::span<const double> p) const;

    // Signed distance to the boundary: positive inside, negative outside.
    double boundary_distance(std::span<const double> p) const;

    // Number of connected boundary components (shell: 0 = outer, 1 = inner).
    int boundary_component_count() const;

    // Distance from p to the given boundary component as a point set.
    double boundary_component_distance(int component, std::span<const double> p) const;

    std::pair<std::vector<double>, std::vector<double>> bbox() const;
    double diameter() const;
};

Region parse_region(const std::string& spec);
std::string to_string(const Region& R);

} // namespace vfdeg
