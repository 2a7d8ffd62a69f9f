#pragma once

// Internal helpers: orders the free faces of a cube set into oriented loops
// (n=2) or edge-connected patches (n=3). Loops are oriented with the region on
// the left, so outer loops run counterclockwise and hole loops clockwise.

#include <array>
#include <map>
#include <vector>

#include "vfdeg/cubical.hpp"

namespace vfdeg::detail {

struct OrientedEdge {
    std::array<double, 2> a{}, b{}; // walk a -> b
    std::array<double, 2> normal{};
};

std::vector<std::vector<OrientedEdge>> cubeset_loops_2d(const CubeSet& C);

std::vector<std::vector<BoundaryFace>> cubeset_patches_3d(const CubeSet& C);

} // namespace vfdeg::detail
