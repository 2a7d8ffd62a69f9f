#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vfdeg/defaults.hpp"
#include "vfdeg/field.hpp"
#include "vfdeg/region.hpp"

namespace vfdeg {

struct Zero {
    std::vector<double> point;
    int index = 0;        // sign det DF
    double residual = 0.0; // |F(point)|
    double det_jac = 0.0;
};

struct DegreeReport {
    std::string method; // winding | kronecker | zeros | auto
    double raw = 0.0;
    int degree = 0;
    int refinements = 0;
    double min_boundary_f = std::numeric_limits<double>::infinity();
    std::vector<Zero> zeros; // zeros / auto methods
    bool cross_validated = false; // auto ran two methods and they agreed
    std::vector<std::string> warnings;
};

struct DegreeOptions {
    int samples_2d = defaults::boundary_samples_2d;
    int grid_theta = defaults::sphere_grid_theta;
    int grid_phi = defaults::sphere_grid_phi;
    double newton_tol = defaults::newton_tol;
    int seeds_per_axis = defaults::newton_seeds_per_axis;
    double quad_agreement = defaults::quad_agreement;
    int max_refinements = defaults::max_refinements;
};

// n=2: continuous angle increment of F along each boundary loop (outer loops
// counterclockwise, shell inner loops clockwise) / 2pi, with adaptive
// bisection keeping every angle step under pi/2.
DegreeReport winding_degree(const FieldDef& f, const Region& N, const DegreeOptions& opt = {});

// n=3: (1/4pi) of the surface integral of F.(dF_u x dF_v)/|F|^3 over the
// parameterized boundary, tangents by forward-mode AD, grids doubled until
// two successive raw values differ by < quad_agreement and round to the same
// integer.
DegreeReport kronecker_degree(const FieldDef& f, const Region& N, const DegreeOptions& opt = {});

// Newton from every grid seed, deduplicated by a merge radius; each interior
// zero contributes sign det DF. A zero with |det DF| below the scale-aware
// degeneracy threshold is fatal for this method.
DegreeReport zero_count_degree(const FieldDef& f, const Region& N, const DegreeOptions& opt = {});

// Local degree of F over ball(z, radius); z must be the only zero inside
// (checked by Newton seeding).
int point_index(const FieldDef& f, std::span<const double> z, double radius,
                const DegreeOptions& opt = {});

enum class DegreeMethod { Auto, Winding, Kronecker, Zeros };

// Auto runs the boundary method for the dimension plus zero counting when no
// degeneracy arises; integer disagreement is a fatal cross-validation error.
DegreeReport compute_degree(const FieldDef& f, const Region& N,
                            DegreeMethod method = DegreeMethod::Auto,
                            const DegreeOptions& opt = {});

} // namespace vfdeg
