#pragma once

#include <string>
#include <vector>

#include "vfdeg/defaults.hpp"
#include "vfdeg/field.hpp"
#include "vfdeg/region.hpp"

namespace vfdeg {

enum class SampleClass { Exit, Entrance, Tangent };

struct BoundarySample {
    std::vector<double> point;
    std::vector<double> normal; // outward unit normal of the face that produced it
    double f_dot_n = 0.0;
    double f_norm = 0.0;
    SampleClass cls = SampleClass::Tangent;
};

// One connected boundary component. In n=2 the samples are in cyclic order
// along the loop (box corners appear twice, once per adjacent face, per that
// face's normal).
struct BoundaryComponent {
    int region_component = 0;
    bool cyclic = false; // n=2 loops
    std::vector<BoundarySample> samples;
    std::string verdict; // "outward" | "inward" | "mixed"
};

struct BlockBoundary {
    int n = 0;
    double tol = defaults::tangency_tol;
    double min_f_norm = 0.0;
    std::vector<BoundaryComponent> components;
    // n=2 only: maximal tangent runs plus direct exit<->entrance flips along
    // each loop, cyclically merged. A transversal tangency either lands a
    // sample inside the tolerance band (a run) or flips sign between adjacent
    // samples; both stand for one point of L ∩ L'.
    int tangency_components = -1;
    bool degenerate_tangency = false; // a tangent run covered a whole loop
};

// Boundary samples with outward normals, grouped by connected component and
// not yet classified. samples is the count per closed curve (n=2) or the total
// surface budget (n=3); 0 picks the defaults.
std::vector<BoundaryComponent> sample_boundary(const Region& N, int samples = 0);

// Samples ∂N and classifies each sample: tangent iff |F.n| <= tol*|F|, exit
// iff F.n > 0 beyond that band, entrance iff F.n < 0. samples is the count per
// closed curve (n=2) or the total surface budget (n=3). Throws numerical_error
// if F vanishes on the boundary within tolerance (invalid block).
BlockBoundary classify_boundary(const FieldDef& f, const Region& N,
                                int samples = 0 /* 0 = defaults */, double tol = defaults::tangency_tol);

// The tangency-component count of a planar block boundary (see above).
// Throws input_error for n != 2.
int tangency_components_2d(const BlockBoundary& b);

enum class IsolationVerdict { Plausible, Violated, Indeterminate };

struct IsolationReport {
    IsolationVerdict verdict = IsolationVerdict::Indeterminate;
    int boundary_adjacent_cells = 0;
    int staying_boundary_cells = 0; // these witness the violation
    int indeterminate_cells = 0;
    std::vector<int> witness; // one staying boundary-adjacent cell, if any
};

// Sampled isolating-neighborhood check: violated when some boundary-adjacent
// grid cell has a center orbit staying in N over [-T, T]. Heuristic; reports
// must label it as such.
IsolationReport isolation_check(const FieldDef& f, const Region& N, double T, double resolution);

} // namespace vfdeg
