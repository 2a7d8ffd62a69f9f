#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vfdeg/boundary.hpp"
#include "vfdeg/degree.hpp"
#include "vfdeg/field.hpp"
#include "vfdeg/region.hpp"

namespace vfdeg {

// An Euler-characteristic entry together with where it came from. Supplied
// values are echoed verbatim; computed ones carry their grid resolution.
struct EulerEntry {
    long long value = 0;
    bool supplied = false;
    double resolution = 0.0; // 0 for supplied or combinatorial values

    std::string provenance() const;
};

struct EulerData {
    std::optional<EulerEntry> chiN, chiL, chiK, chiS, chiSstar;
};

enum class Verdict { Pass, Fail, Inconclusive, ConnectionExists };

std::string to_string(Verdict v);

// One mechanical check of a degree identity. For the identity checks the
// verdict is pass iff lhs == rhs exactly; every identity here is
// integer-valued. Inconclusive is first-class: an unmet precondition or a
// silent sufficient condition, never a theorem violation.
struct VerifyReport {
    std::string check; // conley | eq1 | planar-bound | poincare-hopf | tangency |
                       // nonsaddle | connection | antipodal
    long long lhs = 0;
    long long rhs = 0;
    Verdict verdict = Verdict::Inconclusive;
    EulerData euler;
    std::map<std::string, std::string> inputs;  // echo of what the check consumed
    std::map<std::string, long long> values;    // auxiliary integers (chi_C, both
                                                // non-saddle conventions, ...)
    std::vector<std::string> notes;
};

struct VerifyOptions {
    std::optional<long long> chiN, chiL, chiK, chiS, chiSstar; // supplied values
    std::optional<long long> chiA, chiR;                       // connection check
    std::optional<Region> a_block, r_block; // rasterized to chiA/chiR when not supplied
    bool reverse = false;                   // run the check on -F (poincare-hopf)
    double resolution = 0.0;                // rasterization width, 0 = auto
    int samples = 0;                        // boundary samples, 0 = defaults
    double tangency_tol = defaults::tangency_tol;
    DegreeOptions degree;
};

// chi of a region by rasterize + closure + alternating count, refined until
// two successive grids agree. Throws numerical_error if it never stabilizes.
EulerEntry euler_of_region(const Region& R, double h0 = 0.0);

// chi of one boundary component via a thickened rasterization (cells whose
// center is within 1.5h of the component), refined the same way.
EulerEntry euler_of_boundary_component(const Region& R, int component, double h0 = 0.0);

// deg(F,N) against (-1)^n (chi(N) - chi(L)). chi(L) comes from the sampled
// exit set in the plane (arcs count 1, full loops 0), from thickened
// rasterizations of uniformly-outward components in space, or is supplied.
VerifyReport check_degree_conley(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

// deg(F,N) against (-1)^n (chi(K) - chi(S)). Defaults when every boundary
// component is uniform: chi(K) = chi(N), S = union of outward components.
VerifyReport check_eq1(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

// n=2 only: deg(F,N) <= chi(K).
VerifyReport check_planar_bound(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

// All-outward boundary: total index against chi(N). Inconclusive otherwise
// (opt.reverse re-runs on -F for all-inward blocks).
VerifyReport check_poincare_hopf(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

// n=2 only: tangency components against 2(chi(N) - I(F|N)).
VerifyReport check_tangency(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

// Non-saddle block (every boundary component uniform). n even: I = chi(N).
// n odd: evaluates both sign conventions (chi(S*)-chi(S))/2 as printed and
// (chi(S)-chi(S*))/2 as forced by the degree identity, and reports which one
// the degree oracle confirms; pass means the forced convention matched.
VerifyReport check_nonsaddle(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

// deg(F,N) != chi(A)+chi(R)-chi(S) certifies a connecting orbit; equality is
// inconclusive (the criterion is sufficient, not necessary). With chi(K)
// supplied also reports chi(C) = chi(A)+chi(R)-chi(K) in the notes.
VerifyReport detect_connection(const FieldDef& f, const Region& N, const VerifyOptions& opt = {});

struct AntipodalResult {
    bool found = false;
    std::vector<double> point;
    double residual = 0.0;
    std::string mode; // same | opposite
};

// Searches ∂N (N symmetric, 0 in N) for a point where F(x) and F(-x) point in
// the same (mode "same") or opposite (mode "opposite") direction: minimizes
// |F(x)/|F(x)| -/+ F(-x)/|F(-x)|| over boundary samples and polishes by local
// descent. The caller picks the mode from the parity of chi(K) and chi(S).
AntipodalResult antipodal_search(const FieldDef& f, const Region& N, const std::string& mode,
                                 double tol = 1e-6, int samples = 0);

} // namespace vfdeg
