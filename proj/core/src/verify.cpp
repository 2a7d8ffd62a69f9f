#include "vfdeg/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vfdeg/errors.hpp"
#include "vfdeg/linalg.hpp"

namespace vfdeg {

namespace {

int parity_sign(int n) { return n % 2 == 0 ? 1 : -1; }

std::string point_text(std::span<const double> p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
    return os.str();
}

void echo_inputs(VerifyReport& rep, const FieldDef& f, const Region& N) {
    rep.inputs["field"] = f.source;
    rep.inputs["region"] = to_string(N);
}

EulerEntry supplied_entry(long long v) { return {v, true, 0.0}; }

double auto_resolution(const Region& R) {
    switch (R.kind) {
        case Region::Kind::Ball: return R.radius / 6.0;
        case Region::Kind::Shell: return std::min((R.rout - R.rin) / 4.0, R.rin / 2.0);
        case Region::Kind::Box: {
            double m = R.hi[0] - R.lo[0];
            for (std::size_t i = 1; i < R.lo.size(); ++i) m = std::min(m, R.hi[i] - R.lo[i]);
            return m / 4.0;
        }
        case Region::Kind::Cubes: return R.cubes.h;
    }
    return 1.0;
}

long long chi_at(const Region& R, double h) {
    CubeSet cs = rasterize(R, h);
    if (cs.cells.empty()) throw numerical_error("empty rasterization");
    return euler(closure(cs));
}

} // namespace

std::string EulerEntry::provenance() const {
    if (supplied) return "supplied";
    if (resolution > 0.0) {
        std::ostringstream os;
        os << "computed(h=" << resolution << ')';
        return os.str();
    }
    return "computed";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::ConnectionExists: return "connection exists";
    }
    return "?";
}

EulerEntry euler_of_region(const Region& R, double h0) {
    if (R.kind == Region::Kind::Cubes) // already combinatorial
        return {euler(closure(R.cubes)), false, R.cubes.h};
    double h = h0 > 0.0 ? h0 : auto_resolution(R);
    long long prev = 0;
    bool have_prev = false;
    for (int round = 0; round < 5; ++round) {
        long long chi;
        try {
            chi = chi_at(R, h);
        } catch (const numerical_error&) {
            h *= 0.5; // too coarse to see the region at all
            have_prev = false;
            continue;
        }
        if (have_prev && chi == prev) return {chi, false, h * 2.0};
        prev = chi;
        have_prev = true;
        h *= 0.5;
    }
    throw numerical_error("Euler characteristic did not stabilize under refinement for " +
                          to_string(R));
}

EulerEntry euler_of_boundary_component(const Region& R, int component, double h0) {
    if (R.kind == Region::Kind::Cubes)
        throw input_error("boundary-component chi must be supplied for cube-set regions");
    double h = h0 > 0.0 ? h0 : auto_resolution(R) / 2.0;

    auto chi_thickened = [&](double width) {
        auto [lo, hi] = R.bbox();
        CubeSet cs;
        cs.n = R.n;
        cs.h = width;
        std::vector<int> ilo(static_cast<std::size_t>(R.n)), ihi(static_cast<std::size_t>(R.n)), c;
        for (int a = 0; a < R.n; ++a) {
            ilo[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(lo[static_cast<std::size_t>(a)] / width)) - 2;
            ihi[static_cast<std::size_t>(a)] = static_cast<int>(std::ceil(hi[static_cast<std::size_t>(a)] / width)) + 2;
        }
        c = ilo;
        std::vector<double> p(static_cast<std::size_t>(R.n));
        for (;;) {
            for (int a = 0; a < R.n; ++a) p[static_cast<std::size_t>(a)] = (c[static_cast<std::size_t>(a)] + 0.5) * width;
            if (R.boundary_component_distance(component, p) <= 1.5 * width) cs.cells.insert(c);
            int a = 0;
            while (a < R.n) {
                if (++c[static_cast<std::size_t>(a)] <= ihi[static_cast<std::size_t>(a)]) break;
                c[static_cast<std::size_t>(a)] = ilo[static_cast<std::size_t>(a)];
                ++a;
            }
            if (a == R.n) break;
        }
        if (cs.cells.empty()) throw numerical_error("empty boundary rasterization");
        return euler(closure(cs));
    };

    long long prev = 0;
    bool have_prev = false;
    for (int round = 0; round < 5; ++round) {
        long long chi = chi_thickened(h);
        if (have_prev && chi == prev) return {chi, false, h * 2.0};
        prev = chi;
        have_prev = true;
        h *= 0.5;
    }
    throw numerical_error("boundary-component Euler characteristic did not stabilize");
}

namespace {

// Shared precomputation: boundary classification plus which components are
// uniformly outward / inward.
struct BlockAnalysis {
    BlockBoundary bb;
    std::vector<int> outward, inward; // indices into bb.components
    bool all_uniform = false;
    bool all_outward = false;
    bool all_inward = false;
};

BlockAnalysis analyze_block(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    BlockAnalysis a;
    a.bb = classify_boundary(f, N, opt.samples, opt.tangency_tol);
    bool uniform = true;
    for (std::size_t i = 0; i < a.bb.components.size(); ++i) {
        const auto& c = a.bb.components[i];
        if (c.verdict == "outward") a.outward.push_back(static_cast<int>(i));
        else if (c.verdict == "inward") a.inward.push_back(static_cast<int>(i));
        else uniform = false;
    }
    a.all_uniform = uniform;
    a.all_outward = uniform && a.inward.empty() && !a.bb.components.empty();
    a.all_inward = uniform && a.outward.empty() && !a.bb.components.empty();
    return a;
}

void note_components(VerifyReport& rep, const BlockAnalysis& a) {
    std::ostringstream os;
    os << "boundary components:";
    for (const auto& c : a.bb.components)
        os << ' ' << c.region_component << '=' << c.verdict;
    rep.notes.push_back(os.str());
}

// Maximal cyclic runs of exit samples along one loop, tangent samples merged
// into adjacent runs. Full exit loops are circles (chi 0), partial runs arcs
// (chi 1 each).
void exit_runs_2d(const std::vector<BoundarySample>& s, int& arcs, int& full_loops) {
    const std::size_t m = s.size();
    bool any_exit = false, all_exitish = true;
    for (const auto& smp : s) {
        if (smp.cls == SampleClass::Exit) any_exit = true;
        if (smp.cls == SampleClass::Entrance) all_exitish = false;
    }
    if (!any_exit) return;
    if (all_exitish) { ++full_loops; return; }
    std::size_t start = m;
    for (std::size_t k = 0; k < m; ++k)
        if (s[k].cls == SampleClass::Entrance) { start = k; break; }
    bool in_run = false, run_has_exit = false;
    for (std::size_t k = 1; k <= m; ++k) {
        const auto& cur = s[(start + k) % m];
        if (cur.cls == SampleClass::Entrance) {
            if (in_run && run_has_exit) ++arcs;
            in_run = false;
            run_has_exit = false;
        } else {
            in_run = true;
            if (cur.cls == SampleClass::Exit) run_has_exit = true;
        }
    }
    if (in_run && run_has_exit) ++arcs;
}

// chi of the exit set L. Planar: arcs and circles counted straight from the
// sampled classification (works for mixed loops too). Spatial: thickened
// rasterizations of uniformly-outward components; mixed spatial components
// need a supplied value.
std::optional<EulerEntry> chi_exit_set(const Region& N, const BlockAnalysis& a,
                                       const VerifyOptions& opt, std::string& why_not) {
    if (opt.chiL) return supplied_entry(*opt.chiL);
    if (N.n == 2) {
        if (a.bb.degenerate_tangency) {
            why_not = "degenerate tangency: a tangent run covers a whole loop";
            return std::nullopt;
        }
        int arcs = 0, full_loops = 0;
        for (const auto& comp : a.bb.components) exit_runs_2d(comp.samples, arcs, full_loops);
        return EulerEntry{arcs, false, 0.0};
    }
    if (!a.all_uniform) {
        why_not = "mixed boundary component without a supplied chi(L)";
        return std::nullopt;
    }
    long long chi = 0;
    double res = 0.0;
    for (int ci : a.outward) {
        EulerEntry e = euler_of_boundary_component(
            N, a.bb.components[static_cast<std::size_t>(ci)].region_component, opt.resolution);
        chi += e.value;
        res = std::max(res, e.resolution);
    }
    return EulerEntry{chi, false, res};
}

// chi of the union of boundary components in `which` (initial/final section of
// a uniform block). Planar boundary components are circles, chi 0.
std::optional<EulerEntry> chi_section(const Region& N, const BlockAnalysis& a,
                                      const std::vector<int>& which, std::string& why_not) {
    if (N.n == 2) return EulerEntry{0, false, 0.0};
    long long chi = 0;
    double res = 0.0;
    for (int ci : which) {
        try {
            EulerEntry e = euler_of_boundary_component(
                N, a.bb.components[static_cast<std::size_t>(ci)].region_component, 0.0);
            chi += e.value;
            res = std::max(res, e.resolution);
        } catch (const input_error& e) {
            why_not = e.what();
            return std::nullopt;
        }
    }
    return EulerEntry{chi, false, res};
}

} // namespace

VerifyReport check_degree_conley(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.check = "conley";
    echo_inputs(rep, f, N);
    BlockAnalysis a = analyze_block(f, N, opt);
    note_components(rep, a);

    DegreeReport deg = compute_degree(f, N, DegreeMethod::Auto, opt.degree);
    rep.lhs = deg.degree;
    rep.euler.chiN = opt.chiN ? supplied_entry(*opt.chiN) : euler_of_region(N, opt.resolution);

    std::string why_not;
    auto chiL = chi_exit_set(N, a, opt, why_not);
    if (!chiL) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back(why_not);
        return rep;
    }
    rep.euler.chiL = *chiL;
    rep.rhs = parity_sign(N.n) * (rep.euler.chiN->value - chiL->value);
    rep.verdict = rep.lhs == rep.rhs ? Verdict::Pass : Verdict::Fail;
    return rep;
}

VerifyReport check_eq1(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.check = "eq1";
    echo_inputs(rep, f, N);
    BlockAnalysis a = analyze_block(f, N, opt);
    note_components(rep, a);

    DegreeReport deg = compute_degree(f, N, DegreeMethod::Auto, opt.degree);
    rep.lhs = deg.degree;

    std::optional<EulerEntry> chiK, chiS;
    if (opt.chiK) chiK = supplied_entry(*opt.chiK);
    if (opt.chiS) chiS = supplied_entry(*opt.chiS);
    if (!chiK || !chiS) {
        if (!a.all_uniform) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes.push_back("mixed boundary component: supply chi(K) and chi(S)");
            return rep;
        }
        // Uniform block: F enters or leaves through whole components, so
        // H*(K) matches H*(N) and S is the union of the outward components.
        if (!chiK) chiK = euler_of_region(N, opt.resolution);
        if (!chiS) {
            std::string why_not;
            chiS = chi_section(N, a, a.outward, why_not);
            if (!chiS) {
                rep.verdict = Verdict::Inconclusive;
                rep.notes.push_back(why_not);
                return rep;
            }
        }
    }
    rep.euler.chiK = chiK;
    rep.euler.chiS = chiS;
    rep.rhs = parity_sign(N.n) * (chiK->value - chiS->value);
    rep.verdict = rep.lhs == rep.rhs ? Verdict::Pass : Verdict::Fail;
    return rep;
}

VerifyReport check_planar_bound(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    if (N.n != 2) throw input_error("the planar bound needs n = 2");
    VerifyReport rep;
    rep.check = "planar-bound";
    echo_inputs(rep, f, N);

    DegreeReport deg = compute_degree(f, N, DegreeMethod::Auto, opt.degree);
    rep.lhs = deg.degree;

    std::optional<EulerEntry> chiK;
    if (opt.chiK) chiK = supplied_entry(*opt.chiK);
    else {
        BlockAnalysis a = analyze_block(f, N, opt);
        note_components(rep, a);
        if (!a.all_uniform) {
            rep.verdict = Verdict::Inconclusive;
            rep.notes.push_back("mixed boundary component: supply chi(K)");
            return rep;
        }
        chiK = euler_of_region(N, opt.resolution);
    }
    rep.euler.chiK = chiK;
    rep.rhs = chiK->value;
    rep.verdict = rep.lhs <= rep.rhs ? Verdict::Pass : Verdict::Fail;
    rep.notes.push_back("bound check: deg <= chi(K)");
    return rep;
}

VerifyReport check_poincare_hopf(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.check = "poincare-hopf";
    echo_inputs(rep, f, N);
    FieldDef g = opt.reverse ? negate(f) : f;
    if (opt.reverse) rep.notes.push_back("checking the reversed field -F");

    BlockAnalysis a = analyze_block(g, N, opt);
    note_components(rep, a);
    if (!a.all_outward) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back(opt.reverse ? "-F does not point outward everywhere"
                                        : "F does not point outward everywhere (for all-inward "
                                          "blocks re-run with the reversed field)");
        return rep;
    }
    try {
        DegreeReport zc = zero_count_degree(g, N, opt.degree);
        rep.lhs = zc.degree;
        rep.values["zero_count"] = static_cast<long long>(zc.zeros.size());
    } catch (const numerical_error& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back(std::string("index not defined: ") + e.what());
        return rep;
    }
    rep.euler.chiN = opt.chiN ? supplied_entry(*opt.chiN) : euler_of_region(N, opt.resolution);
    rep.rhs = rep.euler.chiN->value;
    rep.verdict = rep.lhs == rep.rhs ? Verdict::Pass : Verdict::Fail;
    return rep;
}

VerifyReport check_tangency(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    if (N.n != 2) throw input_error("the tangency count needs n = 2");
    VerifyReport rep;
    rep.check = "tangency";
    echo_inputs(rep, f, N);
    BlockAnalysis a = analyze_block(f, N, opt);
    note_components(rep, a);
    if (a.bb.degenerate_tangency) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("degenerate tangency: count unreliable");
        return rep;
    }
    rep.lhs = tangency_components_2d(a.bb);

    long long total_index = 0;
    try {
        DegreeReport zc = zero_count_degree(f, N, opt.degree);
        total_index = zc.degree;
    } catch (const numerical_error& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back(std::string("index not defined: ") + e.what());
        return rep;
    }
    rep.euler.chiN = opt.chiN ? supplied_entry(*opt.chiN) : euler_of_region(N, opt.resolution);
    rep.values["total_index"] = total_index;
    rep.rhs = 2 * (rep.euler.chiN->value - total_index);
    rep.verdict = rep.lhs == rep.rhs ? Verdict::Pass : Verdict::Fail;
    return rep;
}

VerifyReport check_nonsaddle(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.check = "nonsaddle";
    echo_inputs(rep, f, N);
    BlockAnalysis a = analyze_block(f, N, opt);
    note_components(rep, a);
    if (!a.all_uniform) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("block is not in non-saddle form (a component is mixed)");
        return rep;
    }

    DegreeReport deg = compute_degree(f, N, DegreeMethod::Auto, opt.degree);
    rep.lhs = deg.degree;
    rep.euler.chiN = opt.chiN ? supplied_entry(*opt.chiN) : euler_of_region(N, opt.resolution);

    if (N.n % 2 == 0) {
        // Even dimension: I(F|N) = chi(K) = chi(N).
        rep.rhs = rep.euler.chiN->value;
        rep.verdict = rep.lhs == rep.rhs ? Verdict::Pass : Verdict::Fail;
        rep.notes.push_back("even dimension: comparing the degree with chi(N) = chi(K)");
        return rep;
    }

    std::string why_not;
    std::optional<EulerEntry> chiS =
        opt.chiS ? std::optional<EulerEntry>(supplied_entry(*opt.chiS))
                 : chi_section(N, a, a.outward, why_not);
    std::optional<EulerEntry> chiSstar =
        opt.chiSstar ? std::optional<EulerEntry>(supplied_entry(*opt.chiSstar))
                     : chi_section(N, a, a.inward, why_not);
    if (!chiS || !chiSstar) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back(why_not);
        return rep;
    }
    rep.euler.chiS = chiS;
    rep.euler.chiSstar = chiSstar;
    long long sum = chiS->value + chiSstar->value;
    if (sum % 2 != 0) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("chi(S)+chi(S*) is odd; sections were not resolved consistently");
        return rep;
    }
    // Odd dimension: evaluate both sign conventions and report which one the
    // degree oracle confirms. The identity-forced convention is the rhs.
    long long printed = (chiSstar->value - chiS->value) / 2;
    long long forced = (chiS->value - chiSstar->value) / 2;
    rep.values["printed_convention"] = printed;
    rep.values["forced_convention"] = forced;
    rep.rhs = forced;
    rep.verdict = rep.lhs == forced ? Verdict::Pass : Verdict::Fail;
    rep.notes.push_back(std::string("printed convention (chi(S*)-chi(S))/2 = ") +
                        std::to_string(printed) +
                        (rep.lhs == printed ? " matches" : " does not match") +
                        " the degree oracle");
    if (sum / 2 != rep.euler.chiN->value)
        rep.notes.push_back("warning: chi(N) != (chi(S)+chi(S*))/2 on this block");
    return rep;
}

VerifyReport detect_connection(const FieldDef& f, const Region& N, const VerifyOptions& opt) {
    VerifyReport rep;
    rep.check = "connection";
    echo_inputs(rep, f, N);

    std::optional<EulerEntry> chiA, chiR;
    if (opt.chiA) chiA = supplied_entry(*opt.chiA);
    else if (opt.a_block) chiA = euler_of_region(*opt.a_block, opt.resolution);
    if (opt.chiR) chiR = supplied_entry(*opt.chiR);
    else if (opt.r_block) chiR = euler_of_region(*opt.r_block, opt.resolution);

    std::optional<EulerEntry> chiS;
    if (opt.chiS) chiS = supplied_entry(*opt.chiS);
    else {
        BlockAnalysis a = analyze_block(f, N, opt);
        note_components(rep, a);
        if (a.all_uniform) {
            std::string why_not;
            chiS = chi_section(N, a, a.outward, why_not);
        }
    }
    if (!chiA || !chiR || !chiS) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("missing chi(A), chi(R) or chi(S)");
        return rep;
    }
    rep.values["chi_A"] = chiA->value;
    rep.values["chi_R"] = chiR->value;
    rep.euler.chiS = chiS;

    DegreeReport deg = compute_degree(f, N, DegreeMethod::Auto, opt.degree);
    rep.lhs = deg.degree;
    rep.rhs = chiA->value + chiR->value - chiS->value;
    if (rep.lhs != rep.rhs) {
        rep.verdict = Verdict::ConnectionExists;
        rep.notes.push_back("deg(F,N) != chi(A)+chi(R)-chi(S): an orbit connects A and R");
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("criterion silent: it is sufficient, not necessary");
    }
    if (opt.chiK) {
        rep.euler.chiK = supplied_entry(*opt.chiK);
        rep.values["chi_C"] = chiA->value + chiR->value - *opt.chiK;
        rep.notes.push_back("chi(C) = chi(A)+chi(R)-chi(K) = " +
                            std::to_string(rep.values["chi_C"]));
    }
    return rep;
}

namespace {

bool region_symmetric(const Region& N) {
    switch (N.kind) {
        case Region::Kind::Ball:
        case Region::Kind::Shell:
            for (double c : N.center)
                if (c != 0.0) return false;
            return true;
        case Region::Kind::Box:
            for (std::size_t i = 0; i < N.lo.size(); ++i)
                if (N.lo[i] != -N.hi[i]) return false;
            return true;
        case Region::Kind::Cubes:
            for (const auto& cell : N.cubes.cells) {
                std::vector<int> mirror(cell.size());
                for (std::size_t i = 0; i < cell.size(); ++i) mirror[i] = -cell[i] - 1;
                if (!N.cubes.member(mirror)) return false;
            }
            return true;
    }
    return false;
}

} // namespace

AntipodalResult antipodal_search(const FieldDef& f, const Region& N, const std::string& mode,
                                 double tol, int samples) {
    if (mode != "same" && mode != "opposite")
        throw input_error("antipodal mode must be 'same' or 'opposite'");
    if (!region_symmetric(N)) throw input_error("the region is not symmetric under x -> -x");
    std::vector<double> origin(static_cast<std::size_t>(N.n), 0.0);
    if (!N.contains(origin)) throw input_error("the region does not contain the origin");

    const double sign = mode == "same" ? -1.0 : 1.0;
    auto residual_at = [&](std::span<const double> x) {
        std::vector<double> mx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) mx[i] = -x[i];
        std::vector<double> F1 = eval(f, x), F2 = eval(f, mx);
        double n1 = norm(F1), n2 = norm(F2);
        if (n1 == 0.0 || n2 == 0.0)
            throw numerical_error("field vanishes on the boundary near " + point_text(x));
        double r2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = F1[i] / n1 + sign * F2[i] / n2;
            r2 += d * d;
        }
        return std::sqrt(r2);
    };

    AntipodalResult best;
    best.mode = mode;
    best.residual = std::numeric_limits<double>::infinity();
    for (const auto& comp : sample_boundary(N, samples))
        for (const auto& s : comp.samples) {
            double r = residual_at(s.point);
            if (r < best.residual) {
                best.residual = r;
                best.point = s.point;
            }
        }

    // Local refinement. Balls and shells: pattern search over the direction
    // vector, reprojected to the sphere. Boxes and cube sets: pattern search
    // inside the face of the best sample.
    if (N.kind == Region::Kind::Ball || N.kind == Region::Kind::Shell) {
        double rho = norm(best.point); // stays on the same sphere of the shell
        std::vector<double> u(best.point);
        for (double& c : u) c /= rho;
        double step = 0.5;
        auto point_of = [&](const std::vector<double>& dir) {
            std::vector<double> p(dir);
            double nn = norm(p);
            for (double& c : p) c *= rho / nn;
            return p;
        };
        while (step > 1e-13) {
            bool improved = false;
            for (std::size_t a = 0; a < u.size(); ++a)
                for (double s : {-step, step}) {
                    std::vector<double> cand = u;
                    cand[a] += s;
                    std::vector<double> p = point_of(cand);
                    double r = residual_at(p);
                    if (r < best.residual) {
                        best.residual = r;
                        best.point = p;
                        double nn = norm(cand);
                        for (double& c : cand) c /= nn;
                        u = cand;
                        improved = true;
                    }
                }
            if (!improved) step *= 0.5;
        }
    } else {
        // Identify the clamped axis of the best sample's face and search in
        // the remaining coordinates.
        auto [lo, hi] = N.bbox();
        std::size_t pinned = 0;
        double pin_gap = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < best.point.size(); ++a) {
            double g = std::min(std::abs(best.point[a] - lo[a]), std::abs(best.point[a] - hi[a]));
            if (g < pin_gap) {
                pin_gap = g;
                pinned = a;
            }
        }
        double step = 0.25 * N.diameter();
        while (step > 1e-13 * N.diameter()) {
            bool improved = false;
            for (std::size_t a = 0; a < best.point.size(); ++a) {
                if (a == pinned) continue;
                for (double s : {-step, step}) {
                    std::vector<double> cand = best.point;
                    cand[a] = std::clamp(cand[a] + s, lo[a], hi[a]);
                    if (!N.contains(cand)) continue;
                    double r = residual_at(cand);
                    if (r < best.residual) {
                        best.residual = r;
                        best.point = cand;
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
    }

    best.found = best.residual < tol;
    return best;
}

} // namespace vfdeg
