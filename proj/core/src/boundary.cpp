#include "vfdeg/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "boundary_geom.hpp"
#include "vfdeg/errors.hpp"
#include "vfdeg/linalg.hpp"
#include "vfdeg/ode.hpp"

namespace vfdeg {

namespace {

constexpr double pi = std::numbers::pi;

BoundarySample make_sample(std::vector<double> p, std::vector<double> nrm) {
    BoundarySample s;
    s.point = std::move(p);
    s.normal = std::move(nrm);
    return s;
}

// Ordered sample loops for planar regions. Box corners are emitted twice, once
// per adjacent face with that face's normal.
std::vector<BoundaryComponent> sample_loops_2d(const Region& N, int per_loop) {
    std::vector<BoundaryComponent> comps;
    auto circle = [&](double r, bool outward, int comp) {
        BoundaryComponent bc;
        bc.region_component = comp;
        bc.cyclic = true;
        for (int k = 0; k < per_loop; ++k) {
            // Hole loops are walked clockwise so the region stays on the left.
            double th = 2 * pi * k / per_loop * (outward ? 1.0 : -1.0);
            std::vector<double> u{std::cos(th), std::sin(th)};
            std::vector<double> p{N.center[0] + r * u[0], N.center[1] + r * u[1]};
            std::vector<double> nrm = outward ? u : std::vector<double>{-u[0], -u[1]};
            bc.samples.push_back(make_sample(std::move(p), std::move(nrm)));
        }
        return bc;
    };
    switch (N.kind) {
        case Region::Kind::Ball:
            comps.push_back(circle(N.radius, true, 0));
            break;
        case Region::Kind::Shell:
            comps.push_back(circle(N.rout, true, 0));
            comps.push_back(circle(N.rin, false, 1));
            break;
        case Region::Kind::Box: {
            BoundaryComponent bc;
            bc.region_component = 0;
            bc.cyclic = true;
            int q = std::max(2, (per_loop + 3) / 4);
            // Counterclockwise walk: bottom, right, top, left; both face
            // endpoints included.
            struct Face {
                std::vector<double> from, to, normal;
            };
            const double x0 = N.lo[0], y0 = N.lo[1], x1 = N.hi[0], y1 = N.hi[1];
            Face faces[4] = {{{x0, y0}, {x1, y0}, {0, -1}},
                             {{x1, y0}, {x1, y1}, {1, 0}},
                             {{x1, y1}, {x0, y1}, {0, 1}},
                             {{x0, y1}, {x0, y0}, {-1, 0}}};
            for (const auto& face : faces)
                for (int k = 0; k <= q; ++k) {
                    double t = static_cast<double>(k) / q;
                    std::vector<double> p{face.from[0] + t * (face.to[0] - face.from[0]),
                                          face.from[1] + t * (face.to[1] - face.from[1])};
                    bc.samples.push_back(make_sample(std::move(p), face.normal));
                }
            comps.push_back(std::move(bc));
            break;
        }
        case Region::Kind::Cubes: {
            auto loops = detail::cubeset_loops_2d(N.cubes);
            for (std::size_t li = 0; li < loops.size(); ++li) {
                BoundaryComponent bc;
                bc.region_component = static_cast<int>(li);
                bc.cyclic = true;
                for (const auto& e : loops[li]) {
                    std::vector<double> mid{0.5 * (e.a[0] + e.b[0]), 0.5 * (e.a[1] + e.b[1])};
                    bc.samples.push_back(
                        make_sample(std::move(mid), {e.normal[0], e.normal[1]}));
                }
                comps.push_back(std::move(bc));
            }
            break;
        }
    }
    return comps;
}

std::vector<BoundaryComponent> sample_surfaces_3d(const Region& N, int total) {
    std::vector<BoundaryComponent> comps;
    auto sphere = [&](double r, bool outward, int comp) {
        BoundaryComponent bc;
        bc.region_component = comp;
        // Cell-centered grid sized to the sample budget, 1:2 aspect.
        int nth = std::max(8, static_cast<int>(std::sqrt(total / 2.0)));
        int nph = 2 * nth;
        for (int i = 0; i < nth; ++i)
            for (int j = 0; j < nph; ++j) {
                double th = pi * (i + 0.5) / nth, ph = 2 * pi * (j + 0.5) / nph;
                std::vector<double> u{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                      std::cos(th)};
                std::vector<double> p{N.center[0] + r * u[0], N.center[1] + r * u[1],
                                      N.center[2] + r * u[2]};
                std::vector<double> nrm = outward ? u : std::vector<double>{-u[0], -u[1], -u[2]};
                bc.samples.push_back(make_sample(std::move(p), std::move(nrm)));
            }
        return bc;
    };
    switch (N.kind) {
        case Region::Kind::Ball:
            comps.push_back(sphere(N.radius, true, 0));
            break;
        case Region::Kind::Shell:
            comps.push_back(sphere(N.rout, true, 0));
            comps.push_back(sphere(N.rin, false, 1));
            break;
        case Region::Kind::Box: {
            BoundaryComponent bc;
            bc.region_component = 0;
            int m = std::max(4, static_cast<int>(std::sqrt(total / 6.0)));
            for (int axis = 0; axis < 3; ++axis)
                for (int side = 0; side <= 1; ++side) {
                    int u = (axis + 1) % 3, v = (axis + 2) % 3;
                    for (int i = 0; i < m; ++i)
                        for (int j = 0; j < m; ++j) {
                            std::vector<double> p(3);
                            p[static_cast<std::size_t>(axis)] = side ? N.hi[static_cast<std::size_t>(axis)] : N.lo[static_cast<std::size_t>(axis)];
                            p[static_cast<std::size_t>(u)] = N.lo[static_cast<std::size_t>(u)] +
                                     (N.hi[static_cast<std::size_t>(u)] - N.lo[static_cast<std::size_t>(u)]) * (i + 0.5) / m;
                            p[static_cast<std::size_t>(v)] = N.lo[static_cast<std::size_t>(v)] +
                                     (N.hi[static_cast<std::size_t>(v)] - N.lo[static_cast<std::size_t>(v)]) * (j + 0.5) / m;
                            std::vector<double> nrm(3, 0.0);
                            nrm[static_cast<std::size_t>(axis)] = side ? 1.0 : -1.0;
                            bc.samples.push_back(make_sample(std::move(p), std::move(nrm)));
                        }
                }
            comps.push_back(std::move(bc));
            break;
        }
        case Region::Kind::Cubes: {
            auto patches = detail::cubeset_patches_3d(N.cubes);
            for (std::size_t pi_ = 0; pi_ < patches.size(); ++pi_) {
                BoundaryComponent bc;
                bc.region_component = static_cast<int>(pi_);
                for (const auto& bf : patches[pi_]) {
                    std::vector<double> nrm(3, 0.0);
                    nrm[static_cast<std::size_t>(bf.axis)] = bf.sign;
                    bc.samples.push_back(make_sample(bf.center(N.cubes.h), std::move(nrm)));
                }
                comps.push_back(std::move(bc));
            }
            break;
        }
    }
    return comps;
}

// Maximal cyclic runs of tangent samples plus direct exit<->entrance flips.
int count_loop_tangencies(const std::vector<BoundarySample>& s, bool& degenerate) {
    const std::size_t m = s.size();
    std::size_t start = m;
    for (std::size_t k = 0; k < m; ++k)
        if (s[k].cls != SampleClass::Tangent) { start = k; break; }
    if (start == m) { degenerate = true; return 0; } // whole loop tangent
    int count = 0;
    SampleClass last = s[start].cls;
    bool pending_run = false;
    for (std::size_t k = 1; k <= m; ++k) {
        const auto& cur = s[(start + k) % m];
        if (cur.cls == SampleClass::Tangent) {
            pending_run = true;
            continue;
        }
        if (pending_run) {
            ++count;
            pending_run = false;
        } else if (cur.cls != last) {
            ++count;
        }
        last = cur.cls;
    }
    return count;
}

} // namespace

std::vector<BoundaryComponent> sample_boundary(const Region& N, int samples) {
    if (N.n == 2)
        return sample_loops_2d(N, samples > 0 ? samples : defaults::boundary_samples_2d);
    if (N.n == 3)
        return sample_surfaces_3d(
            N, samples > 0 ? samples : defaults::sphere_grid_theta * defaults::sphere_grid_phi);
    throw input_error("boundary sampling supports n = 2 and n = 3 only");
}

BlockBoundary classify_boundary(const FieldDef& f, const Region& N, int samples, double tol) {
    if (f.n != N.n) throw input_error("field and region dimensions differ");
    if (tol <= 0.0) throw input_error("tangency tolerance must be positive");

    BlockBoundary bb;
    bb.n = N.n;
    bb.tol = tol;
    bb.components = sample_boundary(N, samples);

    double max_f = 0.0, min_f = std::numeric_limits<double>::infinity();
    std::vector<double> worst_point;
    for (auto& comp : bb.components)
        for (auto& s : comp.samples) {
            std::vector<double> F = eval(f, s.point);
            s.f_norm = norm(F);
            s.f_dot_n = dot(F, s.normal);
            max_f = std::max(max_f, s.f_norm);
            if (s.f_norm < min_f) {
                min_f = s.f_norm;
                worst_point = s.point;
            }
        }
    bb.min_f_norm = min_f;
    if (min_f <= defaults::boundary_zero_rel * (1.0 + max_f)) {
        std::ostringstream os;
        os << "field vanishes on the block boundary near (";
        for (std::size_t i = 0; i < worst_point.size(); ++i)
            os << (i ? "," : "") << worst_point[i];
        os << "): invalid block";
        throw numerical_error(os.str());
    }

    for (auto& comp : bb.components) {
        bool any_exit = false, any_entrance = false, any_tangent = false;
        for (auto& s : comp.samples) {
            if (std::abs(s.f_dot_n) <= tol * s.f_norm) {
                s.cls = SampleClass::Tangent;
                any_tangent = true;
            } else if (s.f_dot_n > 0) {
                s.cls = SampleClass::Exit;
                any_exit = true;
            } else {
                s.cls = SampleClass::Entrance;
                any_entrance = true;
            }
        }
        comp.verdict = (any_exit && !any_entrance && !any_tangent) ? "outward"
                       : (any_entrance && !any_exit && !any_tangent) ? "inward"
                                                                     : "mixed";
    }

    if (bb.n == 2) {
        bb.tangency_components = 0;
        for (const auto& comp : bb.components)
            bb.tangency_components += count_loop_tangencies(comp.samples, bb.degenerate_tangency);
    }
    return bb;
}

int tangency_components_2d(const BlockBoundary& b) {
    if (b.n != 2) throw input_error("tangency components are defined for n = 2 only");
    return b.tangency_components;
}

IsolationReport isolation_check(const FieldDef& f, const Region& N, double T, double resolution) {
    if (T <= 0.0 || resolution <= 0.0)
        throw input_error("isolation_check: T and resolution must be positive");
    CubeSet grid = rasterize(N, resolution);
    IsolationReport rep;
    // Only the cells along the boundary matter: the invariant-set estimate
    // touches the boundary exactly when one of them carries a staying orbit.
    std::set<std::vector<int>> ring;
    for (const auto& bf : boundary_faces(grid)) ring.insert(bf.cube);
    rep.boundary_adjacent_cells = static_cast<int>(ring.size());
    for (const auto& cell : ring) {
        std::vector<double> c = grid.center(cell);
        OrbitStay fwd = orbit_stays_in(f, N, c, T, +1);
        OrbitStay bwd = fwd == OrbitStay::Leaves ? OrbitStay::Leaves
                                                 : orbit_stays_in(f, N, c, T, -1);
        if (fwd == OrbitStay::Indeterminate || bwd == OrbitStay::Indeterminate) {
            ++rep.indeterminate_cells;
            continue;
        }
        if (fwd == OrbitStay::Stays && bwd == OrbitStay::Stays) {
            ++rep.staying_boundary_cells;
            if (rep.witness.empty()) rep.witness = cell;
        }
    }
    if (rep.staying_boundary_cells > 0) rep.verdict = IsolationVerdict::Violated;
    else if (rep.indeterminate_cells > 0) rep.verdict = IsolationVerdict::Indeterminate;
    else rep.verdict = IsolationVerdict::Plausible;
    return rep;
}

} // namespace vfdeg
