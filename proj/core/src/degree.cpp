#include "vfdeg/degree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <array>
#include <numbers>
#include <sstream>

#include "boundary_geom.hpp"
#include "vfdeg/errors.hpp"
#include "vfdeg/linalg.hpp"

namespace vfdeg {

namespace {

constexpr double pi = std::numbers::pi;

std::string point_text(std::span<const double> p) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------- winding --

struct Loop {
    // t in [0,1); oriented with the region on the left (outer loops ccw,
    // hole loops cw).
    std::function<void(double t, std::span<double> p)> at;
};

std::vector<Loop> region_loops(const Region& N) {
    std::vector<Loop> loops;
    auto circle = [&](double r, double orient) {
        loops.push_back({[=, &N](double t, std::span<double> p) {
            double th = 2 * pi * t * orient;
            p[0] = N.center[0] + r * std::cos(th);
            p[1] = N.center[1] + r * std::sin(th);
        }});
    };
    switch (N.kind) {
        case Region::Kind::Ball: circle(N.radius, 1.0); break;
        case Region::Kind::Shell:
            circle(N.rout, 1.0);
            circle(N.rin, -1.0);
            break;
        case Region::Kind::Box: {
            loops.push_back({[&N](double t, std::span<double> p) {
                double s = 4.0 * t;
                double x0 = N.lo[0], y0 = N.lo[1], x1 = N.hi[0], y1 = N.hi[1];
                if (s < 1) { p[0] = x0 + (x1 - x0) * s; p[1] = y0; }
                else if (s < 2) { p[0] = x1; p[1] = y0 + (y1 - y0) * (s - 1); }
                else if (s < 3) { p[0] = x1 - (x1 - x0) * (s - 2); p[1] = y1; }
                else { p[0] = x0; p[1] = y1 - (y1 - y0) * (s - 3); }
            }});
            break;
        }
        case Region::Kind::Cubes: {
            auto edge_loops = detail::cubeset_loops_2d(N.cubes);
            for (auto& el : edge_loops) {
                auto edges = std::make_shared<std::vector<detail::OrientedEdge>>(std::move(el));
                loops.push_back({[edges](double t, std::span<double> p) {
                    double s = t * static_cast<double>(edges->size());
                    std::size_t k = std::min(static_cast<std::size_t>(s), edges->size() - 1);
                    double u = s - static_cast<double>(k);
                    const auto& e = (*edges)[k];
                    p[0] = e.a[0] + u * (e.b[0] - e.a[0]);
                    p[1] = e.a[1] + u * (e.b[1] - e.a[1]);
                }});
            }
            break;
        }
    }
    return loops;
}

double angle_step(std::span<const double> f0, std::span<const double> f1) {
    double cross = f0[0] * f1[1] - f0[1] * f1[0];
    double d = f0[0] * f1[0] + f0[1] * f1[1];
    return std::atan2(cross, d);
}

} // namespace

DegreeReport winding_degree(const FieldDef& f, const Region& N, const DegreeOptions& opt) {
    if (f.n != 2 || N.n != 2) throw input_error("winding degree needs n = 2");
    DegreeReport rep;
    rep.method = "winding";

    double max_f = 0.0;
    std::vector<double> worst;
    auto field_at = [&](const Loop& loop, double t) {
        std::vector<double> p(2);
        loop.at(t, p);
        std::vector<double> F = eval(f, p);
        double fn = norm(F);
        max_f = std::max(max_f, fn);
        if (fn < rep.min_boundary_f) {
            rep.min_boundary_f = fn;
            worst = p;
        }
        return F;
    };

    double total = 0.0;
    for (const Loop& loop : region_loops(N)) {
        // Adaptive bisection: every accepted segment turns by less than pi/2,
        // which pins the continuous branch of the angle.
        std::function<double(double, const std::vector<double>&, double, const std::vector<double>&, int)>
            refine = [&](double t0, const std::vector<double>& F0, double t1,
                         const std::vector<double>& F1, int depth) -> double {
            double d = angle_step(F0, F1);
            if (std::abs(d) < pi / 2) return d;
            if (depth > 48)
                throw numerical_error("winding refinement did not converge near t=" +
                                      std::to_string(t0));
            double tm = 0.5 * (t0 + t1);
            std::vector<double> Fm = field_at(loop, tm);
            return refine(t0, F0, tm, Fm, depth + 1) + refine(tm, Fm, t1, F1, depth + 1);
        };

        int m = std::max(8, opt.samples_2d);
        std::vector<std::vector<double>> F(static_cast<std::size_t>(m) + 1);
        for (int k = 0; k <= m; ++k)
            F[static_cast<std::size_t>(k)] = field_at(loop, k == m ? 0.0 : static_cast<double>(k) / m);
        double sum = 0.0;
        for (int k = 0; k < m; ++k)
            sum += refine(static_cast<double>(k) / m, F[static_cast<std::size_t>(k)],
                          static_cast<double>(k + 1) / m, F[static_cast<std::size_t>(k) + 1], 0);
        total += sum / (2 * pi);
    }

    if (rep.min_boundary_f <= defaults::boundary_zero_rel * (1.0 + max_f))
        throw numerical_error("suspected zero on the boundary near " + point_text(worst) +
                              " (min |F| = " + std::to_string(rep.min_boundary_f) + ")");
    rep.raw = total;
    rep.degree = static_cast<int>(std::lround(total));
    if (std::abs(total - rep.degree) > 1e-6)
        throw numerical_error("winding sum " + std::to_string(total) +
                              " is not close to an integer");
    return rep;
}

// -------------------------------------------------------------- kronecker --

namespace {

struct Patch {
    // Writes position and tangents at (u,v); t_u x t_v points out of the
    // region.
    std::function<void(double u, double v, std::span<double> x, std::span<double> tu,
                       std::span<double> tv)>
        eval;
    double u0, u1, v0, v1;
    int panels_u, panels_v;
};

std::vector<Patch> region_patches(const Region& N, const DegreeOptions& opt) {
    std::vector<Patch> patches;
    auto sphere = [&](double r, bool outward) {
        Patch p;
        p.u0 = 0.0;
        p.u1 = pi;
        p.v0 = 0.0;
        p.v1 = 2 * pi;
        p.panels_u = std::max(4, opt.grid_theta / 4);
        p.panels_v = std::max(8, opt.grid_phi / 4);
        p.eval = [r, outward, &N](double u, double v, std::span<double> x, std::span<double> tu,
                                  std::span<double> tv) {
            double su = std::sin(u), cu = std::cos(u), sv = std::sin(v), cv = std::cos(v);
            x[0] = N.center[0] + r * su * cv;
            x[1] = N.center[1] + r * su * sv;
            x[2] = N.center[2] + r * cu;
            double du[3] = {r * cu * cv, r * cu * sv, -r * su};
            double dv[3] = {-r * su * sv, r * su * cv, 0.0};
            // The inner boundary of a shell is outward-oriented for the region
            // when the sphere orientation is reversed.
            for (int i = 0; i < 3; ++i) {
                tu[static_cast<std::size_t>(i)] = outward ? du[i] : dv[i];
                tv[static_cast<std::size_t>(i)] = outward ? dv[i] : du[i];
            }
        };
        if (!outward) std::swap(p.panels_u, p.panels_v);
        patches.push_back(std::move(p));
    };
    auto flat_face = [&](int axis, bool hi_side, std::array<double, 3> base,
                         std::array<double, 3> ext, int panels) {
        // Free axes ordered so e_u x e_v equals the outward normal.
        int u_axis = hi_side ? (axis + 1) % 3 : (axis + 2) % 3;
        int v_axis = hi_side ? (axis + 2) % 3 : (axis + 1) % 3;
        Patch p;
        p.u0 = base[static_cast<std::size_t>(u_axis)];
        p.u1 = base[static_cast<std::size_t>(u_axis)] + ext[static_cast<std::size_t>(u_axis)];
        p.v0 = base[static_cast<std::size_t>(v_axis)];
        p.v1 = base[static_cast<std::size_t>(v_axis)] + ext[static_cast<std::size_t>(v_axis)];
        p.panels_u = panels;
        p.panels_v = panels;
        double pin = base[static_cast<std::size_t>(axis)] + (hi_side ? ext[static_cast<std::size_t>(axis)] : 0.0);
        p.eval = [axis, u_axis, v_axis, pin](double u, double v, std::span<double> x,
                                             std::span<double> tu, std::span<double> tv) {
            x[static_cast<std::size_t>(axis)] = pin;
            x[static_cast<std::size_t>(u_axis)] = u;
            x[static_cast<std::size_t>(v_axis)] = v;
            for (int i = 0; i < 3; ++i) {
                tu[static_cast<std::size_t>(i)] = i == u_axis ? 1.0 : 0.0;
                tv[static_cast<std::size_t>(i)] = i == v_axis ? 1.0 : 0.0;
            }
        };
        patches.push_back(std::move(p));
    };
    switch (N.kind) {
        case Region::Kind::Ball: sphere(N.radius, true); break;
        case Region::Kind::Shell:
            sphere(N.rout, true);
            sphere(N.rin, false);
            break;
        case Region::Kind::Box:
            for (int axis = 0; axis < 3; ++axis)
                for (int side = 0; side <= 1; ++side)
                    flat_face(axis, side == 1, {N.lo[0], N.lo[1], N.lo[2]},
                              {N.hi[0] - N.lo[0], N.hi[1] - N.lo[1], N.hi[2] - N.lo[2]}, 16);
            break;
        case Region::Kind::Cubes:
            for (const auto& bf : boundary_faces(N.cubes)) {
                double h = N.cubes.h;
                std::array<double, 3> base{bf.cube[0] * h, bf.cube[1] * h, bf.cube[2] * h};
                flat_face(bf.axis, bf.sign > 0, base, {h, h, h}, 2);
            }
            break;
    }
    return patches;
}

// 4-point Gauss-Legendre on [-1, 1].
constexpr double gl_x[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                            0.8611363115940526};
constexpr double gl_w[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                            0.3478548451374538};

} // namespace

DegreeReport kronecker_degree(const FieldDef& f, const Region& N, const DegreeOptions& opt) {
    if (f.n != 3 || N.n != 3) throw input_error("Kronecker degree needs n = 3");
    DegreeReport rep;
    rep.method = "kronecker";
    auto patches = region_patches(N, opt);

    std::vector<double> x(3), tu(3), tv(3), Fv(3), dFu(3), dFv(3), cr(3);
    double max_f = 0.0;
    std::vector<double> worst(3);

    auto integrate_level = [&](int level) {
        double total = 0.0;
        for (const Patch& p : patches) {
            int nu = p.panels_u << level, nv = p.panels_v << level;
            double hu = (p.u1 - p.u0) / nu, hv = (p.v1 - p.v0) / nv;
            double patch_sum = 0.0;
            for (int iu = 0; iu < nu; ++iu) {
                double cu = p.u0 + (iu + 0.5) * hu;
                for (int iv = 0; iv < nv; ++iv) {
                    double cv = p.v0 + (iv + 0.5) * hv;
                    for (int a = 0; a < 4; ++a) {
                        double u = cu + 0.5 * hu * gl_x[a];
                        for (int b = 0; b < 4; ++b) {
                            double v = cv + 0.5 * hv * gl_x[b];
                            p.eval(u, v, x, tu, tv);
                            eval_dual(f, x, tu, Fv, dFu);
                            eval_dual(f, x, tv, Fv, dFv);
                            double fn = norm(Fv);
                            max_f = std::max(max_f, fn);
                            if (fn < rep.min_boundary_f) {
                                rep.min_boundary_f = fn;
                                worst.assign(x.begin(), x.end());
                            }
                            cross3(dFu, dFv, cr);
                            double g = dot(Fv, cr) / (fn * fn * fn);
                            patch_sum += g * gl_w[a] * gl_w[b] * 0.25 * hu * hv;
                        }
                    }
                }
            }
            total += patch_sum;
        }
        return total / (4 * pi);
    };

    double prev = 0.0;
    for (int level = 0; level <= opt.max_refinements; ++level) {
        double raw = integrate_level(level);
        if (rep.min_boundary_f <= defaults::boundary_zero_rel * (1.0 + max_f))
            throw numerical_error("suspected zero on the boundary near " + point_text(worst));
        if (level > 0 && std::abs(raw - prev) < opt.quad_agreement &&
            std::lround(raw) == std::lround(prev) && std::abs(raw - std::lround(raw)) < 0.5) {
            rep.raw = raw;
            rep.degree = static_cast<int>(std::lround(raw));
            rep.refinements = level;
            return rep;
        }
        prev = raw;
    }
    throw numerical_error("Kronecker quadrature did not converge after " +
                          std::to_string(opt.max_refinements) + " refinements (last raw " +
                          std::to_string(prev) + ")");
}

// ------------------------------------------------------------- zero count --

namespace {

struct NewtonHit {
    std::vector<double> point;
    double residual;
};

// Damped-free Newton; empty return means no convergence from this seed.
std::optional<NewtonHit> newton_from(const FieldDef& f, std::vector<double> x, double tol,
                                     double diverge_radius) {
    const int n = f.n;
    for (int it = 0; it < 100; ++it) {
        std::vector<double> F = eval(f, x);
        Jet jet = jacobian(f, x);
        std::vector<double> a = jet.jacobian;
        std::vector<int> perm;
        double d = 0.0;
        if (!lu_factor(a, n, perm, d)) return std::nullopt;
        std::vector<double> step = F;
        for (double& s : step) s = -s;
        lu_solve(a, n, perm, step);
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += step[static_cast<std::size_t>(i)];
        if (norm(x) > diverge_radius) return std::nullopt;
        double res = norm(eval(f, x));
        if (res <= tol && norm(step) <= 1e-12 * (1.0 + norm(x)))
            return NewtonHit{x, res};
    }
    return std::nullopt;
}

} // namespace

DegreeReport zero_count_degree(const FieldDef& f, const Region& N, const DegreeOptions& opt) {
    if (f.n != N.n) throw input_error("field and region dimensions differ");
    DegreeReport rep;
    rep.method = "zeros";
    const int n = f.n;
    const double diam = N.diameter();
    const double merge_radius = defaults::merge_radius_factor * diam;
    const double degen = defaults::degeneracy_factor * std::pow(diam, n);
    auto [lo, hi] = N.bbox();
    double center_norm = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i)
        center_norm += 0.25 * (lo[i] + hi[i]) * (lo[i] + hi[i]);
    const double diverge_radius = 10.0 * (1.0 + diam + std::sqrt(center_norm));

    std::vector<Zero> zeros;
    std::vector<int> seed(static_cast<std::size_t>(n), 0);
    const int m = std::max(2, opt.seeds_per_axis);
    for (;;) {
        std::vector<double> s(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            s[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)] +
                     (hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)]) *
                         (seed[static_cast<std::size_t>(a)] + 0.5) / m;
        if (auto hit = newton_from(f, s, opt.newton_tol, diverge_radius)) {
            bool fresh = true;
            for (const auto& z : zeros) {
                double dist2 = 0.0;
                for (int i = 0; i < n; ++i) {
                    double d = z.point[static_cast<std::size_t>(i)] - hit->point[static_cast<std::size_t>(i)];
                    dist2 += d * d;
                }
                if (std::sqrt(dist2) <= merge_radius) { fresh = false; break; }
            }
            if (fresh && N.contains(hit->point) && N.boundary_distance(hit->point) >= merge_radius) {
                Jet jet = jacobian(f, hit->point);
                double dj = det(jet.jacobian, n);
                if (std::abs(dj) < degen)
                    throw numerical_error("degenerate zero at " + point_text(hit->point) +
                                          ": |det DF| = " + std::to_string(std::abs(dj)) +
                                          " below threshold " + std::to_string(degen) +
                                          "; the index is not defined");
                zeros.push_back({hit->point, dj > 0 ? 1 : -1, hit->residual, dj});
            }
        }
        int a = 0;
        while (a < n) {
            if (++seed[static_cast<std::size_t>(a)] < m) break;
            seed[static_cast<std::size_t>(a)] = 0;
            ++a;
        }
        if (a == n) break;
    }

    std::sort(zeros.begin(), zeros.end(),
              [](const Zero& a, const Zero& b) { return a.point < b.point; });
    int total = 0;
    for (const auto& z : zeros) total += z.index;
    rep.zeros = std::move(zeros);
    rep.degree = total;
    rep.raw = total;
    return rep;
}

int point_index(const FieldDef& f, std::span<const double> z, double radius,
                const DegreeOptions& opt) {
    if (radius <= 0.0) throw input_error("point_index: radius must be positive");
    Region ball = Region::ball(std::vector<double>(z.begin(), z.end()), radius);
    const double merge_radius = defaults::merge_radius_factor * 2.0 * radius;

    // z must be the only zero inside the closed ball.
    const int seeds = 6;
    const int n = f.n;
    auto [lo, hi] = ball.bbox();
    std::vector<int> seed(static_cast<std::size_t>(n), 0);
    double center_norm = norm(z);
    for (;;) {
        std::vector<double> s(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a)
            s[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)] +
                     (hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)]) *
                         (seed[static_cast<std::size_t>(a)] + 0.5) / seeds;
        if (auto hit = newton_from(f, s, opt.newton_tol, 10.0 * (1.0 + radius + center_norm))) {
            if (ball.contains(hit->point)) {
                double dist2 = 0.0;
                for (int i = 0; i < n; ++i) {
                    double d = hit->point[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(i)];
                    dist2 += d * d;
                }
                if (std::sqrt(dist2) > merge_radius)
                    throw numerical_error("another zero inside the index ball at " +
                                          point_text(hit->point));
            }
        }
        int a = 0;
        while (a < n) {
            if (++seed[static_cast<std::size_t>(a)] < seeds) break;
            seed[static_cast<std::size_t>(a)] = 0;
            ++a;
        }
        if (a == n) break;
    }

    if (f.n == 2) return winding_degree(f, ball, opt).degree;
    if (f.n == 3) return kronecker_degree(f, ball, opt).degree;
    throw input_error("point_index boundary methods cover n = 2 and n = 3 only");
}

DegreeReport compute_degree(const FieldDef& f, const Region& N, DegreeMethod method,
                            const DegreeOptions& opt) {
    switch (method) {
        case DegreeMethod::Winding: return winding_degree(f, N, opt);
        case DegreeMethod::Kronecker: return kronecker_degree(f, N, opt);
        case DegreeMethod::Zeros: return zero_count_degree(f, N, opt);
        case DegreeMethod::Auto: break;
    }

    DegreeReport boundary;
    bool have_boundary = false;
    if (f.n == 2) {
        boundary = winding_degree(f, N, opt);
        have_boundary = true;
    } else if (f.n == 3) {
        boundary = kronecker_degree(f, N, opt);
        have_boundary = true;
    }

    DegreeReport zeros;
    bool have_zeros = false;
    std::string zero_warning;
    try {
        zeros = zero_count_degree(f, N, opt);
        have_zeros = true;
    } catch (const numerical_error& e) {
        if (!have_boundary) throw;
        zero_warning = std::string("zero-count skipped: ") + e.what();
    }

    if (have_boundary && have_zeros && boundary.degree != zeros.degree)
        throw numerical_error("cross-validation failed: " + boundary.method + " gives " +
                              std::to_string(boundary.degree) + " but zero count gives " +
                              std::to_string(zeros.degree));

    DegreeReport rep = have_boundary ? boundary : zeros;
    rep.method = "auto";
    if (have_zeros) rep.zeros = zeros.zeros;
    rep.cross_validated = have_boundary && have_zeros;
    if (!zero_warning.empty()) rep.warnings.push_back(zero_warning);
    return rep;
}

} // namespace vfdeg
