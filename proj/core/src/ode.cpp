#include "vfdeg/ode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vfdeg/errors.hpp"
#include "vfdeg/linalg.hpp"

namespace vfdeg {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;

using Vec = std::vector<double>;

bool finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Cubic Hermite on [0, h] with end values/slopes.
Vec hermite(const Vec& y0, const Vec& f0, const Vec& y1, const Vec& f1, double h, double theta) {
    double t2 = theta * theta, t3 = t2 * theta;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + theta;
    double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    Vec out(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i)
        out[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
    return out;
}

// Advances x from t=0 to t=span with signed field dirsign*F, calling on_step
// after every accepted step; on_step returning false stops the run early.
// Throws numerical_error on step underflow or a non-finite state.
template <class OnStep>
void integrate_core(const FieldDef& f, Vec x, double span, double dirsign, double tol,
                    OnStep&& on_step) {
    const std::size_t n = x.size();
    auto rhs = [&](const Vec& y, Vec& out) {
        out = eval(f, y);
        if (dirsign < 0)
            for (double& v : out) v = -v;
    };

    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    Vec ytmp(n), y5(n);
    rhs(x, k1);
    if (!finite(k1)) throw numerical_error("non-finite field value at the initial state");

    double t = 0.0;
    double h = std::min(span, 1e-2 / (norm(k1) + 1.0));
    if (h <= 0.0) h = span;

    while (t < span) {
        h = std::min(h, span - t);
        if (h < 1e-14 * std::max(1.0, t))
            throw numerical_error("step-size underflow at t=" + std::to_string(t));

        auto stage = [&](Vec& k, std::initializer_list<std::pair<const Vec*, double>> terms) {
            for (std::size_t i = 0; i < n; ++i) {
                double s = x[i];
                for (const auto& [kv, c] : terms) s += h * c * (*kv)[i];
                ytmp[i] = s;
            }
            rhs(ytmp, k);
        };
        stage(k2, {{&k1, A21}});
        stage(k3, {{&k1, A31}, {&k2, A32}});
        stage(k4, {{&k1, A41}, {&k2, A42}, {&k3, A43}});
        stage(k5, {{&k1, A51}, {&k2, A52}, {&k3, A53}, {&k4, A54}});
        stage(k6, {{&k1, A61}, {&k2, A62}, {&k3, A63}, {&k4, A64}, {&k5, A65}});
        for (std::size_t i = 0; i < n; ++i)
            y5[i] = x[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        rhs(y5, k7);

        if (!finite(y5) || !finite(k7)) throw numerical_error("non-finite state during integration");

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double scale = tol * (1.0 + std::max(std::abs(x[i]), std::abs(y5[i])));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            double t_new = t + h;
            if (!on_step(t, x, k1, t_new, y5, k7)) return;
            t = t_new;
            x = y5;
            k1 = k7; // FSAL
        }
        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
}

} // namespace

std::vector<double> Trajectory::at(double t) const {
    t = std::clamp(t, times.front(), times.back());
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = std::min(static_cast<std::size_t>(it - times.begin()), times.size() - 1);
    if (hi == 0) return points.front();
    std::size_t lo = hi - 1;
    double h = times[hi] - times[lo];
    if (h <= 0.0) return points[lo];
    return hermite(points[lo], derivs[lo], points[hi], derivs[hi], h, (t - times[lo]) / h);
}

Trajectory integrate(const FieldDef& f, std::span<const double> x0, double t0, double t1,
                     double tol) {
    if (tol <= 0.0) throw input_error("integrator tolerance must be positive");
    Trajectory traj;
    traj.direction = t1 >= t0 ? 1.0 : -1.0;
    double span = std::abs(t1 - t0);
    Vec x(x0.begin(), x0.end());
    traj.times.push_back(0.0);
    traj.points.push_back(x);
    traj.derivs.push_back({});
    integrate_core(f, x, span, traj.direction, tol,
                   [&](double, const Vec&, const Vec& f0, double tn, const Vec& yn, const Vec& fn) {
                       if (traj.derivs.front().empty()) traj.derivs.front() = f0;
                       traj.times.push_back(tn);
                       traj.points.push_back(yn);
                       traj.derivs.push_back(fn);
                       return true;
                   });
    if (traj.derivs.front().empty()) traj.derivs.front() = eval(f, x);
    traj.status = TrajStatus::Completed;
    return traj;
}

ExitTime exit_time(const FieldDef& f, const Region& N, std::span<const double> x, double t_max,
                   double tol) {
    if (!N.contains(x)) throw input_error("exit_time: the start point is not in the region");
    if (t_max <= 0.0) throw input_error("exit_time: t_max must be positive");

    ExitTime result;
    Vec start(x.begin(), x.end());

    // The accepted step over which membership first flips, plus the bracket
    // [ta, tb] inside it (probed at 8 interior points per step).
    struct Step {
        double t0 = 0.0, t1 = 0.0;
        Vec y0, f0, y1, f1;
    } step;
    double ta = 0.0, tb = 0.0;
    bool found = false;

    integrate_core(f, start, t_max, 1.0, tol,
                   [&](double tp, const Vec& yp, const Vec& fp, double tn, const Vec& yn,
                       const Vec& fn) {
                       const int probes = 8;
                       double h = tn - tp;
                       double prev_t = tp;
                       for (int k = 1; k <= probes; ++k) {
                           double theta = static_cast<double>(k) / probes;
                           Vec y = k == probes ? yn : hermite(yp, fp, yn, fn, h, theta);
                           double tk = tp + theta * h;
                           if (!N.contains(y)) {
                               step = {tp, tn, yp, fp, yn, fn};
                               ta = prev_t;
                               tb = tk;
                               found = true;
                               return false;
                           }
                           prev_t = tk;
                       }
                       return true;
                   });
    if (!found) return result; // stays within horizon

    double H = step.t1 - step.t0;
    auto point_at = [&](double t) {
        return hermite(step.y0, step.f0, step.y1, step.f1, H, (t - step.t0) / H);
    };
    while (tb - ta > defaults::exit_time_tol) {
        double tm = 0.5 * (ta + tb);
        if (N.contains(point_at(tm))) ta = tm;
        else tb = tm;
    }
    result.exited = true;
    result.t = 0.5 * (ta + tb);
    result.point = point_at(result.t);
    return result;
}

std::vector<std::vector<double>> omega_estimate(const FieldDef& f, std::span<const double> x,
                                                double burn_in, double window, double tol) {
    if (burn_in <= 0.0 || window <= 0.0)
        throw input_error("omega_estimate: burn_in and window must be positive");
    Trajectory traj = integrate(f, x, 0.0, burn_in + window, tol);
    std::vector<std::vector<double>> cloud;
    const int samples = 512;
    for (int k = 0; k <= samples; ++k)
        cloud.push_back(traj.at(burn_in + window * k / samples));
    return cloud;
}

OrbitStay orbit_stays_in(const FieldDef& f, const Region& N, std::span<const double> x, double T,
                         int direction, double tol) {
    const double dt = defaults::orbit_sample_dt;
    if (!N.contains(x)) return OrbitStay::Leaves;
    Vec x0(x.begin(), x.end());
    long long next = 1; // t=0 checked above
    bool inside = true;
    try {
        integrate_core(f, x0, T, static_cast<double>(direction), tol,
                       [&](double tp, const Vec& yp, const Vec& fp, double tn, const Vec& yn,
                           const Vec& fn) {
                           double h = tn - tp;
                           while (inside && next * dt <= tn + 1e-15) {
                               double ts = next * dt;
                               Vec y = hermite(yp, fp, yn, fn, h,
                                               std::clamp((ts - tp) / h, 0.0, 1.0));
                               if (!N.contains(y)) inside = false;
                               ++next;
                           }
                           return inside;
                       });
    } catch (const numerical_error&) {
        return OrbitStay::Indeterminate;
    }
    return inside ? OrbitStay::Stays : OrbitStay::Leaves;
}

AsymptoticSet asymptotic_approx(const FieldDef& f, const Region& N, double resolution, double T,
                                int direction, double tol) {
    if (resolution <= 0.0 || T <= 0.0)
        throw input_error("asymptotic_approx: resolution and T must be positive");
    if (direction != 1 && direction != -1)
        throw input_error("asymptotic_approx: direction must be +1 or -1");
    CubeSet grid = rasterize(N, resolution);
    AsymptoticSet out;
    out.cells.n = grid.n;
    out.cells.h = grid.h;
    out.horizon = T;
    out.direction = direction;
    for (const auto& cell : grid.cells) {
        Vec c = grid.center(cell);
        switch (orbit_stays_in(f, N, c, T, direction, tol)) {
            case OrbitStay::Stays: out.cells.cells.insert(cell); break;
            case OrbitStay::Leaves: break;
            case OrbitStay::Indeterminate: ++out.indeterminate; break;
        }
    }
    return out;
}

} // namespace vfdeg
