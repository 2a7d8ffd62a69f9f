#pragma once

#include <span>
#include <vector>

#include "vfdeg/defaults.hpp"
#include "vfdeg/field.hpp"
#include "vfdeg/region.hpp"

namespace vfdeg {

enum class TrajStatus { Completed, LeftRegion, StepFailure };

// An adaptive-step orbit record. Times are the elapsed integration clock and
// strictly increase; for backward spans the reversed field was integrated.
// Field values at the step points drive cubic Hermite dense output.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> points;
    std::vector<std::vector<double>> derivs;
    TrajStatus status = TrajStatus::Completed;
    double direction = 1.0; // +1 forward time, -1 reversed

    std::vector<double> at(double t) const; // cubic Hermite between steps
    const std::vector<double>& back() const { return points.back(); }
};

// Dormand-Prince 5(4) with local error per step <= tol. A span with t1 < t0
// integrates the reversed field over the same elapsed time. Throws
// numerical_error on step-size underflow or a non-finite state.
Trajectory integrate(const FieldDef& f, std::span<const double> x0, double t0, double t1,
                     double tol = defaults::ode_tol);

struct ExitTime {
    bool exited = false;
    double t = 0.0;             // first boundary-crossing time when exited
    std::vector<double> point;  // state at that time
};

// First forward boundary-crossing time from x in N, bracketed by integrator
// steps and refined by bisection on membership to defaults::exit_time_tol.
// exited=false means the orbit stayed in N through t_max.
ExitTime exit_time(const FieldDef& f, const Region& N, std::span<const double> x, double t_max,
                   double tol = defaults::ode_tol);

// Orbit samples over [burn_in, burn_in+window]; a heuristic omega-limit
// approximation and reported as such.
std::vector<std::vector<double>> omega_estimate(const FieldDef& f, std::span<const double> x,
                                                double burn_in, double window,
                                                double tol = defaults::ode_tol);

enum class OrbitStay { Stays, Leaves, Indeterminate };

// Does the orbit of x stay in N through the signed horizon? Membership is
// checked on the fixed time grid k*orbit_sample_dt so that a larger horizon
// tests a superset of the sample times.
OrbitStay orbit_stays_in(const FieldDef& f, const Region& N, std::span<const double> x, double T,
                         int direction, double tol = 1e-8);

// Grid cells of N whose center orbit stays in N over the signed horizon,
// membership checked on the fixed time grid k*orbit_sample_dt so that larger
// horizons can only shrink the set.
struct AsymptoticSet {
    CubeSet cells;
    double horizon = 0.0;
    int direction = 1; // +1 positive (forward), -1 negative (backward)
    int indeterminate = 0; // cells whose orbit the integrator could not follow
};

AsymptoticSet asymptotic_approx(const FieldDef& f, const Region& N, double resolution, double T,
                                int direction, double tol = 1e-8);

} // namespace vfdeg
