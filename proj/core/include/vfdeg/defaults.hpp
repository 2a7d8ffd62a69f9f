#pragma once

// Central knobs shared by the library and the CLI. Every tolerance that shows
// up in a report is one of these unless the caller overrode it.
namespace vfdeg::defaults {

inline constexpr int    boundary_samples_2d   = 64;       // samples per closed boundary curve
inline constexpr int    sphere_grid_theta     = 128;      // n=3 boundary grid
inline constexpr int    sphere_grid_phi       = 256;
inline constexpr double newton_tol            = 1e-10;    // |F(z)| at an accepted zero
inline constexpr double tangency_tol          = 1e-8;     // |F.n| <= tol*|F| counts as tangent
inline constexpr double quad_agreement        = 0.05;     // successive Kronecker raws must differ by less
inline constexpr int    max_refinements       = 6;        // grid doublings before giving up
inline constexpr int    newton_seeds_per_axis = 12;
inline constexpr double merge_radius_factor   = 1e-6;     // x region diameter
inline constexpr double degeneracy_factor     = 1e-10;    // |det DF| < factor * diameter^n is degenerate
inline constexpr double ode_tol               = 1e-9;     // local error per integrator step
inline constexpr double exit_time_tol         = 1e-9;     // bisection tolerance in time
inline constexpr double orbit_sample_dt       = 1.0 / 64; // membership sampling step along orbits
inline constexpr double boundary_zero_rel     = 1e-9;     // min|F| on the boundary below this (relative) is fatal

} // namespace vfdeg::defaults
