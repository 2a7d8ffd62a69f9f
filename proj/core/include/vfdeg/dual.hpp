#pragma once

#include <cmath>

namespace vfdeg {

// First-order dual number a + b*eps with eps^2 = 0. One derivative slot: a
// full Jacobian takes n passes with unit seeds, a directional derivative one.
struct Dual {
    double v = 0.0; // value
    double d = 0.0; // derivative along the seeded direction

    Dual() = default;
    Dual(double value) : v(value), d(0.0) {}
    Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
inline Dual operator/(Dual a, Dual b) {
    double inv = 1.0 / b.v;
    return {a.v * inv, (a.d - a.v * b.d * inv) * inv};
}

inline Dual sin(Dual a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual exp(Dual a) { double e = std::exp(a.v); return {e, e * a.d}; }
inline Dual sqrt(Dual a) { double s = std::sqrt(a.v); return {s, a.d / (2.0 * s)}; }

// Integer power by binary exponentiation; k may be negative.
inline Dual pow_int(Dual a, int k) {
    if (k < 0) return Dual{1.0} / pow_int(a, -k);
    Dual result{1.0};
    Dual base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

} // namespace vfdeg
