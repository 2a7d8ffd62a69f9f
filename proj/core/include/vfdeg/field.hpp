#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "vfdeg/expr.hpp"

namespace vfdeg {

// A parsed n-component vector field. Immutable after construction; all
// operations on it are pure and safe to call concurrently.
struct FieldDef {
    int n = 0;
    std::vector<ExprPtr> components;
    std::map<std::string, double> params;
    std::string source; // original comma-separated text
};

// Value and Jacobian of a field at a point.
struct Jet {
    std::vector<double> point;
    std::vector<double> value;
    std::vector<double> jacobian; // row-major n x n, entry (i,j) = dF_i/dx_j

    double entry(int i, int j) const { return jacobian[static_cast<std::size_t>(i) * point.size() + j]; }
};

// Parses comma-separated component expressions. Throws input_error on syntax
// errors (position-reported), unknown identifiers, or component count != n.
FieldDef parse_field(const std::string& source, int n,
                     const std::map<std::string, double>& params);

// F(p) by tree evaluation. Domain errors (sqrt of a negative, division by
// zero) raise numerical_error naming the offending subexpression.
std::vector<double> eval(const FieldDef& f, std::span<const double> p);

// Value and directional derivative DF(p)*dir in a single dual-number sweep.
void eval_dual(const FieldDef& f, std::span<const double> p, std::span<const double> dir,
               std::span<double> value, std::span<double> dvalue);

// Full Jacobian by n forward-mode passes with unit seeds.
Jet jacobian(const FieldDef& f, std::span<const double> p);

// Built-in fields. Names: lorenz, saddle2, attractor(n), repeller(n),
// limit_cycle, segment_flow, even_field. Lorenz defaults sigma=10, b=8/3,
// r=24, merged with overrides; the others take no parameters.
FieldDef catalog(const std::string& name, const std::map<std::string, double>& overrides = {});

// Comma-joined pretty print of the components.
std::string to_string(const FieldDef& f);

// The same field with every component negated (the time-reversed flow).
FieldDef negate(const FieldDef& f);

} // namespace vfdeg
