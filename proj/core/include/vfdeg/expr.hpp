#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace vfdeg {

// Expression grammar for field components:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | power
//   power  := atom ['^' ['-'] integer]          (integer exponents only)
//   atom   := number | identifier | '(' expr ')' | func '(' expr ')'
//   func   := sin | cos | exp | sqrt
//
// Identifiers are coordinates (x1..xn always; x,y,z as aliases when n <= 3)
// or parameter names. Parameters are resolved to their numeric value at parse
// time; the node keeps the name so printing round-trips.

enum class NodeKind { Number, Coord, Param, Add, Sub, Mul, Div, Neg, Pow, Call };
enum class Func { Sin, Cos, Exp, Sqrt };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    NodeKind kind;
    double number = 0.0;      // Number
    int coord = -1;           // Coord: 0-based coordinate index
    std::string name;         // Param name
    double param_value = 0.0; // Param: value bound at parse time
    int exponent = 0;         // Pow
    Func func = Func::Sin;    // Call
    ExprPtr a, b;             // children (b unused for Neg/Pow/Call)
};

// Parses one expression. Throws input_error with a character position on
// syntax errors, unknown identifiers, or non-integer exponents.
ExprPtr parse_expression(const std::string& source, int n,
                         const std::map<std::string, double>& params);

// Parses a comma-separated expression list (field components).
std::vector<ExprPtr> parse_component_list(const std::string& source, int n,
                                          const std::map<std::string, double>& params);

// Precedence-aware printer; parse(to_string(e)) rebuilds an identical tree.
std::string to_string(const Expr& e);

bool equal(const Expr& a, const Expr& b);

} // namespace vfdeg
