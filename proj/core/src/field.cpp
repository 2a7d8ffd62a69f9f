#include "vfdeg/field.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "vfdeg/dual.hpp"
#include "vfdeg/errors.hpp"

namespace vfdeg {

namespace {

using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

double pow_int(double a, int k) { return std::pow(a, k); }

[[noreturn]] void domain_fail(const char* what, const Expr& node) {
    throw numerical_error(std::string(what) + " in '" + to_string(node) + "'");
}

template <class T>
T eval_node(const Expr& e, std::span<const T> x) {
    switch (e.kind) {
        case NodeKind::Number: return T(e.number);
        case NodeKind::Coord: return x[static_cast<std::size_t>(e.coord)];
        case NodeKind::Param: return T(e.param_value);
        case NodeKind::Add: return eval_node(*e.a, x) + eval_node(*e.b, x);
        case NodeKind::Sub: return eval_node(*e.a, x) - eval_node(*e.b, x);
        case NodeKind::Mul: return eval_node(*e.a, x) * eval_node(*e.b, x);
        case NodeKind::Neg: return -eval_node(*e.a, x);
        case NodeKind::Div: {
            T num = eval_node(*e.a, x);
            T den = eval_node(*e.b, x);
            if (value_of(den) == 0.0) domain_fail("division by zero", e);
            return num / den;
        }
        case NodeKind::Pow: {
            T base = eval_node(*e.a, x);
            if (e.exponent < 0 && value_of(base) == 0.0) domain_fail("division by zero", e);
            return pow_int(base, e.exponent);
        }
        case NodeKind::Call: {
            T arg = eval_node(*e.a, x);
            switch (e.func) {
                case Func::Sin: return sin(arg);
                case Func::Cos: return cos(arg);
                case Func::Exp: return exp(arg);
                case Func::Sqrt:
                    if (value_of(arg) < 0.0) domain_fail("sqrt of a negative value", e);
                    return sqrt(arg);
            }
            domain_fail("unknown function", e);
        }
    }
    domain_fail("unknown node", e);
}

void check_dim(const FieldDef& f, std::size_t dim) {
    if (dim != static_cast<std::size_t>(f.n))
        throw input_error("point dimension " + std::to_string(dim) + " does not match field dimension " +
                          std::to_string(f.n));
}

FieldDef builtin(const std::string& name, const std::string& source, int n,
                 std::map<std::string, double> defaults,
                 const std::map<std::string, double>& overrides) {
    if (defaults.empty() && !overrides.empty())
        throw input_error("catalog field '" + name + "' takes no parameters");
    for (const auto& [k, v] : overrides) {
        if (!defaults.count(k))
            throw input_error("catalog field '" + name + "' has no parameter '" + k + "'");
        defaults[k] = v;
    }
    return parse_field(source, n, defaults);
}

// attractor(n) -> -x, repeller(n) -> x; coordinate names per the grammar.
std::string radial_source(int n, bool inward) {
    std::string src;
    for (int i = 0; i < n; ++i) {
        if (i) src += ", ";
        if (inward) src += "-";
        if (n <= 3) src += (i == 0 ? "x" : i == 1 ? "y" : "z");
        else src += "x" + std::to_string(i + 1);
    }
    return src;
}

bool parse_sized_name(const std::string& name, const std::string& prefix, int& n_out) {
    if (name.size() < prefix.size() + 3 || name.compare(0, prefix.size(), prefix) != 0) return false;
    if (name[prefix.size()] != '(' || name.back() != ')') return false;
    std::string digits = name.substr(prefix.size() + 1, name.size() - prefix.size() - 2);
    if (digits.empty()) return false;
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    n_out = std::atoi(digits.c_str());
    return n_out >= 1;
}

} // namespace

FieldDef parse_field(const std::string& source, int n,
                     const std::map<std::string, double>& params) {
    if (n < 1) throw input_error("field dimension must be positive");
    for (const auto& [k, v] : params) {
        (void)v;
        if (k == "sin" || k == "cos" || k == "exp" || k == "sqrt")
            throw input_error("parameter name '" + k + "' collides with a function name");
    }
    FieldDef f;
    f.n = n;
    f.params = params;
    f.source = source;
    f.components = parse_component_list(source, n, params);
    if (f.components.size() != static_cast<std::size_t>(n))
        throw input_error("expected " + std::to_string(n) + " components, got " +
                          std::to_string(f.components.size()));
    return f;
}

std::vector<double> eval(const FieldDef& f, std::span<const double> p) {
    check_dim(f, p.size());
    std::vector<double> out(p.size());
    for (int i = 0; i < f.n; ++i) out[static_cast<std::size_t>(i)] = eval_node<double>(*f.components[static_cast<std::size_t>(i)], p);
    return out;
}

void eval_dual(const FieldDef& f, std::span<const double> p, std::span<const double> dir,
               std::span<double> value, std::span<double> dvalue) {
    check_dim(f, p.size());
    std::vector<Dual> x(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) x[i] = Dual{p[i], dir[i]};
    for (int i = 0; i < f.n; ++i) {
        Dual r = eval_node<Dual>(*f.components[static_cast<std::size_t>(i)], std::span<const Dual>(x));
        value[static_cast<std::size_t>(i)] = r.v;
        dvalue[static_cast<std::size_t>(i)] = r.d;
    }
}

Jet jacobian(const FieldDef& f, std::span<const double> p) {
    check_dim(f, p.size());
    const auto n = p.size();
    Jet jet;
    jet.point.assign(p.begin(), p.end());
    jet.value.resize(n);
    jet.jacobian.resize(n * n);
    std::vector<double> dir(n, 0.0), col(n);
    for (std::size_t j = 0; j < n; ++j) {
        dir[j] = 1.0;
        eval_dual(f, p, dir, jet.value, col);
        dir[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) jet.jacobian[i * n + j] = col[i];
    }
    for (double v : jet.jacobian)
        if (!std::isfinite(v)) throw numerical_error("non-finite Jacobian entry at the given point");
    return jet;
}

FieldDef catalog(const std::string& name, const std::map<std::string, double>& overrides) {
    int n = 0;
    if (name == "lorenz")
        return builtin(name, "sigma*(y-x), r*x-y-x*z, x*y-b*z", 3,
                       {{"sigma", 10.0}, {"r", 24.0}, {"b", 8.0 / 3.0}}, overrides);
    if (name == "saddle2") return builtin(name, "x, -y", 2, {}, overrides);
    if (name == "limit_cycle")
        return builtin(name, "x*(1-(x^2+y^2))-y, y*(1-(x^2+y^2))+x", 2, {}, overrides);
    if (name == "segment_flow") return builtin(name, "1-x^2, -y", 2, {}, overrides);
    if (name == "even_field") return builtin(name, "x^2-y^2, 2*x*y", 2, {}, overrides);
    if (parse_sized_name(name, "attractor", n))
        return builtin(name, radial_source(n, true), n, {}, overrides);
    if (parse_sized_name(name, "repeller", n))
        return builtin(name, radial_source(n, false), n, {}, overrides);
    throw input_error("unknown catalog field '" + name + "'");
}

std::string to_string(const FieldDef& f) {
    std::string out;
    for (std::size_t i = 0; i < f.components.size(); ++i) {
        if (i) out += ", ";
        out += to_string(*f.components[i]);
    }
    return out;
}

FieldDef negate(const FieldDef& f) {
    FieldDef g = f;
    g.components.clear();
    for (const auto& c : f.components) {
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::Neg;
        e->a = c;
        g.components.push_back(e);
    }
    g.source = "-(" + f.source + ")";
    return g;
}

} // namespace vfdeg
