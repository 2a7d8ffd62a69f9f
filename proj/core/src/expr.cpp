#include "vfdeg/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "vfdeg/errors.hpp"

namespace vfdeg {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t pos = 0;
    double number = 0.0;
    std::string text;
};

struct Lexer {
    const std::string& src;
    std::size_t i = 0;
    Token cur;

    explicit Lexer(const std::string& s) : src(s) { advance(); }

    [[noreturn]] void fail(std::size_t pos, const std::string& msg) const {
        throw input_error("syntax error at " + std::to_string(pos) + ": " + msg);
    }

    void advance() {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
        cur = Token{};
        cur.pos = i;
        if (i >= src.size()) { cur.kind = Tok::End; return; }
        char c = src[i];
        switch (c) {
            case '+': cur.kind = Tok::Plus; ++i; return;
            case '-': cur.kind = Tok::Minus; ++i; return;
            case '*': cur.kind = Tok::Star; ++i; return;
            case '/': cur.kind = Tok::Slash; ++i; return;
            case '^': cur.kind = Tok::Caret; ++i; return;
            case '(': cur.kind = Tok::LParen; ++i; return;
            case ')': cur.kind = Tok::RParen; ++i; return;
            case ',': cur.kind = Tok::Comma; ++i; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = src.c_str() + i;
            char* end = nullptr;
            double v = std::strtod(start, &end);
            if (end == start) fail(i, "malformed number");
            cur.kind = Tok::Number;
            cur.number = v;
            cur.text.assign(start, static_cast<std::size_t>(end - start));
            i += static_cast<std::size_t>(end - start);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            cur.kind = Tok::Ident;
            cur.text = src.substr(i, j - i);
            i = j;
            return;
        }
        fail(i, std::string("unexpected character '") + c + "'");
    }
};

int coordinate_index(const std::string& name, int n) {
    static const char* xyz[3] = {"x", "y", "z"};
    for (int k = 0; k < n && k < 3; ++k)
        if (name == xyz[k]) return k;
    if (name.size() >= 2 && name[0] == 'x') {
        bool digits = true;
        for (std::size_t k = 1; k < name.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(name[k]))) { digits = false; break; }
        if (digits) {
            int idx = std::atoi(name.c_str() + 1);
            if (idx >= 1 && idx <= n) return idx - 1;
        }
    }
    return -1;
}

bool function_name(const std::string& name, Func& out) {
    if (name == "sin") { out = Func::Sin; return true; }
    if (name == "cos") { out = Func::Cos; return true; }
    if (name == "exp") { out = Func::Exp; return true; }
    if (name == "sqrt") { out = Func::Sqrt; return true; }
    return false;
}

struct Parser {
    Lexer lex;
    int n;
    const std::map<std::string, double>& params;

    Parser(const std::string& s, int n_, const std::map<std::string, double>& p)
        : lex(s), n(n_), params(p) {}

    ExprPtr binary(NodeKind k, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->a = std::move(a);
        e->b = std::move(b);
        return e;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (lex.cur.kind == Tok::Plus) { lex.advance(); lhs = binary(NodeKind::Add, lhs, term()); }
            else if (lex.cur.kind == Tok::Minus) { lex.advance(); lhs = binary(NodeKind::Sub, lhs, term()); }
            else return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            if (lex.cur.kind == Tok::Star) { lex.advance(); lhs = binary(NodeKind::Mul, lhs, factor()); }
            else if (lex.cur.kind == Tok::Slash) { lex.advance(); lhs = binary(NodeKind::Div, lhs, factor()); }
            else return lhs;
        }
    }

    ExprPtr factor() {
        if (lex.cur.kind == Tok::Minus) {
            lex.advance();
            auto e = std::make_shared<Expr>();
            e->kind = NodeKind::Neg;
            e->a = factor();
            return e;
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (lex.cur.kind != Tok::Caret) return base;
        std::size_t pos = lex.cur.pos;
        lex.advance();
        int sign = 1;
        if (lex.cur.kind == Tok::Minus) { sign = -1; lex.advance(); }
        if (lex.cur.kind != Tok::Number)
            lex.fail(pos, "exponent must be an integer literal");
        double v = lex.cur.number;
        if (v != std::floor(v) || std::abs(v) > 1e9)
            lex.fail(lex.cur.pos, "exponent must be an integer literal");
        lex.advance();
        auto e = std::make_shared<Expr>();
        e->kind = NodeKind::Pow;
        e->a = std::move(base);
        e->exponent = sign * static_cast<int>(v);
        return e;
    }

    ExprPtr atom() {
        const Token t = lex.cur;
        switch (t.kind) {
            case Tok::Number: {
                lex.advance();
                auto e = std::make_shared<Expr>();
                e->kind = NodeKind::Number;
                e->number = t.number;
                return e;
            }
            case Tok::LParen: {
                lex.advance();
                ExprPtr inner = expr();
                if (lex.cur.kind != Tok::RParen) lex.fail(lex.cur.pos, "expected ')'");
                lex.advance();
                return inner;
            }
            case Tok::Ident: {
                lex.advance();
                Func fn;
                if (lex.cur.kind == Tok::LParen && function_name(t.text, fn)) {
                    lex.advance();
                    ExprPtr arg = expr();
                    if (lex.cur.kind != Tok::RParen) lex.fail(lex.cur.pos, "expected ')'");
                    lex.advance();
                    auto e = std::make_shared<Expr>();
                    e->kind = NodeKind::Call;
                    e->func = fn;
                    e->name = t.text;
                    e->a = std::move(arg);
                    return e;
                }
                int ci = coordinate_index(t.text, n);
                if (ci >= 0) {
                    auto e = std::make_shared<Expr>();
                    e->kind = NodeKind::Coord;
                    e->coord = ci;
                    e->name = t.text;
                    return e;
                }
                auto it = params.find(t.text);
                if (it != params.end()) {
                    auto e = std::make_shared<Expr>();
                    e->kind = NodeKind::Param;
                    e->name = t.text;
                    e->param_value = it->second;
                    return e;
                }
                throw input_error("unknown identifier '" + t.text + "' at " +
                                  std::to_string(t.pos) +
                                  " (not a coordinate or parameter)");
            }
            case Tok::End: lex.fail(t.pos, "unexpected end of input");
            default: lex.fail(t.pos, "expected a number, identifier or '('");
        }
    }
};

std::string fmt_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* func_text(Func f) {
    switch (f) {
        case Func::Sin: return "sin";
        case Func::Cos: return "cos";
        case Func::Exp: return "exp";
        case Func::Sqrt: return "sqrt";
    }
    return "?";
}

// Precedence levels: add/sub 1, mul/div 2, unary minus 3, pow 4, atoms 5.
void print(const Expr& e, int parent, std::string& out) {
    auto wrap = [&](int level, auto&& body) {
        bool paren = level < parent;
        if (paren) out += '(';
        body();
        if (paren) out += ')';
    };
    switch (e.kind) {
        case NodeKind::Number: out += fmt_number(e.number); break;
        case NodeKind::Coord: out += e.name; break;
        case NodeKind::Param: out += e.name; break;
        case NodeKind::Add:
            wrap(1, [&] { print(*e.a, 1, out); out += '+'; print(*e.b, 2, out); });
            break;
        case NodeKind::Sub:
            wrap(1, [&] { print(*e.a, 1, out); out += '-'; print(*e.b, 2, out); });
            break;
        case NodeKind::Mul:
            wrap(2, [&] { print(*e.a, 2, out); out += '*'; print(*e.b, 3, out); });
            break;
        case NodeKind::Div:
            wrap(2, [&] { print(*e.a, 2, out); out += '/'; print(*e.b, 3, out); });
            break;
        case NodeKind::Neg:
            wrap(3, [&] { out += '-'; print(*e.a, 3, out); });
            break;
        case NodeKind::Pow:
            wrap(4, [&] {
                print(*e.a, 5, out);
                out += '^';
                out += std::to_string(e.exponent);
            });
            break;
        case NodeKind::Call:
            out += func_text(e.func);
            out += '(';
            print(*e.a, 0, out);
            out += ')';
            break;
    }
}

} // namespace

ExprPtr parse_expression(const std::string& source, int n,
                         const std::map<std::string, double>& params) {
    Parser p(source, n, params);
    ExprPtr e = p.expr();
    if (p.lex.cur.kind != Tok::End)
        p.lex.fail(p.lex.cur.pos, "trailing input");
    return e;
}

std::vector<ExprPtr> parse_component_list(const std::string& source, int n,
                                          const std::map<std::string, double>& params) {
    Parser p(source, n, params);
    std::vector<ExprPtr> out;
    out.push_back(p.expr());
    while (p.lex.cur.kind == Tok::Comma) {
        p.lex.advance();
        out.push_back(p.expr());
    }
    if (p.lex.cur.kind != Tok::End)
        p.lex.fail(p.lex.cur.pos, "trailing input");
    return out;
}

std::string to_string(const Expr& e) {
    std::string out;
    print(e, 0, out);
    return out;
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case NodeKind::Number: return a.number == b.number;
        case NodeKind::Coord: return a.coord == b.coord && a.name == b.name;
        case NodeKind::Param: return a.name == b.name && a.param_value == b.param_value;
        case NodeKind::Neg: return equal(*a.a, *b.a);
        case NodeKind::Pow: return a.exponent == b.exponent && equal(*a.a, *b.a);
        case NodeKind::Call: return a.func == b.func && equal(*a.a, *b.a);
        default: return equal(*a.a, *b.a) && equal(*a.b, *b.b);
    }
}

} // namespace vfdeg
