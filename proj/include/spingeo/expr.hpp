// Expression language for scenario files: complex-valued scalar expressions
// in chart coordinates x1..x9 / y1..y9.
//
// Grammar (recursive descent, positions are 1-based):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' factor)?          -- '^' right-associative
//   base   := number | 'i' | 'pi' | var | fn '(' expr ')' | '(' expr ')'
//           | '-' factor                  -- unary minus binds looser than '^'
//   var    := ('x'|'y') digit             -- both letters address slot digit-1
#pragma once

#include <cctype>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spingeo/linalg.hpp"

namespace spingeo {

struct ParseError : Error {
    int position;  // 1-based character position
    ParseError(const std::string& what, int pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

enum class ExprKind { Number, ImagUnit, Pi, Var, Add, Sub, Mul, Div, Pow, Neg, Call };

enum class ExprFn { Sin, Cos, Exp, Log, Sqrt };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    ExprKind kind;
    double number = 0.0;
    int var_index = 0;   // 1-based coordinate slot
    char var_letter = 'x';
    ExprFn fn = ExprFn::Sin;
    Expr lhs, rhs;       // children (rhs unused for unary)
};

namespace detail {

inline Expr make(ExprKind k) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    return n;
}

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    int here() const { return static_cast<int>(pos) + 1; }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

struct Parser {
    Lexer lex;

    explicit Parser(const std::string& text) : lex(text) {}

    Expr parse() {
        if (lex.eof()) throw ParseError("empty expression", lex.here());
        Expr e = expr();
        if (!lex.eof()) throw ParseError("unexpected trailing input", lex.here());
        return e;
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (lex.accept('+')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprKind::Add;
                n->lhs = e;
                n->rhs = term();
                e = n;
            } else if (lex.accept('-')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprKind::Sub;
                n->lhs = e;
                n->rhs = term();
                e = n;
            } else {
                return e;
            }
        }
    }

    Expr term() {
        Expr e = factor();
        for (;;) {
            if (lex.accept('*')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprKind::Mul;
                n->lhs = e;
                n->rhs = factor();
                e = n;
            } else if (lex.accept('/')) {
                auto n = std::make_shared<ExprNode>();
                n->kind = ExprKind::Div;
                n->lhs = e;
                n->rhs = factor();
                e = n;
            } else {
                return e;
            }
        }
    }

    Expr factor() {
        if (lex.peek() == '-') {
            lex.accept('-');
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::Neg;
            n->lhs = factor();
            return n;
        }
        Expr b = base();
        if (lex.accept('^')) {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::Pow;
            n->lhs = b;
            n->rhs = factor();
            return n;
        }
        return b;
    }

    Expr base() {
        const int at = lex.here();
        if (lex.eof()) throw ParseError("expected operand", lex.here());
        char c = lex.peek();
        if (c == '(') {
            lex.accept('(');
            Expr e = expr();
            if (!lex.accept(')')) throw ParseError("expected ')'", lex.here());
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier(at);
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }

    Expr number() {
        lex.skip_ws();
        const int at = lex.here();
        size_t start = lex.pos;
        auto& s = lex.s;
        size_t p = start;
        while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        if (p < s.size() && s[p] == '.') {
            ++p;
            while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
        }
        if (p < s.size() && (s[p] == 'e' || s[p] == 'E')) {
            size_t q = p + 1;
            if (q < s.size() && (s[q] == '+' || s[q] == '-')) ++q;
            if (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) {
                ++q;
                while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
                p = q;
            }
        }
        if (p == start) throw ParseError("malformed number", at);
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Number;
        n->number = std::stod(s.substr(start, p - start));
        lex.pos = p;
        return n;
    }

    Expr identifier(int at) {
        lex.skip_ws();
        auto& s = lex.s;
        size_t start = lex.pos, p = start;
        while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])))) ++p;
        const std::string name = s.substr(start, p - start);
        lex.pos = p;
        if (name == "i") return detail::make(ExprKind::ImagUnit);
        if (name == "pi") return detail::make(ExprKind::Pi);
        if (name.size() == 2 && (name[0] == 'x' || name[0] == 'y') && name[1] >= '1' && name[1] <= '9') {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprKind::Var;
            n->var_letter = name[0];
            n->var_index = name[1] - '0';
            return n;
        }
        ExprFn fn;
        if (name == "sin") fn = ExprFn::Sin;
        else if (name == "cos") fn = ExprFn::Cos;
        else if (name == "exp") fn = ExprFn::Exp;
        else if (name == "log") fn = ExprFn::Log;
        else if (name == "sqrt") fn = ExprFn::Sqrt;
        else throw ParseError("unknown identifier '" + name + "'", at);
        if (!lex.accept('(')) throw ParseError("expected '(' after function name", lex.here());
        Expr arg = expr();
        if (!lex.accept(')')) throw ParseError("expected ')'", lex.here());
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Call;
        n->fn = fn;
        n->lhs = arg;
        return n;
    }
};

}  // namespace detail

inline Expr parse_expr(const std::string& text) {
    detail::Parser p(text);
    return p.parse();
}

inline int max_var_index(const Expr& e) {
    if (!e) return 0;
    int m = (e->kind == ExprKind::Var) ? e->var_index : 0;
    if (e->lhs) m = std::max(m, max_var_index(e->lhs));
    if (e->rhs) m = std::max(m, max_var_index(e->rhs));
    return m;
}

inline cd eval(const Expr& e, std::span<const double> p) {
    switch (e->kind) {
        case ExprKind::Number: return cd(e->number, 0.0);
        case ExprKind::ImagUnit: return cd(0.0, 1.0);
        case ExprKind::Pi: return cd(3.14159265358979323846, 0.0);
        case ExprKind::Var:
            if (e->var_index > static_cast<int>(p.size()))
                throw DomainError("variable index exceeds chart dimension");
            return cd(p[e->var_index - 1], 0.0);
        case ExprKind::Add: return eval(e->lhs, p) + eval(e->rhs, p);
        case ExprKind::Sub: return eval(e->lhs, p) - eval(e->rhs, p);
        case ExprKind::Mul: return eval(e->lhs, p) * eval(e->rhs, p);
        case ExprKind::Div: {
            const cd d = eval(e->rhs, p);
            if (d == cd(0.0)) throw DomainError("division by zero");
            return eval(e->lhs, p) / d;
        }
        case ExprKind::Pow: {
            const cd b = eval(e->lhs, p);
            const cd x = eval(e->rhs, p);
            // integer exponents multiplied out, so real bases stay exactly real
            if (x.imag() == 0.0 && x.real() == std::floor(x.real()) && std::abs(x.real()) <= 64.0) {
                long k = static_cast<long>(x.real());
                if (k == 0) return cd(1.0);
                cd acc(1.0);
                cd f = (k > 0) ? b : cd(1.0) / b;
                for (long t = std::labs(k); t > 0; --t) acc *= f;
                return acc;
            }
            return std::pow(b, x);
        }
        case ExprKind::Neg: return -eval(e->lhs, p);
        case ExprKind::Call: {
            const cd v = eval(e->lhs, p);
            switch (e->fn) {
                case ExprFn::Sin: return std::sin(v);
                case ExprFn::Cos: return std::cos(v);
                case ExprFn::Exp: return std::exp(v);
                case ExprFn::Log:
                    if (v == cd(0.0)) throw DomainError("log of zero");
                    return std::log(v);
                case ExprFn::Sqrt: return std::sqrt(v);
            }
        }
    }
    throw Error("eval: corrupt expression node");
}

inline std::string pretty(const Expr& e) {
    auto paren = [](const std::string& s) { return "(" + s + ")"; };
    switch (e->kind) {
        case ExprKind::Number: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", e->number);
            return buf;
        }
        case ExprKind::ImagUnit: return "i";
        case ExprKind::Pi: return "pi";
        case ExprKind::Var: return std::string(1, e->var_letter) + std::to_string(e->var_index);
        case ExprKind::Add: return paren(pretty(e->lhs) + " + " + pretty(e->rhs));
        case ExprKind::Sub: return paren(pretty(e->lhs) + " - " + pretty(e->rhs));
        case ExprKind::Mul: return paren(pretty(e->lhs) + " * " + pretty(e->rhs));
        case ExprKind::Div: return paren(pretty(e->lhs) + " / " + pretty(e->rhs));
        case ExprKind::Pow: return paren(pretty(e->lhs) + "^" + pretty(e->rhs));
        case ExprKind::Neg: return paren("-" + pretty(e->lhs));
        case ExprKind::Call: {
            const char* names[] = {"sin", "cos", "exp", "log", "sqrt"};
            return std::string(names[static_cast<int>(e->fn)]) + "(" + pretty(e->lhs) + ")";
        }
    }
    throw Error("pretty: corrupt expression node");
}

}  // namespace spingeo
