#include "hsurf/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

using Kind = ExprNode::Kind;

const std::vector<std::string> kRealFunctions = {"sqrt", "sinh", "cosh", "tanh", "sin", "cos", "exp", "log", "abs"};
const std::vector<std::string> kComplexFunctions = {"conj", "re", "im"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

ExprPtr make(Kind kind, std::vector<ExprPtr> args = {}, std::string name = {}, double number = 0.0) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->args = std::move(args);
    n->name = std::move(name);
    n->number = number;
    return n;
}

class Parser {
public:
    Parser(const std::string& text, ExprMode mode) : s_(text), mode_(mode) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size())
            throw ParseError(pos_, {"+", "-", "*", "/", "^", "end of input"}, "unexpected character");
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            if (accept('+')) lhs = make(Kind::Add, {lhs, term()});
            else if (accept('-')) lhs = make(Kind::Sub, {lhs, term()});
            else return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        for (;;) {
            if (accept('*')) lhs = make(Kind::Mul, {lhs, unary()});
            else if (accept('/')) lhs = make(Kind::Div, {lhs, unary()});
            else return lhs;
        }
    }

    ExprPtr unary() {
        if (accept('-')) return make(Kind::Negate, {unary()});
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (accept('^')) return make(Kind::Pow, {base, unary()});
        return base;
    }

    std::vector<std::string> identifiers() const {
        std::vector<std::string> out = {"u", "v", "pi", "e"};
        if (mode_ == ExprMode::Complex) {
            out.push_back("z");
            out.push_back("i");
        }
        for (const auto& f : kRealFunctions) out.push_back(f);
        if (mode_ == ExprMode::Complex)
            for (const auto& f : kComplexFunctions) out.push_back(f);
        return out;
    }

    ExprPtr primary() {
        skip();
        const std::size_t start = pos_;
        if (pos_ >= s_.size()) throw ParseError(pos_, {"number", "identifier", "(", "-"}, "unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            const bool complex = mode_ == ExprMode::Complex;
            if (contains(kRealFunctions, id) || (complex && contains(kComplexFunctions, id))) {
                if (!accept('(')) throw ParseError(pos_, {"("}, "function '" + id + "' needs an argument");
                ExprPtr arg = expr();
                if (!accept(')')) throw ParseError(pos_, {")"}, "unbalanced parenthesis");
                return make(Kind::Call, {arg}, id);
            }
            if (id == "u" || id == "v" || (complex && id == "z")) return make(Kind::Variable, {}, id);
            if (id == "pi" || id == "e" || (complex && id == "i")) return make(Kind::Constant, {}, id);
            throw ParseError(start, identifiers(), "unknown identifier '" + id + "'");
        }
        if (accept('(')) {
            ExprPtr inner = expr();
            if (!accept(')')) throw ParseError(pos_, {")"}, "unbalanced parenthesis");
            return inner;
        }
        throw ParseError(pos_, {"number", "identifier", "(", "-"}, "unexpected character");
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++n;
            return n;
        };
        std::size_t n = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) throw ParseError(start, {"digit"}, "malformed number");
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            // Only an exponent if digits follow; otherwise leave 'e' for the caller.
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (digits() == 0) pos_ = save;
        }
        const std::string text = s_.substr(start, pos_ - start);
        return make(Kind::Number, {}, {}, std::strtod(text.c_str(), nullptr));
    }

    const std::string& s_;
    ExprMode mode_;
    std::size_t pos_ = 0;
};

[[noreturn]] void domain(const std::string& what) { fail(ErrorCode::DomainError, what); }

// Scalar-specific primitives. Each overload enforces the real-domain policy.

double div_(double a, double b) {
    if (b == 0.0) domain("division by zero");
    return a / b;
}
Series div_(const Series& a, const Series& b) { return a / b; }
std::complex<double> div_(std::complex<double> a, std::complex<double> b) {
    if (b == 0.0) domain("division by zero");
    return a / b;
}

double pow_(double a, double b) {
    if (b != std::floor(b) && !(a > 0.0)) domain("non-integer power of a non-positive base");
    if (a == 0.0 && b < 0.0) domain("negative power of zero");
    return std::pow(a, b);
}
Series pow_(const Series& a, const Series& b) { return pow(a, b); }
std::complex<double> pow_(std::complex<double> a, std::complex<double> b) {
    if (a == 0.0 && b.real() <= 0.0) domain("power of zero");
    return std::pow(a, b);
}

double call_(const std::string& f, double x) {
    if (f == "sqrt") {
        if (x < 0.0) domain("sqrt of a negative number");
        return std::sqrt(x);
    }
    if (f == "log") {
        if (!(x > 0.0)) domain("log of a non-positive number");
        return std::log(x);
    }
    if (f == "sinh") return std::sinh(x);
    if (f == "cosh") return std::cosh(x);
    if (f == "tanh") return std::tanh(x);
    if (f == "sin") return std::sin(x);
    if (f == "cos") return std::cos(x);
    if (f == "exp") return std::exp(x);
    if (f == "abs") return std::abs(x);
    fail(ErrorCode::EvaluationError, "function '" + f + "' is not real-valued");
}

Series call_(const std::string& f, const Series& x) {
    if (f == "sqrt") return sqrt(x);
    if (f == "log") return log(x);
    if (f == "sinh") return sinh(x);
    if (f == "cosh") return cosh(x);
    if (f == "tanh") return tanh(x);
    if (f == "sin") return sin(x);
    if (f == "cos") return cos(x);
    if (f == "exp") return exp(x);
    if (f == "abs") return abs(x);
    fail(ErrorCode::EvaluationError, "function '" + f + "' is not real-valued");
}

std::complex<double> call_(const std::string& f, std::complex<double> x) {
    if (f == "sqrt") return std::sqrt(x);
    if (f == "log") {
        if (x == 0.0) domain("log of zero");
        return std::log(x);
    }
    if (f == "sinh") return std::sinh(x);
    if (f == "cosh") return std::cosh(x);
    if (f == "tanh") return std::tanh(x);
    if (f == "sin") return std::sin(x);
    if (f == "cos") return std::cos(x);
    if (f == "exp") return std::exp(x);
    if (f == "abs") return std::abs(x);
    if (f == "conj") return std::conj(x);
    if (f == "re") return x.real();
    if (f == "im") return x.imag();
    fail(ErrorCode::EvaluationError, "unknown function '" + f + "'");
}

template <class T>
struct Env {
    T u, v, z;
    T zero;
};

template <class T>
T constant_(const std::string& name, const T& zero) {
    if (name == "pi") return zero + std::numbers::pi;
    if (name == "e") return zero + std::numbers::e;
    if constexpr (std::is_same_v<T, std::complex<double>>) {
        if (name == "i") return std::complex<double>(0.0, 1.0);
    }
    fail(ErrorCode::EvaluationError, "constant '" + name + "' is not available here");
}

template <class T>
T eval_node(const ExprNode& n, const Env<T>& env) {
    switch (n.kind) {
    case Kind::Number: return env.zero + n.number;
    case Kind::Variable:
        if (n.name == "u") return env.u;
        if (n.name == "v") return env.v;
        return env.z;
    case Kind::Constant: return constant_<T>(n.name, env.zero);
    case Kind::Negate: return -eval_node(*n.args[0], env);
    case Kind::Add: return eval_node(*n.args[0], env) + eval_node(*n.args[1], env);
    case Kind::Sub: return eval_node(*n.args[0], env) - eval_node(*n.args[1], env);
    case Kind::Mul: return eval_node(*n.args[0], env) * eval_node(*n.args[1], env);
    case Kind::Div: return div_(eval_node(*n.args[0], env), eval_node(*n.args[1], env));
    case Kind::Pow: return pow_(eval_node(*n.args[0], env), eval_node(*n.args[1], env));
    case Kind::Call: return call_(n.name, eval_node(*n.args[0], env));
    }
    fail(ErrorCode::EvaluationError, "corrupt expression tree");
}

int depth_of(const ExprNode& n) {
    int d = 0;
    for (const auto& a : n.args) d = std::max(d, 1 + depth_of(*a));
    return d;
}

std::string fmt_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string unparse_node(const ExprNode& n) {
    auto bin = [&](const char* op) {
        return "(" + unparse_node(*n.args[0]) + " " + op + " " + unparse_node(*n.args[1]) + ")";
    };
    switch (n.kind) {
    case Kind::Number: return fmt_number(n.number);
    case Kind::Variable:
    case Kind::Constant: return n.name;
    case Kind::Negate: return "(-" + unparse_node(*n.args[0]) + ")";
    case Kind::Add: return bin("+");
    case Kind::Sub: return bin("-");
    case Kind::Mul: return bin("*");
    case Kind::Div: return bin("/");
    case Kind::Pow: return bin("^");
    case Kind::Call: return n.name + "(" + unparse_node(*n.args[0]) + ")";
    }
    return {};
}

}  // namespace

bool ExprNode::operator==(const ExprNode& other) const {
    if (kind != other.kind || name != other.name || args.size() != other.args.size()) return false;
    if (kind == Kind::Number && number != other.number) return false;
    for (std::size_t k = 0; k < args.size(); ++k)
        if (!(*args[k] == *other.args[k])) return false;
    return true;
}

GraphExpr::GraphExpr(ExprPtr root, ExprMode mode, std::string source)
    : root_(std::move(root)), mode_(mode), source_(std::move(source)) {}

int GraphExpr::depth() const { return depth_of(*root_); }

std::string GraphExpr::unparse() const { return unparse_node(*root_); }

double GraphExpr::eval(double u, double v) const {
    const double r = eval_node<double>(*root_, Env<double>{u, v, 0.0, 0.0});
    if (!std::isfinite(r)) fail(ErrorCode::EvaluationError, "expression is not finite at this point");
    return r;
}

Series GraphExpr::eval(const Series& u, const Series& v) const {
    const int order = std::min(u.order(), v.order());
    const Series r = eval_node<Series>(*root_, Env<Series>{u, v, Series(0.0, order), Series(0.0, order)});
    for (int d = 0; d <= r.order(); ++d)
        for (int j = 0; j <= d; ++j)
            if (!std::isfinite(r.coeff(d - j, j)))
                fail(ErrorCode::EvaluationError, "expression or its derivatives are not finite at this point");
    return r;
}

std::complex<double> GraphExpr::eval(std::complex<double> z) const {
    using C = std::complex<double>;
    const C r = eval_node<C>(*root_, Env<C>{C(z.real()), C(z.imag()), z, C(0.0)});
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        fail(ErrorCode::EvaluationError, "expression is not finite at this point");
    return r;
}

GraphExpr parse_graph_expr(const std::string& text, ExprMode mode) {
    Parser p(text, mode);
    return GraphExpr(p.parse(), mode, text);
}

}  // namespace hsurf
