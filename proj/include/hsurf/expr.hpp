#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "hsurf/series.hpp"

namespace hsurf {

enum class ExprMode {
    Graph,    // variables u, v
    Complex,  // adds z, the constant i and conj, re, im
};

struct ExprNode {
    enum class Kind { Number, Variable, Constant, Negate, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double number = 0.0;
    std::string name;  // variable, constant or function name
    std::vector<std::shared_ptr<const ExprNode>> args;

    bool operator==(const ExprNode& other) const;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

/// Parsed expression f(u, v) (or f(z) in complex mode). Immutable.
class GraphExpr {
public:
    GraphExpr(ExprPtr root, ExprMode mode, std::string source);

    const ExprNode& root() const { return *root_; }
    ExprMode mode() const noexcept { return mode_; }
    const std::string& source() const noexcept { return source_; }

    /// Number of edges on the longest root-to-leaf path.
    int depth() const;
    /// Fully parenthesized text that parses back to the same tree.
    std::string unparse() const;

    double eval(double u, double v) const;
    Series eval(const Series& u, const Series& v) const;
    std::complex<double> eval(std::complex<double> z) const;

    bool operator==(const GraphExpr& other) const { return *root_ == *other.root_; }

private:
    ExprPtr root_;
    ExprMode mode_;
    std::string source_;
};

GraphExpr parse_graph_expr(const std::string& text, ExprMode mode = ExprMode::Graph);

}  // namespace hsurf
