#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "hsurf/errors.hpp"
#include "hsurf/expr.hpp"

using namespace hsurf;

TEST(Expr, TranslationalGraphDepthAndValue) {
    const GraphExpr e = parse_graph_expr("sqrt(1+u^2) + sqrt(1+v^2)");
    EXPECT_EQ(e.depth(), 4);
    EXPECT_DOUBLE_EQ(e.eval(0.0, 0.0), 2.0);
}

TEST(Expr, CorollaryGraphValue) {
    const GraphExpr e = parse_graph_expr("u*v/sqrt(1+v^2)");
    EXPECT_DOUBLE_EQ(e.eval(0.0, 0.0), 0.0);
    EXPECT_NEAR(e.eval(0.5, 2.0), 1.0 / std::sqrt(5.0), 1e-15);
}

TEST(Expr, UnknownIdentifierReportsOffset) {
    try {
        parse_graph_expr("1 + sinh(w)");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), ErrorCode::ParseError);
        EXPECT_EQ(e.offset(), 9u);
        EXPECT_FALSE(e.expected().empty());
    }
}

TEST(Expr, SyntaxErrors) {
    EXPECT_THROW(parse_graph_expr("u +"), ParseError);
    EXPECT_THROW(parse_graph_expr("(u"), ParseError);
    EXPECT_THROW(parse_graph_expr("u v"), ParseError);
    EXPECT_THROW(parse_graph_expr(""), ParseError);
    EXPECT_THROW(parse_graph_expr("z + 1"), ParseError);  // z only in complex mode
}

TEST(Expr, Precedence) {
    EXPECT_DOUBLE_EQ(parse_graph_expr("2^3^2").eval(0, 0), 512.0);
    EXPECT_DOUBLE_EQ(parse_graph_expr("-2^2").eval(0, 0), -4.0);
    EXPECT_DOUBLE_EQ(parse_graph_expr("1 - 2 - 3").eval(0, 0), -4.0);
    EXPECT_DOUBLE_EQ(parse_graph_expr("8 / 4 / 2").eval(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(parse_graph_expr("1 + 2 * 3").eval(0, 0), 7.0);
    EXPECT_DOUBLE_EQ(parse_graph_expr("  u*  v ").eval(2, 3), 6.0);
}

class UnparseFixedPoint : public ::testing::TestWithParam<const char*> {};

TEST_P(UnparseFixedPoint, ParsesBackToSameTree) {
    const GraphExpr a = parse_graph_expr(GetParam());
    const GraphExpr b = parse_graph_expr(a.unparse());
    EXPECT_TRUE(a == b) << a.unparse();
    EXPECT_EQ(a.unparse(), b.unparse());
    EXPECT_DOUBLE_EQ(a.eval(0.3, 0.7), b.eval(0.3, 0.7));
}

INSTANTIATE_TEST_SUITE_P(Samples, UnparseFixedPoint,
                         ::testing::Values("sqrt(1+u^2) + sqrt(1+v^2)", "-(1*(-1) + u*v)/sqrt(1 + v^2)", "2^3^2",
                                           "-u^2", "u - (v - 1)", "exp(sin(u))*cosh(v)/(1+abs(u-v))",
                                           "0.1 + 1e-3*u", "pi*u + e"));

TEST(Expr, DoubleDomainErrors) {
    EXPECT_THROW(parse_graph_expr("sqrt(u)").eval(-1.0, 0.0), GeometryError);
    EXPECT_THROW(parse_graph_expr("log(u)").eval(0.0, 0.0), GeometryError);
    EXPECT_THROW(parse_graph_expr("1/u").eval(0.0, 0.0), GeometryError);
    EXPECT_THROW(parse_graph_expr("u^0.5").eval(-2.0, 0.0), GeometryError);
    EXPECT_NO_THROW(parse_graph_expr("u^2").eval(-2.0, 0.0));
}

TEST(Expr, ComplexMode) {
    const GraphExpr e = parse_graph_expr("z*conj(z) + i*re(z) - im(z)", ExprMode::Complex);
    const std::complex<double> z(1.5, -0.5);
    const std::complex<double> want = z * std::conj(z) + std::complex<double>(0, 1) * z.real() - z.imag();
    EXPECT_NEAR(std::abs(e.eval(z) - want), 0.0, 1e-14);
}
