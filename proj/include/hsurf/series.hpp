#pragma once

#include <array>
#include <cmath>

namespace hsurf {

/// Truncated bivariate Taylor polynomial in (du, dv) about a point, used as a
/// forward-mode AD scalar. Coefficients are stored by total degree up to
/// kMaxOrder; `order()` is how many of them are meaningful.
class Series {
public:
    static constexpr int kMaxOrder = 4;
    static constexpr int kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

    Series() : Series(0.0) {}
    Series(double constant, int order = kMaxOrder);  // NOLINT: implicit on purpose

    /// The coordinate function u (which = 0) or v (which = 1) expanded at `value`.
    static Series variable(double value, int which, int order = kMaxOrder);

    static constexpr int index(int i, int j) { return (i + j) * (i + j + 1) / 2 + j; }

    int order() const noexcept { return order_; }
    double value() const noexcept { return c_[0]; }
    double coeff(int i, int j) const { return i + j <= order_ ? c_[index(i, j)] : 0.0; }
    double& coeff_ref(int i, int j) { return c_[index(i, j)]; }
    /// Partial derivative d^{i+j} / du^i dv^j at the expansion point.
    double derivative(int i, int j) const;

    /// Partial derivative as a series; the order drops by one.
    Series diff(int which) const;
    Series truncated(int order) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    Series& operator*=(const Series& o);
    Series& operator/=(const Series& o);

    /// Sum_k coeffs[k] (x - x0)^k; the building block of every elementary function.
    Series compose(const double* coeffs) const;

    /// True when every coefficient above degree zero vanishes.
    bool is_constant() const;

private:
    std::array<double, kSize> c_{};
    int order_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Series& a, const Series& b);
Series operator/(const Series& a, const Series& b);
inline Series operator+(Series a, double b) { return a += Series(b, a.order()); }
inline Series operator+(double a, Series b) { return b += Series(a, b.order()); }
inline Series operator-(Series a, double b) { return a -= Series(b, a.order()); }
inline Series operator-(double a, const Series& b) { return Series(a, b.order()) - b; }
Series operator*(Series a, double b);
inline Series operator*(double a, const Series& b) { return b * a; }
inline Series operator/(const Series& a, double b) { return a * (1.0 / b); }
inline Series operator/(double a, const Series& b) { return Series(a, b.order()) / b; }

Series reciprocal(const Series& a);
Series sqrt(const Series& a);
Series exp(const Series& a);
Series log(const Series& a);
Series sin(const Series& a);
Series cos(const Series& a);
Series sinh(const Series& a);
Series cosh(const Series& a);
Series tanh(const Series& a);
Series abs(const Series& a);
Series asinh(const Series& a);
/// Real power; integer exponents accept any nonzero base, others need a positive base.
Series pow(const Series& a, double p);
Series pow(const Series& a, const Series& p);
Series ipow(const Series& a, int n);

}  // namespace hsurf
