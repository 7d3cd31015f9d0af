#include "hsurf/series.hpp"

#include <sstream>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

constexpr std::array<double, Series::kMaxOrder + 1> kFactorial{1.0, 1.0, 2.0, 6.0, 24.0};

[[noreturn]] void domain(const char* fn, double x) {
    std::ostringstream os;
    os << fn << " undefined at " << x;
    fail(ErrorCode::DomainError, os.str());
}

}  // namespace

Series::Series(double constant, int order) : order_(order) {
    if (order < 0 || order > kMaxOrder) fail(ErrorCode::InvalidArgument, "series order out of range");
    c_[0] = constant;
}

Series Series::variable(double value, int which, int order) {
    Series s(value, order);
    if (order >= 1) s.c_[which == 0 ? index(1, 0) : index(0, 1)] = 1.0;
    return s;
}

double Series::derivative(int i, int j) const { return coeff(i, j) * kFactorial[i] * kFactorial[j]; }

Series Series::diff(int which) const {
    if (order_ == 0) fail(ErrorCode::InvalidArgument, "cannot differentiate an order-0 series");
    Series out(0.0, order_ - 1);
    for (int d = 0; d < order_; ++d)
        for (int j = 0; j <= d; ++j) {
            const int i = d - j;
            out.c_[index(i, j)] = which == 0 ? (i + 1) * c_[index(i + 1, j)] : (j + 1) * c_[index(i, j + 1)];
        }
    return out;
}

Series Series::truncated(int order) const {
    if (order > order_) fail(ErrorCode::InvalidArgument, "cannot raise the order of a series");
    Series out(0.0, order);
    for (int k = 0; k < (order + 1) * (order + 2) / 2; ++k) out.c_[k] = c_[k];
    return out;
}

bool Series::is_constant() const {
    for (int k = 1; k < (order_ + 1) * (order_ + 2) / 2; ++k)
        if (c_[k] != 0.0) return false;
    return true;
}

Series Series::operator-() const {
    Series out = *this;
    for (auto& x : out.c_) x = -x;
    return out;
}

Series& Series::operator+=(const Series& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
}

Series& Series::operator-=(const Series& o) {
    order_ = std::min(order_, o.order_);
    for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
}

Series& Series::operator*=(const Series& o) { return *this = *this * o; }
Series& Series::operator/=(const Series& o) { return *this = *this / o; }

Series Series::compose(const double* coeffs) const {
    Series t = *this;
    t.c_[0] = 0.0;
    Series acc(coeffs[order_], order_);
    for (int k = order_ - 1; k >= 0; --k) {
        acc = acc * t;
        acc.c_[0] += coeffs[k];
    }
    return acc;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }

Series operator*(const Series& a, const Series& b) {
    const int order = std::min(a.order(), b.order());
    Series out(0.0, order);
    for (int d1 = 0; d1 <= order; ++d1)
        for (int j1 = 0; j1 <= d1; ++j1) {
            const double x = a.coeff(d1 - j1, j1);
            if (x == 0.0) continue;
            for (int d2 = 0; d1 + d2 <= order; ++d2)
                for (int j2 = 0; j2 <= d2; ++j2)
                    out.coeff_ref(d1 - j1 + d2 - j2, j1 + j2) += x * b.coeff(d2 - j2, j2);
        }
    return out;
}

Series operator*(Series a, double b) {
    for (int d = 0; d <= a.order(); ++d)
        for (int j = 0; j <= d; ++j) a.coeff_ref(d - j, j) *= b;
    return a;
}

Series operator/(const Series& a, const Series& b) { return a * reciprocal(b); }

Series reciprocal(const Series& a) {
    const double x = a.value();
    if (x == 0.0) domain("division", x);
    double c[Series::kMaxOrder + 1];
    double p = 1.0 / x;
    for (int k = 0; k <= a.order(); ++k) {
        c[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
        p /= x;
    }
    return a.compose(c);
}

Series pow(const Series& a, double p) {
    if (p == std::floor(p) && std::abs(p) < 1e9) return ipow(a, static_cast<int>(p));
    const double x = a.value();
    if (!(x > 0.0)) domain("non-integer power", x);
    double c[Series::kMaxOrder + 1];
    double binom = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        c[k] = binom * std::pow(x, p - k);
        binom *= (p - k) / (k + 1);
    }
    return a.compose(c);
}

Series ipow(const Series& a, int n) {
    if (n < 0) return reciprocal(ipow(a, -n));
    Series result(1.0, a.order());
    Series base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

Series pow(const Series& a, const Series& p) {
    if (p.is_constant()) return pow(a, p.value());
    if (!(a.value() > 0.0)) domain("non-integer power", a.value());
    return exp(p * log(a));
}

Series sqrt(const Series& a) {
    const double x = a.value();
    if (x < 0.0 || (x == 0.0 && a.order() > 0)) domain("sqrt", x);
    if (a.order() == 0) return Series(std::sqrt(x), 0);
    return pow(a, 0.5);
}

Series exp(const Series& a) {
    double c[Series::kMaxOrder + 1];
    const double e = std::exp(a.value());
    for (int k = 0; k <= a.order(); ++k) c[k] = e / kFactorial[k];
    return a.compose(c);
}

Series log(const Series& a) {
    const double x = a.value();
    if (!(x > 0.0)) domain("log", x);
    double c[Series::kMaxOrder + 1];
    c[0] = std::log(x);
    double p = 1.0 / x;
    for (int k = 1; k <= a.order(); ++k) {
        c[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / k;
        p /= x;
    }
    return a.compose(c);
}

Series sin(const Series& a) {
    const double s = std::sin(a.value());
    const double co = std::cos(a.value());
    const double cyc[4] = {s, co, -s, -co};
    double c[Series::kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) c[k] = cyc[k % 4] / kFactorial[k];
    return a.compose(c);
}

Series cos(const Series& a) {
    const double s = std::sin(a.value());
    const double co = std::cos(a.value());
    const double cyc[4] = {co, -s, -co, s};
    double c[Series::kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) c[k] = cyc[k % 4] / kFactorial[k];
    return a.compose(c);
}

Series sinh(const Series& a) {
    const double s = std::sinh(a.value());
    const double ch = std::cosh(a.value());
    double c[Series::kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) c[k] = (k % 2 == 0 ? s : ch) / kFactorial[k];
    return a.compose(c);
}

Series cosh(const Series& a) {
    const double s = std::sinh(a.value());
    const double ch = std::cosh(a.value());
    double c[Series::kMaxOrder + 1];
    for (int k = 0; k <= a.order(); ++k) c[k] = (k % 2 == 0 ? ch : s) / kFactorial[k];
    return a.compose(c);
}

Series tanh(const Series& a) { return sinh(a) / cosh(a); }

Series abs(const Series& a) {
    if (a.value() > 0.0) return a;
    if (a.value() < 0.0) return -a;
    if (a.order() == 0) return a;
    domain("abs (not differentiable)", 0.0);
}

Series asinh(const Series& a) { return log(a + sqrt(a * a + 1.0)); }

}  // namespace hsurf
