#include "hsurf/chart.hpp"

#include <cmath>
#include <sstream>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

constexpr double kImmersionTolerance = 1e-12;

double step_scale(double u, double v) { return std::max({1.0, std::abs(u), std::abs(v)}); }

}  // namespace

Eigen::VectorXd Jet2::second(int i, int j) const {
    Eigen::VectorXd out(dim());
    for (int a = 0; a < dim(); ++a) out(a) = duu[a](i, j);
    return out;
}

TaylorMap taylor_from_formula(std::function<std::array<Series, 3>(const Series&, const Series&)> f) {
    return [f = std::move(f)](double u, double v, int order) {
        return f(Series::variable(u, 0, order), Series::variable(v, 1, order));
    };
}

SurfaceChart SurfaceChart::closed_form(std::string name, TaylorMap map, Domain domain, AmbientSpace space) {
    SurfaceChart c(std::move(name), EvaluatorKind::ClosedForm, domain, space);
    c.taylor_ = std::move(map);
    return c;
}

SurfaceChart SurfaceChart::graph(const GraphExpr& f, Domain domain, AmbientSpace space) {
    if (f.mode() != ExprMode::Graph) fail(ErrorCode::InvalidArgument, "graph charts need a real expression in u, v");
    SurfaceChart c("graph:" + f.source(), EvaluatorKind::Graph, domain, space);
    c.taylor_ = taylor_from_formula([f](const Series& u, const Series& v) {
        return std::array<Series, 3>{u, v, f.eval(u, v)};
    });
    return c;
}

SurfaceChart SurfaceChart::numeric(std::string name, PositionMap map, Domain domain, AmbientSpace space) {
    SurfaceChart c(std::move(name), EvaluatorKind::Numeric, domain, space);
    c.position_ = std::move(map);
    return c;
}

SurfaceChart SurfaceChart::with_orientation(std::optional<double> sign) const {
    SurfaceChart c = *this;
    if (sign && *sign != 1.0 && *sign != -1.0) fail(ErrorCode::InvalidArgument, "orientation must be +1 or -1");
    c.orientation_ = sign;
    return c;
}

SurfaceChart SurfaceChart::with_sheet(DeSitterBranch sheet) const {
    SurfaceChart c = *this;
    c.sheet_ = sheet;
    return c;
}

SurfaceChart SurfaceChart::with_domain(Domain domain) const {
    SurfaceChart c = *this;
    c.domain_ = domain;
    return c;
}

std::array<Series, 3> SurfaceChart::taylor(double u, double v, int order) const {
    if (!exact()) fail(ErrorCode::InvalidArgument, "numeric charts have no exact expansion");
    return taylor_(u, v, order);
}

Eigen::Vector3d SurfaceChart::position(double u, double v) const {
    if (exact()) {
        const auto s = taylor_(u, v, 0);
        return {s[0].value(), s[1].value(), s[2].value()};
    }
    return position_(u, v);
}

double SurfaceChart::first_step(double u, double v) { return 1e-5 * step_scale(u, v); }
double SurfaceChart::second_step(double u, double v) { return 1e-3 * step_scale(u, v); }

Jet2 jet_from_taylor(const std::array<Series, 3>& x) {
    Jet2 j;
    j.x.resize(3);
    j.du.resize(3, 2);
    j.duu.assign(3, Eigen::MatrixXd(2, 2));
    for (int a = 0; a < 3; ++a) {
        j.x(a) = x[a].value();
        j.du(a, 0) = x[a].derivative(1, 0);
        j.du(a, 1) = x[a].derivative(0, 1);
        j.duu[a](0, 0) = x[a].derivative(2, 0);
        j.duu[a](0, 1) = j.duu[a](1, 0) = x[a].derivative(1, 1);
        j.duu[a](1, 1) = x[a].derivative(0, 2);
    }
    return j;
}

namespace {

Jet2 numeric_jet(const SurfaceChart& chart, double u, double v) {
    const double h = SurfaceChart::first_step(u, v);
    const double k = SurfaceChart::second_step(u, v);
    auto P = [&](double a, double b) { return chart.position(a, b); };
    Jet2 j;
    j.x = P(u, v);
    j.du.resize(3, 2);
    j.du.col(0) = (P(u + h, v) - P(u - h, v)) / (2 * h);
    j.du.col(1) = (P(u, v + h) - P(u, v - h)) / (2 * h);
    const Eigen::Vector3d c = P(u, v);
    const Eigen::Vector3d xuu = (P(u + k, v) - 2 * c + P(u - k, v)) / (k * k);
    const Eigen::Vector3d xvv = (P(u, v + k) - 2 * c + P(u, v - k)) / (k * k);
    const Eigen::Vector3d xuv = (P(u + k, v + k) - P(u + k, v - k) - P(u - k, v + k) + P(u - k, v - k)) / (4 * k * k);
    j.duu.assign(3, Eigen::MatrixXd(2, 2));
    for (int a = 0; a < 3; ++a) {
        j.duu[a](0, 0) = xuu(a);
        j.duu[a](0, 1) = j.duu[a](1, 0) = xuv(a);
        j.duu[a](1, 1) = xvv(a);
    }
    return j;
}

}  // namespace

Jet2 jet2_eval(const SurfaceChart& chart, double u, double v) {
    const double margin = chart.exact() ? 0.0 : 2.0 * SurfaceChart::second_step(u, v);
    if (!chart.domain().interior(u, v, margin)) {
        std::ostringstream os;
        os << "(" << u << ", " << v << ") is not interior to the domain of " << chart.name();
        fail(ErrorCode::OutsideDomain, os.str());
    }
    Jet2 j = chart.exact() ? jet_from_taylor(chart.taylor(u, v, 2)) : numeric_jet(chart, u, v);
    if (!(j.x(2) > 0.0)) {
        std::ostringstream os;
        os << "height " << j.x(2) << " at (" << u << ", " << v << ")";
        fail(ErrorCode::HeightViolation, os.str());
    }
    const Eigen::Vector3d eps = chart.space().signature_vector();
    const double h2 = j.x(2) * j.x(2);
    Eigen::Matrix2d I;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) I(a, b) = (j.du.col(a).array() * j.du.col(b).array() * eps.array()).sum() / h2;
    if (std::abs(I.determinant()) < kImmersionTolerance) {
        std::ostringstream os;
        os << "first partials are degenerate at (" << u << ", " << v << ")";
        fail(ErrorCode::NonImmersed, os.str());
    }
    return j;
}

GraphJet graph_jet(const GraphExpr& f, double u, double v) {
    const Series s = f.eval(Series::variable(u, 0, 2), Series::variable(v, 1, 2));
    return {s.value(), s.derivative(1, 0), s.derivative(0, 1), s.derivative(2, 0), s.derivative(1, 1), s.derivative(0, 2)};
}

GraphJet graph_jet_from_parametric(const Jet2& jet) {
    Eigen::Matrix2d J;
    J << jet.du(0, 0), jet.du(0, 1), jet.du(1, 0), jet.du(1, 1);
    if (std::abs(J.determinant()) < kImmersionTolerance)
        fail(ErrorCode::NonImmersed, "surface is vertical here and is not a local graph");
    const Eigen::Matrix2d Jinv = J.inverse();
    const Eigen::Vector2d dz(jet.du(2, 0), jet.du(2, 1));
    const Eigen::Vector2d grad = Jinv.transpose() * dz;
    const Eigen::Matrix2d hess =
        Jinv.transpose() * (jet.duu[2] - grad(0) * jet.duu[0] - grad(1) * jet.duu[1]) * Jinv;
    return {jet.x(2), grad(0), grad(1), hess(0, 0), hess(0, 1), hess(1, 1)};
}

}  // namespace hsurf
