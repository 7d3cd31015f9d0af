#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsurf/ambient.hpp"
#include "hsurf/expr.hpp"
#include "hsurf/series.hpp"

namespace hsurf {

/// Position and first/second partials of an immersion at one parameter point.
struct Jet2 {
    Eigen::VectorXd x;               // n+1
    Eigen::MatrixXd du;              // (n+1) x n, column i = x_{u_i}
    std::vector<Eigen::MatrixXd> duu;  // per ambient coordinate A: n x n matrix of x_A,{u_i u_j}

    int params() const { return static_cast<int>(du.cols()); }
    int dim() const { return static_cast<int>(x.size()); }
    /// Second partial x_{u_i u_j} as an ambient vector.
    Eigen::VectorXd second(int i, int j) const;
};

struct Domain {
    double u0, u1, v0, v1;

    bool interior(double u, double v, double margin = 0.0) const {
        return u > u0 + margin && u < u1 - margin && v > v0 + margin && v < v1 - margin;
    }
    double cu() const { return 0.5 * (u0 + u1); }
    double cv() const { return 0.5 * (v0 + v1); }
};

enum class EvaluatorKind { ClosedForm, Graph, Numeric };

/// Taylor expansion of the position about (u, v) to the given order.
using TaylorMap = std::function<std::array<Series, 3>(double u, double v, int order)>;
using PositionMap = std::function<Eigen::Vector3d(double u, double v)>;

/// Wraps a formula written over Series arguments into a TaylorMap.
TaylorMap taylor_from_formula(std::function<std::array<Series, 3>(const Series&, const Series&)> f);

class SurfaceChart {
public:
    static SurfaceChart closed_form(std::string name, TaylorMap map, Domain domain, AmbientSpace space);
    static SurfaceChart graph(const GraphExpr& f, Domain domain, AmbientSpace space);
    static SurfaceChart numeric(std::string name, PositionMap map, Domain domain, AmbientSpace space);

    EvaluatorKind kind() const noexcept { return kind_; }
    bool exact() const noexcept { return kind_ != EvaluatorKind::Numeric; }
    const std::string& name() const noexcept { return name_; }
    const Domain& domain() const noexcept { return domain_; }
    const AmbientSpace& space() const noexcept { return space_; }

    /// Sign applied to the raw cross-product normal in place of the
    /// eta_{n+1} >= 0 rule.
    std::optional<double> orientation() const noexcept { return orientation_; }
    SurfaceChart with_orientation(std::optional<double> sign) const;

    /// Component of the de Sitter quadric this chart is embedded in.
    DeSitterBranch sheet() const noexcept { return sheet_; }
    SurfaceChart with_sheet(DeSitterBranch sheet) const;
    SurfaceChart with_domain(Domain domain) const;

    /// Exact Taylor expansion; only for ClosedForm and Graph charts.
    std::array<Series, 3> taylor(double u, double v, int order) const;
    Eigen::Vector3d position(double u, double v) const;

    /// Step sizes of the Numeric evaluator at (u, v).
    static double first_step(double u, double v);
    static double second_step(double u, double v);

private:
    SurfaceChart(std::string name, EvaluatorKind kind, Domain domain, AmbientSpace space)
        : name_(std::move(name)), kind_(kind), domain_(domain), space_(space) {}

    std::string name_;
    EvaluatorKind kind_;
    Domain domain_;
    AmbientSpace space_;
    TaylorMap taylor_;
    PositionMap position_;
    std::optional<double> orientation_;
    DeSitterBranch sheet_ = DeSitterBranch::Minus;
};

/// Two-jet of the chart at (u, v). Checks the domain, the height and the
/// rank of the first partials.
Jet2 jet2_eval(const SurfaceChart& chart, double u, double v);

/// Jet from a Taylor expansion of order >= 2 (no checks).
Jet2 jet_from_taylor(const std::array<Series, 3>& x);

/// Value and derivatives of a scalar graph function at a point.
struct GraphJet {
    double f, fu, fv, fuu, fuv, fvv;
};

GraphJet graph_jet(const GraphExpr& f, double u, double v);

/// Treats the parametric surface through `jet` as a local graph
/// x3 = F(x1, x2) and returns F's jet at (x1, x2).
GraphJet graph_jet_from_parametric(const Jet2& jet);

}  // namespace hsurf
