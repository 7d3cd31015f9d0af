#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hsurf/ambient.hpp"
#include "hsurf/chart.hpp"
#include "hsurf/expr.hpp"
#include "hsurf/forms.hpp"

namespace hsurf {

/// Space the polar variety of a surface in `space` lives in.
AmbientSpace dual_space(const AmbientSpace& space);

struct PolarPoint {
    Eigen::Vector3d position;     // half-space coordinates in the dual space
    MinkowskiPoint minkowski;     // N on the dual quadric
    std::optional<DeSitterBranch> sheet;  // for de Sitter duals
    double source_eta3 = 0.0;
    double source_K = 0.0;
    std::optional<double> dual_K;        // measured on the dual surface
    std::optional<double> predicted_K;   // curvature_transfer(source_K)
    double volume_ratio = 0.0;           // dV_N / dV_X measured on the dual surface
    double eta3_relation = 0.0;          // eta3 - (N0 - N3)/(X3 - X0)
    bool branch_flag = false;
};

struct PolarOptions {
    /// Raise BranchPoint instead of flagging when the dual curvature is asked
    /// for at a branch point.
    bool require_dual_curvature = false;
};

/// Polar variety of the chart as a chart over the same parameter domain.
/// Exact source charts give exact (AD) dual jets; numeric ones give a
/// numeric dual.
SurfaceChart polar_chart(const SurfaceChart& chart);

/// Minkowski normal N at (u, v) before any sheet normalisation.
Eigen::Vector4d minkowski_normal(const SurfaceChart& chart, double u, double v);

PolarPoint polar_variety(const SurfaceChart& chart, double u, double v, PolarOptions options = {});

enum class TransferDirection { HtoDS, DStoH, DSTimelike };

TransferDirection transfer_direction(const AmbientSpace& source);

/// K/(K+1), K/(1-K) and K/(K-1) respectively.
double curvature_transfer(double K, TransferDirection direction);

/// Distance, up to sign, between the source point and the polar of its polar.
double double_polarity_defect(const SurfaceChart& chart, double u, double v);

enum class GraphDirection { H3toDS3, DS3toH3, DS3toDS3 };

Eigen::Vector3d graph_dualize(double u, double v, double f, double fu, double fv, GraphDirection direction);

/// Image of the graph of f under graph_dualize as a chart in (u, v), with
/// exact jets. Heights and slopes are checked at each evaluation.
SurfaceChart graph_dual_chart(const GraphExpr& f, GraphDirection direction, Domain domain);

/// A target family seen as a height function over the horizontal plane.
struct TargetFamily {
    std::function<Eigen::Vector2d(double x1, double x2)> inverse;  // (x1, x2) -> (U, V)
    std::function<double(double U, double V)> height;
};

struct IsometryFit {
    double theta = 0.0;
    double a = 0.0;
    double b = 0.0;
    double max_distance = 0.0;  // vertical distance after the fit
};

/// Fits the isometry that carries `target` onto `points`, with theta in
/// {pi/2, -pi/2} and (a, b) by damped Gauss-Newton. Returns the better theta.
IsometryFit fit_isometry(const std::vector<Eigen::Vector3d>& points, const TargetFamily& target);

}  // namespace hsurf
