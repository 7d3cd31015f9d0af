#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hsurf/ambient.hpp"
#include "hsurf/chart.hpp"

namespace hsurf {

struct ShapeSpectrum {
    enum class Kind { Real, Complexified, NotComputed };
    Kind kind = Kind::NotComputed;
    std::vector<double> values;  // ascending principal curvatures when Real
};

struct FormBundle {
    Eigen::VectorXd eta;   // normal components in the left-invariant frame
    Eigen::MatrixXd deta;  // (n+1) x n, d eta / d u_i
    Eigen::MatrixXd I, II, III, IV;
    double H = 0.0;
    double K = 0.0;  // Gauss equation; NaN for n != 2
    ShapeSpectrum spectrum;
    AmbientSpace space = AmbientSpace::hyperbolic();

    double eta_top() const { return eta(eta.size() - 1); }
};

/// Unit normal components eta_A of the hypersurface with tangent columns `du`,
/// normalised to <N, N> = normal_sign and oriented by `orientation` if given,
/// else so that eta_{n+1} >= 0.
Eigen::VectorXd normal_eta(const Eigen::MatrixXd& du, const AmbientSpace& space, std::optional<double> orientation);

FormBundle fundamental_forms(const Jet2& jet, const AmbientSpace& space, std::optional<double> orientation = {});
FormBundle fundamental_forms(const SurfaceChart& chart, double u, double v);

enum class Classification { Conformal, NotConformal, TotallyGeodesicDegenerate, UmbilicPoint };

const char* to_string(Classification c);

struct ConformalityReport {
    bool is_conformal = false;
    std::optional<double> rho;
    double residual = 0.0;
    Classification classification = Classification::NotConformal;
    bool umbilic = false;  // coincident principal curvatures
};

struct ConformalityOptions {
    double tol = 1e-8;
    /// Report umbilic points as UmbilicPoint instead of classifying them.
    bool umbilic_as_class = false;
};

ConformalityReport conformality_test(const FormBundle& bundle, ConformalityOptions options = {});

/// Frobenius norm of IV - (eta^2 I + 2 s eta II + III) with the sign s of the
/// ambient and causal class.
double obata_identity_residual(const FormBundle& bundle);

/// (c, sigma) in K = c + sigma det(II)/det(I).
std::pair<double, double> gauss_constants(const AmbientSpace& space);

/// Curvature c + sigma * eta_top^2 that a conformal normal Gauss map forces.
double conformal_curvature(const FormBundle& bundle);

/// 2(H - eta) in H^3 and for time-like surfaces, 2(H + eta) for space-like de Sitter.
double expected_rho(const FormBundle& bundle);

/// IV from central differences of eta over the parameter plane.
Eigen::Matrix2d fourth_form_direct(const SurfaceChart& chart, double u, double v);

/// Brioschi formula on the induced metric, metric derivatives by central differences.
double intrinsic_gauss_curvature(const SurfaceChart& chart, double u, double v);

}  // namespace hsurf
