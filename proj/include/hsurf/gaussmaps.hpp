#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "hsurf/ambient.hpp"

namespace hsurf {

using Complex = std::complex<double>;

/// Point of the Riemann sphere C u {infinity}.
struct ExtendedComplex {
    std::optional<Complex> value;  // empty means infinity

    static ExtendedComplex infinity() { return {std::nullopt}; }
    bool is_infinite() const { return !value.has_value(); }
};

enum class EtaBranch { EtaPos, EtaNeg, Unbranched };

struct GaussData {
    Eigen::Vector3d eta;
    ExtendedComplex g;
    ExtendedComplex G;
    EtaBranch branch;
};

/// g = (eta1 + i eta2) / (1 - eta3). Checks the quadric of eta for `space`.
ExtendedComplex stereo_project(const Eigen::Vector3d& eta, const AmbientSpace& space);

/// Inverse of stereo_project onto S^2 (H^3) or H^2(-1) (space-like S_1^3).
Eigen::Vector3d stereo_unproject(const ExtendedComplex& g, const AmbientSpace& space);

/// G = x1 + i x2 + x3 g.
Complex far_gauss_map(const Eigen::Vector3d& x, const ExtendedComplex& g);

/// G^S from G^H: minus it when eta3 > 0, itself when eta3 < 0.
Complex hyperbolic_to_de_sitter_label(Complex GH, double eta3);

EtaBranch eta_branch(double eta3);

/// Everything above at one surface point; G is infinite when g is.
GaussData gauss_data(const Eigen::Vector3d& x, const Eigen::Vector3d& eta, const AmbientSpace& space);

}  // namespace hsurf
