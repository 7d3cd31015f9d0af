#include "hsurf/gaussmaps.hpp"

#include <cmath>
#include <sstream>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

constexpr double kQuadricTolerance = 1e-9;
constexpr double kPoleTolerance = 1e-14;
constexpr double kUnitCircleBand = 1e-9;

double eta_quadric(const Eigen::Vector3d& eta, const AmbientSpace& space) {
    const Eigen::Vector3d eps = space.signature_vector();
    return (eps.array() * eta.array() * eta.array()).sum() - space.normal_sign();
}

}  // namespace

ExtendedComplex stereo_project(const Eigen::Vector3d& eta, const AmbientSpace& space) {
    if (space.dim() != 3) fail(ErrorCode::InvalidArgument, "Gauss maps are defined for surfaces in 3-space");
    if (space.is_timelike()) fail(ErrorCode::InvalidArgument, "no stereographic Gauss map for time-like surfaces");
    const double q = eta_quadric(eta, space);
    if (std::abs(q) > kQuadricTolerance) {
        std::ostringstream os;
        os << "normal misses its quadric by " << q;
        fail(ErrorCode::QuadricViolation, os.str());
    }
    const double d = 1.0 - eta(2);
    if (std::abs(d) < kPoleTolerance) return ExtendedComplex::infinity();
    return {Complex(eta(0), eta(1)) / d};
}

Eigen::Vector3d stereo_unproject(const ExtendedComplex& g, const AmbientSpace& space) {
    if (space.dim() != 3) fail(ErrorCode::InvalidArgument, "Gauss maps are defined for surfaces in 3-space");
    if (space.is_timelike()) fail(ErrorCode::InvalidArgument, "no stereographic Gauss map for time-like surfaces");
    if (g.is_infinite()) return {0.0, 0.0, 1.0};
    const Complex z = *g.value;
    const double r = std::norm(z);
    if (space.is_hyperbolic()) {
        const double d = r + 1.0;
        return {2.0 * z.real() / d, 2.0 * z.imag() / d, (r - 1.0) / d};
    }
    if (std::abs(std::sqrt(r) - 1.0) <= kUnitCircleBand) fail(ErrorCode::UnitCircleSingularity, "|g| = 1");
    const double d = r - 1.0;
    // -(g + conj g)/(|g|^2 - 1), i(g - conj g)/(|g|^2 - 1), (1 + |g|^2)/(|g|^2 - 1)
    return {-2.0 * z.real() / d, -2.0 * z.imag() / d, (1.0 + r) / d};
}

Complex far_gauss_map(const Eigen::Vector3d& x, const ExtendedComplex& g) {
    if (!(x(2) > 0.0)) fail(ErrorCode::NonPositiveHeight, "point outside the half-space");
    if (g.is_infinite()) fail(ErrorCode::InfiniteG, "normal geodesic ends at the point at infinity");
    return Complex(x(0), x(1)) + x(2) * *g.value;
}

Complex hyperbolic_to_de_sitter_label(Complex GH, double eta3) { return eta3 > 0.0 ? -GH : GH; }

EtaBranch eta_branch(double eta3) {
    if (eta3 > 0.0) return EtaBranch::EtaPos;
    if (eta3 < 0.0) return EtaBranch::EtaNeg;
    return EtaBranch::Unbranched;
}

GaussData gauss_data(const Eigen::Vector3d& x, const Eigen::Vector3d& eta, const AmbientSpace& space) {
    GaussData d;
    d.eta = eta;
    d.branch = space.is_timelike() ? EtaBranch::Unbranched : eta_branch(eta(2));
    if (space.is_timelike()) {
        d.g = ExtendedComplex::infinity();
        d.G = ExtendedComplex::infinity();
        return d;
    }
    d.g = stereo_project(eta, space);
    d.G = d.g.is_infinite() ? ExtendedComplex::infinity() : ExtendedComplex{far_gauss_map(x, d.g)};
    return d;
}

}  // namespace hsurf
