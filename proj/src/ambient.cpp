#include "hsurf/ambient.hpp"

#include <sstream>

namespace hsurf {

namespace {

constexpr double kDegenerateGap = 1e-12;
constexpr double kQuadricTolerance = 1e-9;

void require_height(const Eigen::VectorXd& p) {
    if (p.size() < 2) fail(ErrorCode::InvalidArgument, "half-space point needs at least two coordinates");
    if (!(p(p.size() - 1) > 0.0)) {
        std::ostringstream os;
        os << "height " << p(p.size() - 1) << " is not positive";
        fail(ErrorCode::NonPositiveHeight, os.str());
    }
}

}  // namespace

AmbientSpace AmbientSpace::hyperbolic(int dim) {
    if (dim < 3) fail(ErrorCode::InvalidArgument, "ambient dimension must be at least 3");
    return AmbientSpace(SpaceKind::Hyperbolic, dim, CausalClass::SpaceLike);
}

AmbientSpace AmbientSpace::de_sitter(int dim, CausalClass causal) {
    if (dim < 3) fail(ErrorCode::InvalidArgument, "ambient dimension must be at least 3");
    return AmbientSpace(SpaceKind::DeSitter, dim, causal);
}

double AmbientSpace::signature(int axis) const {
    if (axis < 0 || axis >= dim_) fail(ErrorCode::InvalidArgument, "axis out of range");
    if (kind_ == SpaceKind::DeSitter && axis == dim_ - 1) return -1.0;
    return 1.0;
}

Eigen::VectorXd AmbientSpace::signature_vector() const {
    Eigen::VectorXd eps = Eigen::VectorXd::Ones(dim_);
    if (kind_ == SpaceKind::DeSitter) eps(dim_ - 1) = -1.0;
    return eps;
}

double AmbientSpace::normal_sign() const noexcept {
    return (kind_ == SpaceKind::DeSitter && causal_ == CausalClass::SpaceLike) ? -1.0 : 1.0;
}

std::string AmbientSpace::name() const {
    std::string base = kind_ == SpaceKind::Hyperbolic ? "h" : "ds";
    base += std::to_string(dim_);
    if (causal_ == CausalClass::TimeLike) base += "-timelike";
    return base;
}

double MinkowskiPoint::quadric_residual() const {
    const double q = lorentz_dot(coords, coords);
    return sheet == Quadric::Hyperbolic ? q + 1.0 : q - 1.0;
}

Eigen::MatrixXd metric_at(const AmbientSpace& space, const Eigen::VectorXd& p) {
    if (p.size() != space.dim()) fail(ErrorCode::InvalidArgument, "point dimension does not match the space");
    require_height(p);
    const double h = p(p.size() - 1);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(space.dim(), space.dim());
    for (int a = 0; a < space.dim(); ++a) g(a, a) = space.signature(a) / (h * h);
    return g;
}

Christoffel::Christoffel(int dim, double height, const AmbientSpace& space)
    : dim_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {
    const int t = dim - 1;
    auto at = [&](int a, int b, int c) -> double& { return data_[(a * dim_ + b) * dim_ + c]; };
    for (int a = 0; a < t; ++a) {
        at(a, a, t) = -1.0 / height;
        at(a, t, a) = -1.0 / height;
        at(t, a, a) = space.signature(a) * space.signature(t) / height;
    }
    at(t, t, t) = -1.0 / height;
}

Eigen::VectorXd Christoffel::contract(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < dim_; ++b)
            for (int c = 0; c < dim_; ++c) out(a) += (*this)(a, b, c) * v(b) * w(c);
    return out;
}

Christoffel christoffel_at(const AmbientSpace& space, const Eigen::VectorXd& p) {
    if (p.size() != space.dim()) fail(ErrorCode::InvalidArgument, "point dimension does not match the space");
    require_height(p);
    return Christoffel(space.dim(), p(p.size() - 1), space);
}

MinkowskiPoint to_minkowski(const AmbientSpace& space, const Eigen::Vector3d& x, DeSitterBranch branch) {
    if (space.dim() != 3) fail(ErrorCode::InvalidArgument, "Minkowski model conversion is three-dimensional");
    require_height(x);
    const std::array<double, 3> xa{x(0), x(1), x(2)};
    const auto X = detail::half_to_minkowski(space.kind(), xa, branch_sign(branch));
    return MinkowskiPoint{Eigen::Vector4d(X[0], X[1], X[2], X[3]),
                          space.is_hyperbolic() ? Quadric::Hyperbolic : Quadric::DeSitter};
}

HalfSpaceImage to_half_space(const MinkowskiPoint& p) {
    const Eigen::Vector4d& X = p.coords;
    if (std::abs(p.quadric_residual()) > kQuadricTolerance) {
        std::ostringstream os;
        os << "point misses its quadric by " << p.quadric_residual();
        fail(ErrorCode::QuadricViolation, os.str());
    }
    const double gap = X(0) - X(3);
    if (p.sheet == Quadric::Hyperbolic) {
        if (!(X(0) > 0.0)) fail(ErrorCode::QuadricViolation, "hyperboloid point is on the lower sheet");
        return {Eigen::Vector3d(X(1) / gap, X(2) / gap, 1.0 / gap), std::nullopt};
    }
    if (std::abs(gap) < kDegenerateGap) fail(ErrorCode::DegenerateSet, "X0 = X3: point is not covered by the half-space chart");
    const double m = std::abs(gap);
    return {Eigen::Vector3d(X(1) / m, X(2) / m, 1.0 / m), gap > 0.0 ? DeSitterBranch::Plus : DeSitterBranch::Minus};
}

Eigen::Vector3d isometry_shift(const Eigen::Vector3d& p, double theta, double a, double b) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {p(0) * c - p(1) * s + a, p(0) * s + p(1) * c + b, p(2)};
}

}  // namespace hsurf
