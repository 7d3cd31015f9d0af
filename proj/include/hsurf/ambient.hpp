#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsurf/errors.hpp"

namespace hsurf {

enum class SpaceKind { Hyperbolic, DeSitter };
enum class CausalClass { SpaceLike, TimeLike };

/// Component of the de Sitter quadric covered by the half-space chart:
/// Minus is X0 - X3 < 0, Plus is X0 - X3 > 0.
enum class DeSitterBranch { Minus, Plus };

inline double branch_sign(DeSitterBranch b) { return b == DeSitterBranch::Plus ? 1.0 : -1.0; }

/// Upper half-space model of H^{n+1} or S_1^{n+1} together with the causal
/// class of the hypersurfaces we put in it.
class AmbientSpace {
public:
    static AmbientSpace hyperbolic(int dim = 3);
    static AmbientSpace de_sitter(int dim = 3, CausalClass causal = CausalClass::SpaceLike);

    SpaceKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    int params() const noexcept { return dim_ - 1; }
    CausalClass causal_class() const noexcept { return causal_; }

    /// Sign epsilon_A of axis A (zero based).
    double signature(int axis) const;
    Eigen::VectorXd signature_vector() const;

    /// <N, N> for the unit normal of a hypersurface of this causal class.
    double normal_sign() const noexcept;

    bool is_hyperbolic() const noexcept { return kind_ == SpaceKind::Hyperbolic; }
    bool is_timelike() const noexcept { return causal_ == CausalClass::TimeLike; }

    /// Short name used on the command line: h3, ds3, ds3-timelike (dimension
    /// suffix added when dim != 3).
    std::string name() const;

    bool operator==(const AmbientSpace& other) const = default;

private:
    AmbientSpace(SpaceKind kind, int dim, CausalClass causal) : kind_(kind), dim_(dim), causal_(causal) {}

    SpaceKind kind_;
    int dim_;
    CausalClass causal_;
};

/// Point of the half-space model; the last coordinate is the height.
struct HalfSpacePoint {
    Eigen::VectorXd coords;

    double height() const { return coords(coords.size() - 1); }
};

enum class Quadric { Hyperbolic, DeSitter };

struct MinkowskiPoint {
    Eigen::Vector4d coords;  // (X0, X1, X2, X3)
    Quadric sheet;

    /// -X0^2 + X1^2 + X2^2 + X3^2 minus the quadric's constant.
    double quadric_residual() const;
};

inline double lorentz_dot(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    return -a(0) * b(0) + a(1) * b(1) + a(2) * b(2) + a(3) * b(3);
}

Eigen::MatrixXd metric_at(const AmbientSpace& space, const Eigen::VectorXd& p);

/// Levi-Civita connection of the conformally flat half-space metric.
class Christoffel {
public:
    Christoffel(int dim, double height, const AmbientSpace& space);

    int dim() const noexcept { return dim_; }
    /// Gamma^a_{bc}, zero based.
    double operator()(int a, int b, int c) const { return data_[(a * dim_ + b) * dim_ + c]; }

    /// Gamma^a_{bc} v^b w^c for every a.
    Eigen::VectorXd contract(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;

private:
    int dim_;
    std::vector<double> data_;
};

Christoffel christoffel_at(const AmbientSpace& space, const Eigen::VectorXd& p);

/// Half-space -> Minkowski. De Sitter points need the component to land on.
MinkowskiPoint to_minkowski(const AmbientSpace& space, const Eigen::Vector3d& x,
                            DeSitterBranch branch = DeSitterBranch::Minus);

struct HalfSpaceImage {
    Eigen::Vector3d x;
    std::optional<DeSitterBranch> branch;  // set for de Sitter points
};

/// Minkowski -> half-space; rejects points off their quadric and the set
/// X0 = X3 of the de Sitter quadric.
HalfSpaceImage to_half_space(const MinkowskiPoint& p);

/// Rotation by theta about the vertical axis followed by the horizontal shift (a, b).
Eigen::Vector3d isometry_shift(const Eigen::Vector3d& p, double theta, double a, double b);

namespace detail {

// Generic versions of the model conversions, templated so that the polar
// variety can be pushed through them with Taylor-series scalars.

template <class T>
std::array<T, 4> half_to_minkowski(SpaceKind kind, const std::array<T, 3>& x, double sheet) {
    const T r = x[0] * x[0] + x[1] * x[1];
    const T h2 = x[2] * x[2];
    if (kind == SpaceKind::Hyperbolic) {
        return {(r + h2 + 1.0) / (2.0 * x[2]), x[0] / x[2], x[1] / x[2], (r + h2 - 1.0) / (2.0 * x[2])};
    }
    return {sheet * (1.0 + r - h2) / (2.0 * x[2]), x[0] / x[2], x[1] / x[2], sheet * (r - h2 - 1.0) / (2.0 * x[2])};
}

/// Pushforward of the half-space vector x3 * sum_A eta_A d/dx_A through the
/// chart map into Minkowski space.
template <class T>
std::array<T, 4> pushforward_normal(SpaceKind kind, const std::array<T, 3>& x, const std::array<T, 3>& eta,
                                    double sheet) {
    const T& h = x[2];
    const T r = x[0] * x[0] + x[1] * x[1];
    const T h2 = h * h;
    // Jacobian rows d X_a / d x_b, already multiplied by x3.
    std::array<std::array<T, 3>, 4> J;
    const T s = kind == SpaceKind::Hyperbolic ? T(1.0) : T(sheet);
    J[1] = {T(1.0), T(0.0), -x[0] / h};
    J[2] = {T(0.0), T(1.0), -x[1] / h};
    if (kind == SpaceKind::Hyperbolic) {
        J[0] = {x[0], x[1], (h2 - r - 1.0) / (2.0 * h)};
        J[3] = {x[0], x[1], (h2 - r + 1.0) / (2.0 * h)};
    } else {
        J[0] = {s * x[0], s * x[1], s * (-h2 - r - 1.0) / (2.0 * h)};
        J[3] = {s * x[0], s * x[1], s * (-h2 - r + 1.0) / (2.0 * h)};
    }
    std::array<T, 4> out;
    for (int a = 0; a < 4; ++a) out[a] = J[a][0] * eta[0] + J[a][1] * eta[1] + J[a][2] * eta[2];
    return out;
}

/// Minkowski -> half-space without validation; divides by |X0 - X3|.
template <class T>
std::array<T, 3> minkowski_to_half(const std::array<T, 4>& X, double gap_sign) {
    const T gap = gap_sign * (X[0] - X[3]);
    return {X[1] / gap, X[2] / gap, T(1.0) / gap};
}

}  // namespace detail

}  // namespace hsurf
