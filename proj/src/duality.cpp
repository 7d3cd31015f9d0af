#include "hsurf/duality.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

constexpr double kEquatorial = 1e-12;
constexpr double kBranchK = 1e-6;
constexpr double kBranchDetII = 1e-10;

double val(double x) { return x; }
double val(const Series& x) { return x.value(); }

template <class T>
struct PolarResult {
    std::array<T, 4> N;  // after moving to the upper sheet for hyperbolic duals
    std::array<T, 3> y;
    T eta3;
    double gap_sign;
};

/// Unit normal from the tangent frame, pushed to Minkowski space and read
/// back in the dual half-space chart.
template <class T>
PolarResult<T> polar_from_frame(const AmbientSpace& space, double sheet, std::optional<double> orientation,
                                const std::array<T, 3>& x, const std::array<T, 3>& xu, const std::array<T, 3>& xv) {
    using std::abs;
    using std::sqrt;
    const double e3 = space.signature(2);
    std::array<T, 3> w = {xu[1] * xv[2] - xu[2] * xv[1], xu[2] * xv[0] - xu[0] * xv[2], xu[0] * xv[1] - xu[1] * xv[0]};
    w[2] = e3 * w[2];
    const T q = w[0] * w[0] + w[1] * w[1] + e3 * w[2] * w[2];
    if (val(q) == 0.0 || (val(q) > 0.0) != (space.normal_sign() > 0.0))
        fail(ErrorCode::WrongCausalClass, "normal has the wrong causal character");
    const T norm = sqrt(val(q) > 0.0 ? q : -q);
    double sign;
    if (orientation) {
        sign = *orientation;
    } else {
        const double top = val(w[2]) / val(norm);
        if (abs(top) <= kEquatorial) fail(ErrorCode::OrientationUndefined, "eta3 vanishes and no orientation was given");
        sign = top > 0.0 ? 1.0 : -1.0;
    }
    const std::array<T, 3> eta = {sign * w[0] / norm, sign * w[1] / norm, sign * w[2] / norm};
    if (abs(val(eta[2])) < kEquatorial)
        fail(ErrorCode::EquatorialNormal, "eta3 = 0: the polar point lies in X0 = X3");

    PolarResult<T> r{detail::pushforward_normal(space.kind(), x, eta, sheet), {}, eta[2], 1.0};
    if (dual_space(space).is_hyperbolic()) {
        if (val(r.N[0]) < 0.0)
            for (auto& c : r.N) c = -c;
    } else {
        r.gap_sign = val(r.N[0] - r.N[3]) > 0.0 ? 1.0 : -1.0;
    }
    r.y = detail::minkowski_to_half(r.N, r.gap_sign);
    return r;
}

PolarResult<Series> polar_series(const SurfaceChart& chart, double u, double v, int order) {
    const auto xs = chart.taylor(u, v, order + 1);
    std::array<Series, 3> x, xu, xv;
    for (int a = 0; a < 3; ++a) {
        x[a] = xs[a].truncated(order);
        xu[a] = xs[a].diff(0);
        xv[a] = xs[a].diff(1);
    }
    return polar_from_frame(chart.space(), branch_sign(chart.sheet()), chart.orientation(), x, xu, xv);
}

PolarResult<double> polar_double(const SurfaceChart& chart, double u, double v) {
    if (chart.exact()) {
        const auto r = polar_series(chart, u, v, 0);
        PolarResult<double> out;
        for (int a = 0; a < 4; ++a) out.N[a] = r.N[a].value();
        for (int a = 0; a < 3; ++a) out.y[a] = r.y[a].value();
        out.eta3 = r.eta3.value();
        out.gap_sign = r.gap_sign;
        return out;
    }
    const Jet2 j = jet2_eval(chart, u, v);
    const std::array<double, 3> x{j.x(0), j.x(1), j.x(2)};
    const std::array<double, 3> xu{j.du(0, 0), j.du(1, 0), j.du(2, 0)};
    const std::array<double, 3> xv{j.du(0, 1), j.du(1, 1), j.du(2, 1)};
    return polar_from_frame(chart.space(), branch_sign(chart.sheet()), chart.orientation(), x, xu, xv);
}

}  // namespace

AmbientSpace dual_space(const AmbientSpace& space) {
    if (space.dim() != 3) fail(ErrorCode::InvalidArgument, "polar varieties are defined for surfaces in 3-space");
    if (space.is_hyperbolic()) return AmbientSpace::de_sitter(3, CausalClass::SpaceLike);
    if (space.is_timelike()) return AmbientSpace::de_sitter(3, CausalClass::TimeLike);
    return AmbientSpace::hyperbolic(3);
}

SurfaceChart polar_chart(const SurfaceChart& chart) {
    const AmbientSpace target = dual_space(chart.space());
    SurfaceChart dual = [&] {
        if (chart.exact()) {
            TaylorMap map = [chart](double u, double v, int order) { return polar_series(chart, u, v, order).y; };
            return SurfaceChart::closed_form("polar(" + chart.name() + ")", map, chart.domain(), target);
        }
        PositionMap map = [chart](double u, double v) {
            const auto r = polar_double(chart, u, v);
            return Eigen::Vector3d(r.y[0], r.y[1], r.y[2]);
        };
        return SurfaceChart::numeric("polar(" + chart.name() + ")", map, chart.domain(), target);
    }();
    if (!target.is_hyperbolic()) {
        try {
            const auto r = polar_double(chart, chart.domain().cu(), chart.domain().cv());
            dual = dual.with_sheet(r.gap_sign > 0.0 ? DeSitterBranch::Plus : DeSitterBranch::Minus);
        } catch (const GeometryError&) {
            // leave the default sheet; points are still placed by their own gap sign
        }
    }
    return dual;
}

Eigen::Vector4d minkowski_normal(const SurfaceChart& chart, double u, double v) {
    const Jet2 j = jet2_eval(chart, u, v);
    const Eigen::VectorXd eta = normal_eta(j.du, chart.space(), chart.orientation());
    const auto N = detail::pushforward_normal(chart.space().kind(), std::array<double, 3>{j.x(0), j.x(1), j.x(2)},
                                              std::array<double, 3>{eta(0), eta(1), eta(2)}, branch_sign(chart.sheet()));
    return {N[0], N[1], N[2], N[3]};
}

TransferDirection transfer_direction(const AmbientSpace& source) {
    if (source.is_hyperbolic()) return TransferDirection::HtoDS;
    return source.is_timelike() ? TransferDirection::DSTimelike : TransferDirection::DStoH;
}

double curvature_transfer(double K, TransferDirection direction) {
    const double d = direction == TransferDirection::HtoDS ? K + 1.0
                     : direction == TransferDirection::DStoH ? 1.0 - K
                                                             : K - 1.0;
    if (std::abs(d) < 1e-12) {
        std::ostringstream os;
        os << "K = " << K << " is a branch point of the polar variety";
        fail(ErrorCode::BranchPoint, os.str());
    }
    return K / d;
}

PolarPoint polar_variety(const SurfaceChart& chart, double u, double v, PolarOptions options) {
    const Jet2 jet = jet2_eval(chart, u, v);
    const FormBundle src = fundamental_forms(jet, chart.space(), chart.orientation());
    if (std::abs(src.eta_top()) < kEquatorial)
        fail(ErrorCode::EquatorialNormal, "eta3 = 0: the polar point lies in X0 = X3");

    const auto r = polar_double(chart, u, v);
    const AmbientSpace target = dual_space(chart.space());
    PolarPoint p;
    p.position = {r.y[0], r.y[1], r.y[2]};
    p.minkowski = MinkowskiPoint{Eigen::Vector4d(r.N[0], r.N[1], r.N[2], r.N[3]),
                                 target.is_hyperbolic() ? Quadric::Hyperbolic : Quadric::DeSitter};
    if (!target.is_hyperbolic()) p.sheet = r.gap_sign > 0.0 ? DeSitterBranch::Plus : DeSitterBranch::Minus;
    p.source_eta3 = src.eta_top();
    p.source_K = src.K;

    const Eigen::Vector4d X = to_minkowski(chart.space(), jet.x.head<3>(), chart.sheet()).coords;
    const Eigen::Vector4d Nraw = minkowski_normal(chart, u, v);
    p.eta3_relation = src.eta_top() - (Nraw(0) - Nraw(3)) / (X(3) - X(0));

    const double branch_K = chart.space().is_hyperbolic() ? -1.0 : 1.0;
    p.branch_flag = std::abs(src.K - branch_K) < kBranchK || std::abs(src.II.determinant()) < kBranchDetII;
    if (p.branch_flag) {
        if (options.require_dual_curvature) fail(ErrorCode::BranchPoint, "dual curvature requested at a branch point");
        return p;
    }
    p.predicted_K = curvature_transfer(src.K, transfer_direction(chart.space()));

    SurfaceChart dual = polar_chart(chart);
    if (p.sheet) dual = dual.with_sheet(*p.sheet);
    const FormBundle db = fundamental_forms(jet2_eval(dual, u, v), target, std::nullopt);
    p.dual_K = db.K;
    p.volume_ratio = std::sqrt(std::abs(db.I.determinant()) / std::abs(src.I.determinant()));
    return p;
}

double double_polarity_defect(const SurfaceChart& chart, double u, double v) {
    const Jet2 jet = jet2_eval(chart, u, v);
    const Eigen::Vector4d X = to_minkowski(chart.space(), jet.x.head<3>(), chart.sheet()).coords;
    SurfaceChart dual = polar_chart(chart);
    const auto r = polar_double(chart, u, v);
    if (!dual.space().is_hyperbolic()) dual = dual.with_sheet(r.gap_sign > 0.0 ? DeSitterBranch::Plus : DeSitterBranch::Minus);
    const Eigen::Vector4d N2 = minkowski_normal(dual, u, v);
    return std::min((N2 - X).cwiseAbs().maxCoeff(), (N2 + X).cwiseAbs().maxCoeff());
}

Eigen::Vector3d graph_dualize(double u, double v, double f, double fu, double fv, GraphDirection direction) {
    if (!(f > 0.0)) fail(ErrorCode::NonPositiveHeight, "graph height must be positive");
    const double g2 = fu * fu + fv * fv;
    switch (direction) {
    case GraphDirection::H3toDS3: return {-f * fu - u, -f * fv - v, f * std::sqrt(1.0 + g2)};
    case GraphDirection::DS3toH3:
        if (!(g2 < 1.0)) fail(ErrorCode::CausalityViolation, "space-like graph needs f_u^2 + f_v^2 < 1");
        return {f * fu - u, f * fv - v, f * std::sqrt(1.0 - g2)};
    case GraphDirection::DS3toDS3:
        if (!(g2 > 1.0)) fail(ErrorCode::CausalityViolation, "time-like graph needs f_u^2 + f_v^2 > 1");
        return {f * fu - u, f * fv - v, f * std::sqrt(g2 - 1.0)};
    }
    fail(ErrorCode::InvalidArgument, "unknown direction");
}

SurfaceChart graph_dual_chart(const GraphExpr& f, GraphDirection direction, Domain domain) {
    const AmbientSpace target = direction == GraphDirection::H3toDS3   ? AmbientSpace::de_sitter()
                                : direction == GraphDirection::DS3toH3 ? AmbientSpace::hyperbolic()
                                                                       : AmbientSpace::de_sitter(3, CausalClass::TimeLike);
    TaylorMap map = [f, direction](double u0, double v0, int order) {
        // One extra order so the slopes still carry `order` derivatives.
        const Series u = Series::variable(u0, 0, order + 1), v = Series::variable(v0, 1, order + 1);
        const Series F = f.eval(u, v);
        const Series fu = F.diff(0), fv = F.diff(1);
        const Series h = F.truncated(order), U = u.truncated(order), V = v.truncated(order);
        graph_dualize(u0, v0, F.value(), fu.value(), fv.value(), direction);  // validity checks
        const Series g2 = fu * fu + fv * fv;
        const double s = direction == GraphDirection::H3toDS3 ? -1.0 : 1.0;
        const Series w = direction == GraphDirection::H3toDS3   ? 1.0 + g2
                         : direction == GraphDirection::DS3toH3 ? 1.0 - g2
                                                                : g2 - 1.0;
        return std::array<Series, 3>{s * (h * fu) - U, s * (h * fv) - V, h * sqrt(w)};
    };
    return SurfaceChart::closed_form("dual:" + f.source(), std::move(map), domain, target);
}

namespace {

Eigen::VectorXd pairing_residuals(const std::vector<Eigen::Vector3d>& pts, const TargetFamily& t, double theta,
                                  double a, double b) {
    const double c = std::cos(-theta), s = std::sin(-theta);
    Eigen::VectorXd r(static_cast<Eigen::Index>(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double qx = pts[k](0) - a, qy = pts[k](1) - b;
        const Eigen::Vector2d UV = t.inverse(c * qx - s * qy, s * qx + c * qy);
        r(static_cast<Eigen::Index>(k)) = t.height(UV(0), UV(1)) - pts[k](2);
    }
    return r;
}

}  // namespace

IsometryFit fit_isometry(const std::vector<Eigen::Vector3d>& points, const TargetFamily& target) {
    if (points.empty()) fail(ErrorCode::InvalidArgument, "no points to fit");
    IsometryFit best;
    best.max_distance = std::numeric_limits<double>::infinity();
    for (double theta : {std::numbers::pi / 2, -std::numbers::pi / 2}) {
        Eigen::Vector2d ab(0.0, 0.0);
        double lambda = 1e-3;
        Eigen::VectorXd r = pairing_residuals(points, target, theta, ab(0), ab(1));
        for (int it = 0; it < 100; ++it) {
            Eigen::MatrixXd J(r.size(), 2);
            for (int k = 0; k < 2; ++k) {
                Eigen::Vector2d d = ab;
                const double h = 1e-7 * std::max(1.0, std::abs(ab(k)));
                d(k) += h;
                J.col(k) = (pairing_residuals(points, target, theta, d(0), d(1)) - r) / h;
            }
            const Eigen::Matrix2d A = J.transpose() * J;
            const Eigen::Vector2d g = J.transpose() * r;
            bool improved = false;
            for (int tries = 0; tries < 20 && !improved; ++tries) {
                const Eigen::Matrix2d M = A + lambda * Eigen::Matrix2d(A.diagonal().asDiagonal()) +
                                          1e-15 * Eigen::Matrix2d::Identity();
                const Eigen::Vector2d step = -M.ldlt().solve(g);
                const Eigen::Vector2d trial = ab + step;
                Eigen::VectorXd rt;
                try {
                    rt = pairing_residuals(points, target, theta, trial(0), trial(1));
                } catch (const GeometryError&) {
                    lambda *= 10;
                    continue;
                }
                if (rt.allFinite() && rt.squaredNorm() <= r.squaredNorm()) {
                    ab = trial;
                    r = rt;
                    lambda = std::max(lambda / 10, 1e-12);
                    improved = true;
                    if (step.norm() < 1e-14) it = 100;
                } else {
                    lambda *= 10;
                }
            }
            if (!improved) break;
        }
        const double d = r.cwiseAbs().maxCoeff();
        if (d < best.max_distance) best = {theta, ab(0), ab(1), d};
    }
    return best;
}

}  // namespace hsurf
