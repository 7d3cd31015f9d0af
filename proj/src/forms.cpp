#include "hsurf/forms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

constexpr double kOrientationTie = 1e-12;
constexpr double kGeodesicTolerance = 1e-12;
constexpr double kFloor = 1e-12;

/// Generalised cross product of the n columns of an (n+1) x n matrix.
Eigen::VectorXd cross(const Eigen::MatrixXd& D) {
    const int m = static_cast<int>(D.rows());
    const int n = static_cast<int>(D.cols());
    Eigen::VectorXd c(m);
    if (m == 3) {
        const Eigen::Vector3d a = D.col(0), b = D.col(1);
        return a.cross(b);
    }
    for (int A = 0; A < m; ++A) {
        Eigen::MatrixXd minor(n, n);
        for (int r = 0, k = 0; r < m; ++r) {
            if (r == A) continue;
            minor.row(k++) = D.row(r);
        }
        c(A) = ((A + n) % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
    }
    return c;
}

struct RawNormal {
    Eigen::VectorXd w;  // eps * cross, before normalisation
    double q;           // sum eps w^2
    double sign;        // orientation applied
};

RawNormal raw_normal(const Eigen::MatrixXd& du, const AmbientSpace& space, std::optional<double> orientation) {
    const Eigen::VectorXd eps = space.signature_vector();
    Eigen::VectorXd w = eps.cwiseProduct(cross(du));
    const double q = (eps.array() * w.array() * w.array()).sum();
    if (q == 0.0 || (q > 0.0) != (space.normal_sign() > 0.0)) {
        std::ostringstream os;
        os << "normal has the wrong causal character for " << space.name();
        fail(ErrorCode::WrongCausalClass, os.str());
    }
    double sign = 1.0;
    const double top = w(w.size() - 1) / std::sqrt(std::abs(q));
    if (orientation) {
        sign = *orientation;
    } else {
        if (std::abs(top) <= kOrientationTie)
            fail(ErrorCode::OrientationUndefined, "eta_{n+1} vanishes and no orientation was given");
        sign = top > 0.0 ? 1.0 : -1.0;
    }
    return {w, q, sign};
}

void check_causal(const Eigen::MatrixXd& I, const AmbientSpace& space) {
    if (space.is_timelike()) {
        if (!(I.determinant() < 0.0)) fail(ErrorCode::WrongCausalClass, "declared time-like but det I >= 0");
        return;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(I);
    if (llt.info() != Eigen::Success) fail(ErrorCode::WrongCausalClass, "declared space-like but I is not positive definite");
}

Eigen::MatrixXd first_partials(const SurfaceChart& chart, double u, double v) {
    Eigen::MatrixXd du(3, 2);
    if (chart.exact()) {
        const auto s = chart.taylor(u, v, 1);
        for (int a = 0; a < 3; ++a) {
            du(a, 0) = s[a].derivative(1, 0);
            du(a, 1) = s[a].derivative(0, 1);
        }
        return du;
    }
    const double h = SurfaceChart::first_step(u, v);
    du.col(0) = (chart.position(u + h, v) - chart.position(u - h, v)) / (2 * h);
    du.col(1) = (chart.position(u, v + h) - chart.position(u, v - h)) / (2 * h);
    return du;
}

Eigen::Matrix2d first_form_at(const SurfaceChart& chart, double u, double v) {
    const Eigen::MatrixXd du = first_partials(chart, u, v);
    const double h = chart.position(u, v)(2);
    const Eigen::Vector3d eps = chart.space().signature_vector();
    Eigen::Matrix2d I;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) I(i, j) = (du.col(i).array() * du.col(j).array() * eps.array()).sum() / (h * h);
    return I;
}

double scale(double u, double v) { return std::max({1.0, std::abs(u), std::abs(v)}); }

void require_interior(const SurfaceChart& chart, double u, double v, double margin) {
    if (!chart.domain().interior(u, v, margin)) {
        std::ostringstream os;
        os << "(" << u << ", " << v << ") is too close to the boundary of " << chart.name();
        fail(ErrorCode::OutsideDomain, os.str());
    }
}

}  // namespace

Eigen::VectorXd normal_eta(const Eigen::MatrixXd& du, const AmbientSpace& space, std::optional<double> orientation) {
    const RawNormal r = raw_normal(du, space, orientation);
    return r.sign * r.w / std::sqrt(std::abs(r.q));
}

FormBundle fundamental_forms(const Jet2& jet, const AmbientSpace& space, std::optional<double> orientation) {
    const int m = jet.dim();
    const int n = jet.params();
    if (m != space.dim() || n != m - 1) fail(ErrorCode::InvalidArgument, "jet does not match the ambient dimension");
    const double t = jet.x(m - 1);
    if (!(t > 0.0)) fail(ErrorCode::HeightViolation, "jet lies outside the half-space");
    const Eigen::VectorXd eps = space.signature_vector();

    FormBundle b;
    b.space = space;
    b.I.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.I(i, j) = (jet.du.col(i).array() * jet.du.col(j).array() * eps.array()).sum() / (t * t);
    if (std::abs(b.I.determinant()) < 1e-12) fail(ErrorCode::NonImmersed, "first fundamental form is degenerate");
    check_causal(b.I, space);

    const RawNormal r = raw_normal(jet.du, space, orientation);
    const double norm = std::sqrt(std::abs(r.q));
    b.eta = r.sign * r.w / norm;

    // d eta along u_k: the cross product is multilinear in the tangent columns.
    b.deta.resize(m, n);
    for (int k = 0; k < n; ++k) {
        Eigen::VectorXd dc = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < n; ++i) {
            Eigen::MatrixXd D = jet.du;
            D.col(i) = jet.second(i, k);
            dc += cross(D);
        }
        const Eigen::VectorXd dw = eps.cwiseProduct(dc);
        const double dq = 2.0 * (eps.array() * r.w.array() * dw.array()).sum();
        const double dnorm = (r.q > 0.0 ? 1.0 : -1.0) * dq / (2.0 * norm);
        b.deta.col(k) = r.sign * (dw / norm - r.w * dnorm / (norm * norm));
    }

    const Christoffel gamma(m, t, space);
    const double ns = space.normal_sign();
    b.II.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const Eigen::VectorXd cov = jet.second(i, j) + gamma.contract(jet.du.col(i), jet.du.col(j));
            b.II(i, j) = b.II(j, i) = ns * (eps.array() * cov.array() * b.eta.array()).sum() / t;
        }

    const Eigen::MatrixXd Iinv = b.I.inverse();
    b.III = b.II * Iinv * b.II;
    b.III = 0.5 * (b.III + b.III.transpose());
    b.IV.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.IV(i, j) = (eps.array() * b.deta.col(i).array() * b.deta.col(j).array()).sum();

    const Eigen::MatrixXd S = Iinv * b.II;
    b.H = S.trace() / n;
    if (n == 2) {
        const auto [c, sigma] = gauss_constants(space);
        b.K = c + sigma * b.II.determinant() / b.I.determinant();
    } else {
        b.K = std::numeric_limits<double>::quiet_NaN();
    }
    if (!space.is_timelike()) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(b.II, b.I);
        b.spectrum.kind = ShapeSpectrum::Kind::Real;
        for (int k = 0; k < n; ++k) b.spectrum.values.push_back(es.eigenvalues()(k));
    }
    return b;
}

FormBundle fundamental_forms(const SurfaceChart& chart, double u, double v) {
    return fundamental_forms(jet2_eval(chart, u, v), chart.space(), chart.orientation());
}

const char* to_string(Classification c) {
    switch (c) {
    case Classification::Conformal: return "Conformal";
    case Classification::NotConformal: return "NotConformal";
    case Classification::TotallyGeodesicDegenerate: return "TotallyGeodesicDegenerate";
    case Classification::UmbilicPoint: return "UmbilicPoint";
    }
    return "?";
}

ConformalityReport conformality_test(const FormBundle& b, ConformalityOptions options) {
    ConformalityReport r;
    const double ii = b.II.squaredNorm();
    if (b.spectrum.kind == ShapeSpectrum::Kind::Real && b.spectrum.values.size() == 2) {
        const double l = b.spectrum.values[0], m = b.spectrum.values[1];
        r.umbilic = std::abs(l - m) <= 1e-8 * (1.0 + std::abs(l) + std::abs(m));
    }
    if (std::sqrt(ii) <= kGeodesicTolerance) {
        r.classification = Classification::TotallyGeodesicDegenerate;
        r.residual = b.IV.norm() / std::max(b.IV.norm(), kFloor);
        return r;
    }
    const double rho = (b.IV.array() * b.II.array()).sum() / ii;
    // IV is a cancelling sum of O(|II|) terms; a vanishing IV only carries roundoff.
    r.residual = (b.IV - rho * b.II).norm() / std::max({b.IV.norm(), 1e-4 * std::sqrt(ii), kFloor});
    r.is_conformal = r.residual <= options.tol;
    if (r.is_conformal) r.rho = rho;
    if (r.umbilic && options.umbilic_as_class) r.classification = Classification::UmbilicPoint;
    else r.classification = r.is_conformal ? Classification::Conformal : Classification::NotConformal;
    return r;
}

std::pair<double, double> gauss_constants(const AmbientSpace& space) {
    if (space.is_hyperbolic()) return {-1.0, 1.0};
    if (space.is_timelike()) return {1.0, 1.0};
    return {1.0, -1.0};
}

double obata_identity_residual(const FormBundle& b) {
    const double s = (!b.space.is_hyperbolic() && !b.space.is_timelike()) ? 1.0 : -1.0;
    const double e = b.eta_top();
    return (b.IV - (e * e * b.I + 2.0 * s * e * b.II + b.III)).norm();
}

double conformal_curvature(const FormBundle& b) {
    const auto [c, sigma] = gauss_constants(b.space);
    return c + sigma * b.eta_top() * b.eta_top();
}

double expected_rho(const FormBundle& b) {
    const bool spacelike_ds = !b.space.is_hyperbolic() && !b.space.is_timelike();
    return 2.0 * (b.H + (spacelike_ds ? 1.0 : -1.0) * b.eta_top());
}

Eigen::Matrix2d fourth_form_direct(const SurfaceChart& chart, double u, double v) {
    const double h = 1e-4 * scale(u, v);
    const double margin = 2.0 * (chart.exact() ? h : std::max(h, SurfaceChart::second_step(u, v)));
    require_interior(chart, u, v, margin);
    (void)jet2_eval(chart, u, v);
    auto eta = [&](double a, double c) { return normal_eta(first_partials(chart, a, c), chart.space(), chart.orientation()); };
    const Eigen::VectorXd eu = (eta(u + h, v) - eta(u - h, v)) / (2 * h);
    const Eigen::VectorXd ev = (eta(u, v + h) - eta(u, v - h)) / (2 * h);
    const Eigen::VectorXd eps = chart.space().signature_vector();
    auto dot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& c) { return (eps.array() * a.array() * c.array()).sum(); };
    Eigen::Matrix2d IV;
    IV << dot(eu, eu), dot(eu, ev), dot(ev, eu), dot(ev, ev);
    return IV;
}

double intrinsic_gauss_curvature(const SurfaceChart& chart, double u, double v) {
    const double h = 1e-3 * scale(u, v);
    require_interior(chart, u, v, 4.0 * h);
    (void)jet2_eval(chart, u, v);
    // Five-point stencils keep the truncation error small near the x3 -> 0 end of a domain.
    auto I = [&](int a, int c) { return first_form_at(chart, u + a * h, v + c * h); };
    constexpr double w1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
    constexpr double w2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
    Eigen::Matrix2d Iu = Eigen::Matrix2d::Zero(), Iv = Iu, Iuu = Iu, Ivv = Iu, Iuv = Iu;
    for (int k = 0; k < 5; ++k) {
        const Eigen::Matrix2d pu = I(k - 2, 0), pv = I(0, k - 2);
        Iu += w1[k] * pu;
        Iv += w1[k] * pv;
        Iuu += w2[k] * pu;
        Ivv += w2[k] * pv;
        if (w1[k] != 0.0)
            for (int l = 0; l < 5; ++l)
                if (w1[l] != 0.0) Iuv += w1[k] * w1[l] * I(k - 2, l - 2);
    }
    Iu /= 12 * h;
    Iv /= 12 * h;
    Iuu /= 12 * h * h;
    Ivv /= 12 * h * h;
    Iuv /= 144 * h * h;
    const Eigen::Matrix2d c0 = I(0, 0);
    const double E = c0(0, 0), F = c0(0, 1), G = c0(1, 1);
    const double Evv = Ivv(0, 0), Guu = Iuu(1, 1), Fuv = Iuv(0, 1);
    const double Eu = Iu(0, 0), Ev = Iv(0, 0), Fu = Iu(0, 1), Fv = Iv(0, 1), Gu = Iu(1, 1), Gv = Iv(1, 1);
    Eigen::Matrix3d A, B;
    A << -0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev,
         Fv - 0.5 * Gu, E, F,
         0.5 * Gv, F, G;
    B << 0.0, 0.5 * Ev, 0.5 * Gu,
         0.5 * Ev, E, F,
         0.5 * Gu, F, G;
    const double det = E * G - F * F;
    return (A.determinant() - B.determinant()) / (det * det);
}

}  // namespace hsurf
