#include "hsurf/weierstrass.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <lapacke.h>

#include "hsurf/errors.hpp"
#include "hsurf/gaussmaps.hpp"

namespace hsurf {

namespace {

constexpr Complex I1(0.0, 1.0);
constexpr int kMaxGrid = 65;

/// Coefficients (alpha, beta) of the first-order terms alpha G_z + beta G_zbar.
std::pair<Complex, Complex> coefficients(Complex g, Complex gz, Complex gzb, WeierstrassCase c) {
    const double s = std::norm(g);
    const double d = s * s - 1.0;
    const Complex gb = std::conj(g);
    if (c == WeierstrassCase::Holo_gAbsGt1) return {std::conj(gz) / (d * gb), -s * gb * gz / d};
    return {-s * gb * gzb / d, std::conj(gzb) / (d * gb)};
}

void require_same_grid(const ComplexField& a, const ComplexField& b) {
    const Grid &x = a.grid(), &y = b.grid();
    if (x.nu != y.nu || x.nv != y.nv || x.u0 != y.u0 || x.v0 != y.v0 || x.du != y.du || x.dv != y.dv)
        fail(ErrorCode::InvalidArgument, "fields live on different grids");
}

void check_node(const ComplexField& g, int i, int j, double delta) {
    if (std::abs(std::abs(g.at(i, j)) - 1.0) < delta / 2) {
        std::ostringstream os;
        os << "|g| is within " << delta / 2 << " of 1 at node (" << i << ", " << j << ")";
        fail(ErrorCode::UnitModulusSingularity, os.str());
    }
}

bool is_constant(const ComplexField& g) {
    const Complex c = g.at(0, 0);
    for (int j = 0; j < g.grid().nv; ++j)
        for (int i = 0; i < g.grid().nu; ++i)
            if (g.at(i, j) != c) return false;
    return true;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Grid Grid::over(double u0, double u1, double v0, double v1, int nu, int nv) {
    if (nu < 2 || nv < 2) fail(ErrorCode::InvalidArgument, "grids need at least two nodes per side");
    if (!(u1 > u0) || !(v1 > v0)) fail(ErrorCode::InvalidArgument, "empty grid rectangle");
    return {u0, v0, (u1 - u0) / (nu - 1), (v1 - v0) / (nv - 1), nu, nv};
}

ComplexField::ComplexField(Grid grid, FieldRole role)
    : grid_(grid), role_(role), values_(static_cast<std::size_t>(grid.size())) {}

ComplexField::ComplexField(Grid grid, FieldRole role, const std::function<Complex(Complex)>& f)
    : ComplexField(grid, role) {
    for (int j = 0; j < grid.nv; ++j)
        for (int i = 0; i < grid.nu; ++i) {
            const Complex w = f(grid.z(i, j));
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                fail(ErrorCode::EvaluationError, "field is not finite on the grid");
            at(i, j) = w;
        }
}

Complex ComplexField::d_u(int i, int j) const {
    const double h = grid_.du;
    if (grid_.nu < 3) return (at(1, j) - at(0, j)) / h;
    if (i == 0) return (-3.0 * at(0, j) + 4.0 * at(1, j) - at(2, j)) / (2 * h);
    if (i == grid_.nu - 1) return (3.0 * at(i, j) - 4.0 * at(i - 1, j) + at(i - 2, j)) / (2 * h);
    return (at(i + 1, j) - at(i - 1, j)) / (2 * h);
}

Complex ComplexField::d_v(int i, int j) const {
    const double h = grid_.dv;
    if (grid_.nv < 3) return (at(i, 1) - at(i, 0)) / h;
    if (j == 0) return (-3.0 * at(i, 0) + 4.0 * at(i, 1) - at(i, 2)) / (2 * h);
    if (j == grid_.nv - 1) return (3.0 * at(i, j) - 4.0 * at(i, j - 1) + at(i, j - 2)) / (2 * h);
    return (at(i, j + 1) - at(i, j - 1)) / (2 * h);
}

void ComplexField::write_csv(std::ostream& os) const {
    os << "i,j,u,v,Re,Im\n";
    for (int j = 0; j < grid_.nv; ++j)
        for (int i = 0; i < grid_.nu; ++i) {
            const Complex w = at(i, j);
            os << i << ',' << j << ',' << fmt(grid_.u(i)) << ',' << fmt(grid_.v(j)) << ',' << fmt(w.real()) << ','
               << fmt(w.imag()) << '\n';
        }
}

WeierstrassCase parse_case(int k) {
    if (k == 1) return WeierstrassCase::Holo_gAbsGt1;
    if (k == 2) return WeierstrassCase::Antiholo_gAbsLt1;
    fail(ErrorCode::InvalidArgument, "case must be 1 or 2");
}

const char* to_string(WeierstrassCase c) {
    return c == WeierstrassCase::Holo_gAbsGt1 ? "Holo_gAbsGt1" : "Antiholo_gAbsLt1";
}

void check_g(const ComplexField& g, WeierstrassCase c, double delta) {
    for (int j = 0; j < g.grid().nv; ++j)
        for (int i = 0; i < g.grid().nu; ++i) {
            const double m = std::abs(g.at(i, j));
            const bool ok = c == WeierstrassCase::Holo_gAbsGt1 ? m >= 1.0 + delta : m <= 1.0 - delta;
            if (!ok) {
                std::ostringstream os;
                os << "|g| = " << m << " at node (" << i << ", " << j << ") violates the "
                   << (c == WeierstrassCase::Holo_gAbsGt1 ? "|g| > 1" : "|g| < 1") << " standoff " << delta;
                fail(ErrorCode::ConstraintViolation, os.str());
            }
        }
}

Complex compatibility_residual(const ComplexField& g, const ComplexField& G, int i, int j, WeierstrassCase c,
                               double delta) {
    require_same_grid(g, G);
    if (!g.grid().interior(i, j)) fail(ErrorCode::OutsideDomain, "node is not interior");
    if (is_constant(g)) fail(ErrorCode::DegenerateInput, "g is constant");
    check_node(g, i, j, delta);
    const Grid& gr = G.grid();
    const Complex lap = (G.at(i + 1, j) - 2.0 * G.at(i, j) + G.at(i - 1, j)) / (gr.du * gr.du) +
                        (G.at(i, j + 1) - 2.0 * G.at(i, j) + G.at(i, j - 1)) / (gr.dv * gr.dv);
    const auto [alpha, beta] = coefficients(g.at(i, j), g.d_z(i, j), g.d_zbar(i, j), c);
    return 0.25 * lap + alpha * G.d_z(i, j) + beta * G.d_zbar(i, j);
}

Complex continuum_residual(const ComplexField& g, const ComplexField& G, int i, int j, WeierstrassCase c) {
    require_same_grid(g, G);
    if (!g.grid().interior(i, j, 2)) fail(ErrorCode::OutsideDomain, "node is not two cells from the edge");
    const Grid& gr = G.grid();
    auto d1 = [](Complex m2, Complex m1, Complex p1, Complex p2, double h) {
        return (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * h);
    };
    auto d2 = [](Complex m2, Complex m1, Complex c0, Complex p1, Complex p2, double h) {
        return (-p2 + 16.0 * p1 - 30.0 * c0 + 16.0 * m1 - m2) / (12.0 * h * h);
    };
    auto du = [&](const ComplexField& F) { return d1(F.at(i - 2, j), F.at(i - 1, j), F.at(i + 1, j), F.at(i + 2, j), gr.du); };
    auto dv = [&](const ComplexField& F) { return d1(F.at(i, j - 2), F.at(i, j - 1), F.at(i, j + 1), F.at(i, j + 2), gr.dv); };
    const Complex Guu = d2(G.at(i - 2, j), G.at(i - 1, j), G.at(i, j), G.at(i + 1, j), G.at(i + 2, j), gr.du);
    const Complex Gvv = d2(G.at(i, j - 2), G.at(i, j - 1), G.at(i, j), G.at(i, j + 1), G.at(i, j + 2), gr.dv);
    const Complex Gu = du(G), Gv = dv(G), gu = du(g), gv = dv(g);
    const auto [alpha, beta] = coefficients(g.at(i, j), 0.5 * (gu - I1 * gv), 0.5 * (gu + I1 * gv), c);
    return 0.25 * (Guu + Gvv) + alpha * 0.5 * (Gu - I1 * Gv) + beta * 0.5 * (Gu + I1 * Gv);
}

double discrete_residual(const ComplexField& g, const ComplexField& G, WeierstrassCase c) {
    double worst = 0.0;
    for (int j = 1; j < G.grid().nv - 1; ++j)
        for (int i = 1; i < G.grid().nu - 1; ++i)
            worst = std::max(worst, std::abs(compatibility_residual(g, G, i, j, c, 0.0)));
    return worst;
}

ComplexField solve_G(const ComplexField& g, const std::function<Complex(Complex)>& boundary, WeierstrassCase c,
                     double delta) {
    const Grid& gr = g.grid();
    if (gr.nu < 3 || gr.nv < 3) fail(ErrorCode::InvalidArgument, "grid needs an interior node");
    if (gr.nu > kMaxGrid || gr.nv > kMaxGrid) fail(ErrorCode::InvalidArgument, "grid larger than 65 x 65");
    if (is_constant(g)) fail(ErrorCode::DegenerateInput, "g is constant");
    check_g(g, c, delta);

    ComplexField G(gr, FieldRole::DeSitterMap_G);
    for (int j = 0; j < gr.nv; ++j)
        for (int i = 0; i < gr.nu; ++i)
            if (!gr.interior(i, j)) G.at(i, j) = boundary(gr.z(i, j));

    const int mu = gr.nu - 2;
    const int m = mu * (gr.nv - 2);
    const lapack_int n = 2 * m;
    const lapack_int kl = 2 * mu + 1, ku = 2 * mu + 1;
    const lapack_int ldab = 2 * kl + ku + 1;
    std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
    std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
    // Column-major band storage: A(r, col) lives at ab[col*ldab + kl + ku + r - col].
    auto put = [&](lapack_int r, lapack_int col, double x) { ab[static_cast<std::size_t>(col) * ldab + kl + ku + r - col] += x; };
    auto node = [&](int i, int j) { return (i - 1) + mu * (j - 1); };

    for (int j = 1; j < gr.nv - 1; ++j)
        for (int i = 1; i < gr.nu - 1; ++i) {
            const auto [alpha, beta] = coefficients(g.at(i, j), g.d_z(i, j), g.d_zbar(i, j), c);
            // L G = lap/4 + a G_u + b G_v
            const Complex a = 0.5 * (alpha + beta);
            const Complex b = 0.5 * I1 * (beta - alpha);
            const double hu = gr.du, hv = gr.dv;
            const struct {
                int di, dj;
                Complex w;
            } stencil[] = {
                {0, 0, Complex(-0.5 / (hu * hu) - 0.5 / (hv * hv))},
                {1, 0, 0.25 / (hu * hu) + a / (2 * hu)},
                {-1, 0, 0.25 / (hu * hu) - a / (2 * hu)},
                {0, 1, 0.25 / (hv * hv) + b / (2 * hv)},
                {0, -1, 0.25 / (hv * hv) - b / (2 * hv)},
            };
            const lapack_int row = 2 * node(i, j);
            for (const auto& s : stencil) {
                const int ii = i + s.di, jj = j + s.dj;
                if (gr.interior(ii, jj)) {
                    const lapack_int col = 2 * node(ii, jj);
                    put(row, col, s.w.real());
                    put(row, col + 1, -s.w.imag());
                    put(row + 1, col, s.w.imag());
                    put(row + 1, col + 1, s.w.real());
                } else {
                    const Complex known = s.w * G.at(ii, jj);
                    rhs[row] -= known.real();
                    rhs[row + 1] -= known.imag();
                }
            }
        }

    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, kl, ku, 1, ab.data(), ldab, ipiv.data(), rhs.data(), n);
    if (info > 0) throw SingularSystemError(static_cast<std::size_t>(info - 1), "discretised compatibility system is singular");
    if (info < 0) fail(ErrorCode::InvalidArgument, "banded solver rejected its arguments");

    for (int j = 1; j < gr.nv - 1; ++j)
        for (int i = 1; i < gr.nu - 1; ++i) {
            const auto k = static_cast<std::size_t>(2 * node(i, j));
            G.at(i, j) = Complex(rhs[k], rhs[k + 1]);
        }
    return G;
}

std::size_t BuiltSurface::kept() const {
    std::size_t n = 0;
    for (const auto& s : samples) n += s.has_value();
    return n;
}

BuiltSurface build_surface(const ComplexField& g, const ComplexField& G, WeierstrassCase c, BuildOptions options) {
    require_same_grid(g, G);
    const Grid& gr = g.grid();
    BuiltSurface out{gr, c, std::vector<std::optional<Eigen::Vector3d>>(static_cast<std::size_t>(gr.size())), {}};
    const bool case1 = c == WeierstrassCase::Holo_gAbsGt1;
    for (int j = 0; j < gr.nv; ++j)
        for (int i = 0; i < gr.nu; ++i) {
            PointDiagnostic d;
            d.i = i;
            d.j = j;
            const Complex gv = g.at(i, j);
            const double s = std::norm(gv);
            const Complex Gz = G.d_z(i, j), Gzb = G.d_zbar(i, j);
            const Complex gd = case1 ? g.d_z(i, j) : g.d_zbar(i, j);  // g_z resp. g_zbar
            d.eta3_formula = case1 ? (1.0 + s) / (s - 1.0) : -(1.0 + s) / (1.0 - s);
            if (gr.interior(i, j) && std::abs(std::abs(gv) - 1.0) >= options.delta / 2)
                d.compatibility = std::abs(compatibility_residual(g, G, i, j, c, 0.0));
            if (std::abs(std::abs(gv) - 1.0) < options.delta) {
                d.reason = "g too close to the unit circle";
                out.diagnostics.push_back(d);
                continue;
            }
            if (gd == 0.0) {
                d.reason = "g has a critical point";
                out.diagnostics.push_back(d);
                continue;
            }
            const Complex ratio = case1 ? Gz / gd : Gzb / (s * gd);
            d.ratio_re = ratio.real();
            d.ratio_im = ratio.imag();
            d.modulus_test = case1 ? s * std::abs(Gzb) - std::abs(Gz)
                                   : (std::abs(Gzb) > 0.0 ? 1.0 - s * std::abs(Gz) / std::abs(Gzb) : -1.0);
            if (!(ratio.real() > 0.0)) {
                d.reason = case1 ? "G_z/g_z is not positive" : "G_zbar/(|g|^2 g_zbar) is not positive";
                out.diagnostics.push_back(d);
                continue;
            }
            if (!(d.modulus_test > 0.0)) {
                d.reason = case1 ? "|g|^2|G_zbar| <= |G_z|" : "|g|^2|G_z|/|G_zbar| >= 1";
                out.diagnostics.push_back(d);
                continue;
            }
            if (std::abs(ratio.imag()) > options.realness_tol * std::abs(ratio)) {
                std::ostringstream os;
                os << "height has relative imaginary part " << std::abs(ratio.imag()) / std::abs(ratio) << " at node ("
                   << i << ", " << j << ")";
                fail(ErrorCode::NonRealHeight, os.str());
            }
            // Project the derivative onto its real part so that the height is
            // real; x1 + i x2 + x3 g = G then holds exactly.
            const double q = ratio.real();
            const double x3 = case1 ? (1.0 + s) / s * q : (1.0 + s) * q;
            const Complex horiz = case1 ? G.at(i, j) - (1.0 + s) / std::conj(gv) * q
                                        : G.at(i, j) - (1.0 + s) * s / std::conj(gv) * q;
            const Eigen::Vector3d x(horiz.real(), horiz.imag(), x3);
            d.identity_defect = std::abs(Complex(x(0), x(1)) + x(2) * gv - G.at(i, j));
            d.kept = true;
            out.samples[static_cast<std::size_t>(j) * gr.nu + i] = x;
            out.diagnostics.push_back(d);
        }
    if (out.kept() == 0) fail(ErrorCode::EmptyOutput, "every sample violated a constraint");
    return out;
}

std::optional<Jet2> grid_jet(const BuiltSurface& s, int i, int j) {
    const Grid& gr = s.grid;
    // Edge samples use one-sided derivatives of G; keep them out of the stencil.
    if (!gr.interior(i, j, 2)) return std::nullopt;
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di)
            if (!s.at(i + di, j + dj)) return std::nullopt;
    auto P = [&](int di, int dj) { return *s.at(i + di, j + dj); };
    const double hu = gr.du, hv = gr.dv;
    Jet2 jet;
    jet.x = P(0, 0);
    jet.du.resize(3, 2);
    jet.du.col(0) = (P(1, 0) - P(-1, 0)) / (2 * hu);
    jet.du.col(1) = (P(0, 1) - P(0, -1)) / (2 * hv);
    const Eigen::Vector3d xuu = (P(1, 0) - 2 * P(0, 0) + P(-1, 0)) / (hu * hu);
    const Eigen::Vector3d xvv = (P(0, 1) - 2 * P(0, 0) + P(0, -1)) / (hv * hv);
    const Eigen::Vector3d xuv = (P(1, 1) - P(1, -1) - P(-1, 1) + P(-1, -1)) / (4 * hu * hv);
    jet.duu.assign(3, Eigen::MatrixXd(2, 2));
    for (int a = 0; a < 3; ++a) {
        jet.duu[a](0, 0) = xuu(a);
        jet.duu[a](0, 1) = jet.duu[a](1, 0) = xuv(a);
        jet.duu[a](1, 1) = xvv(a);
    }
    return jet;
}

std::optional<BuiltPointCheck> check_built_point(const BuiltSurface& s, int i, int j) {
    const auto jet = grid_jet(s, i, j);
    if (!jet) return std::nullopt;
    const AmbientSpace ds = AmbientSpace::de_sitter(3, CausalClass::SpaceLike);
    BuiltPointCheck c{fundamental_forms(*jet, ds), {}, {}};
    // Case 2 surfaces carry the normal with eta3 < 0.
    Eigen::Vector3d eta = c.forms.eta;
    if (s.case_tag == WeierstrassCase::Antiholo_gAbsLt1) eta = -eta;
    const auto g = stereo_project(eta, ds);
    c.g_recovered = g.is_infinite() ? Complex(INFINITY, INFINITY) : *g.value;
    c.conformality = conformality_test(c.forms, {5e-2, false});
    return c;
}

Complex radial_test_G(Complex z) {
    const double s = std::norm(z);
    if (!(s > 1.0)) fail(ErrorCode::DomainError, "radial test solution needs |z| > 1");
    const double k = std::sqrt(1.0 - 1.0 / (s * s));
    const double K = std::comp_ellint_1(k);
    const double E = std::comp_ellint_2(k);
    const double dK = E / (k * (1.0 - k * k)) - K / k;
    const double dk = 1.0 / (s * s * s * k);
    const double phi = K;
    const double dphi = dK * dk;
    const double F = s * phi - (s * s - 1.0) * dphi - phi / s;
    return F / std::conj(z);
}

double radial_test_Gz(Complex z) {
    const double s = std::norm(z);
    const double k = std::sqrt(1.0 - 1.0 / (s * s));
    return std::comp_ellint_1(k);
}

}  // namespace hsurf
