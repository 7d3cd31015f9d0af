#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsurf/chart.hpp"
#include "hsurf/forms.hpp"

namespace hsurf {

using Complex = std::complex<double>;

/// Uniform rectangular grid; node (i, j) sits at (u0 + i du, v0 + j dv).
struct Grid {
    double u0 = 0.0, v0 = 0.0, du = 1.0, dv = 1.0;
    int nu = 0, nv = 0;

    static Grid over(double u0, double u1, double v0, double v1, int nu, int nv);
    double u(int i) const { return u0 + i * du; }
    double v(int j) const { return v0 + j * dv; }
    Complex z(int i, int j) const { return {u(i), v(j)}; }
    int size() const { return nu * nv; }
    bool interior(int i, int j, int margin = 1) const {
        return i >= margin && j >= margin && i < nu - margin && j < nv - margin;
    }
};

enum class FieldRole { NormalMap_g, DeSitterMap_G };

class ComplexField {
public:
    ComplexField(Grid grid, FieldRole role);
    ComplexField(Grid grid, FieldRole role, const std::function<Complex(Complex)>& f);

    const Grid& grid() const noexcept { return grid_; }
    FieldRole role() const noexcept { return role_; }
    Complex& at(int i, int j) { return values_[static_cast<std::size_t>(j) * grid_.nu + i]; }
    Complex at(int i, int j) const { return values_[static_cast<std::size_t>(j) * grid_.nu + i]; }

    /// Second-order differences; one-sided at the edges.
    Complex d_u(int i, int j) const;
    Complex d_v(int i, int j) const;
    Complex d_z(int i, int j) const { return 0.5 * (d_u(i, j) - Complex(0, 1) * d_v(i, j)); }
    Complex d_zbar(int i, int j) const { return 0.5 * (d_u(i, j) + Complex(0, 1) * d_v(i, j)); }

    /// Rows i,j,u,v,Re,Im with 17 significant digits.
    void write_csv(std::ostream& os) const;

private:
    Grid grid_;
    FieldRole role_;
    std::vector<Complex> values_;
};

enum class WeierstrassCase { Holo_gAbsGt1, Antiholo_gAbsLt1 };

WeierstrassCase parse_case(int k);
const char* to_string(WeierstrassCase c);

/// Checks the modulus standoff |g| >= 1 + delta (case 1) or <= 1 - delta (case 2).
void check_g(const ComplexField& g, WeierstrassCase c, double delta = 0.1);

/// Residual of the compatibility equation at an interior node, second-order differences.
Complex compatibility_residual(const ComplexField& g, const ComplexField& G, int i, int j, WeierstrassCase c,
                               double delta = 0.1);

/// Same equation with fourth-order differences of G (nodes two cells from the edge).
Complex continuum_residual(const ComplexField& g, const ComplexField& G, int i, int j, WeierstrassCase c);

/// Maximum of |discrete operator applied to G| over interior nodes.
double discrete_residual(const ComplexField& g, const ComplexField& G, WeierstrassCase c);

/// Dirichlet problem for the compatibility equation: boundary values of G are
/// taken from `boundary`, interior values solve the discretised equation.
ComplexField solve_G(const ComplexField& g, const std::function<Complex(Complex)>& boundary, WeierstrassCase c,
                     double delta = 0.1);

struct PointDiagnostic {
    int i = 0, j = 0;
    bool kept = false;
    std::string reason;     // empty when kept
    double ratio_re = 0.0;  // Re of G_z/g_z (case 1) or G_zbar/(|g|^2 g_zbar) (case 2)
    double ratio_im = 0.0;
    double modulus_test = 0.0;   // |g|^2|G_zbar| - |G_z| (case 1), 1 - |g|^2|G_z|/|G_zbar| (case 2); > 0 passes
    double compatibility = 0.0;  // |residual| at interior nodes
    double eta3_formula = 0.0;   // (1+|g|^2)/(|g|^2-1) resp. its negative reciprocal-free form
    double identity_defect = 0.0;  // |x1 + i x2 + x3 g - G|
};

struct BuildOptions {
    double delta = 0.1;
    /// Allowed |Im(ratio)|/|ratio| before a kept sample raises NonRealHeight.
    double realness_tol = 5e-2;
};

struct BuiltSurface {
    Grid grid;
    WeierstrassCase case_tag;
    std::vector<std::optional<Eigen::Vector3d>> samples;  // row-major like ComplexField
    std::vector<PointDiagnostic> diagnostics;

    const std::optional<Eigen::Vector3d>& at(int i, int j) const {
        return samples[static_cast<std::size_t>(j) * grid.nu + i];
    }
    std::size_t kept() const;
};

BuiltSurface build_surface(const ComplexField& g, const ComplexField& G, WeierstrassCase c, BuildOptions options = {});

/// Two-jet of the built surface at node (i, j) from grid differences; empty
/// when a neighbour was dropped or the node is within two cells of the edge.
std::optional<Jet2> grid_jet(const BuiltSurface& s, int i, int j);

/// Measured data at one node of a built surface.
struct BuiltPointCheck {
    FormBundle forms;
    Complex g_recovered;
    ConformalityReport conformality;
};

std::optional<BuiltPointCheck> check_built_point(const BuiltSurface& s, int i, int j);

/// Radial solution of the case-1 equation for g = z: G = F(|z|^2)/conj(z) with
/// F built from the complete elliptic integral K(k), k^2 = 1 - 1/|z|^2.
Complex radial_test_G(Complex z);
/// Its derivative G_z (real and positive).
double radial_test_Gz(Complex z);

}  // namespace hsurf
