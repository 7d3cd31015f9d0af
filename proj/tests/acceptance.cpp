// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hsurf/duality.hpp"
#include "hsurf/errors.hpp"
#include "hsurf/forms.hpp"
#include "hsurf/weierstrass.hpp"
#include "hsurf/zoo.hpp"

using namespace hsurf;

namespace {

FamilyParams fam(const std::string& key, std::map<std::string, double> p = {}) {
    return {key, std::move(p), {}, {}, {}};
}

using Points = std::vector<std::pair<double, double>>;

Points random_points(const Domain& d, int n, std::mt19937& rng, double inset = 0.02) {
    std::uniform_real_distribution<double> U(inset, 1.0 - inset);
    Points p;
    for (int k = 0; k < n; ++k) p.emplace_back(d.u0 + (d.u1 - d.u0) * U(rng), d.v0 + (d.v1 - d.v0) * U(rng));
    return p;
}

Points inner_grid(const Domain& d, int n) {
    Points p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            p.emplace_back(d.u0 + (d.u1 - d.u0) * (0.1 + 0.8 * i / (n - 1)), d.v0 + (d.v1 - d.v0) * (0.1 + 0.8 * j / (n - 1)));
    return p;
}

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail = what;
        pass = pass && ok;
    }
};

std::string fmt(const char* f, double x) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

template <class F>
Criterion guarded(F f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {false, std::string("exception: ") + e.what()};
    }
}

Criterion ac1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(1);
    Criterion c;
    double worst = 0.0;
    const auto& fams = list_families();
    c.require(fams.size() >= 14, "fewer than 14 families");
    for (const auto& info : fams) {
        const SurfaceChart s = make_surface(fam(info.key));
        for (const auto& [u, v] : random_points(s.domain(), 50, rng)) {
            const double r = obata_identity_residual(fundamental_forms(s, u, v));
            worst = std::max(worst, r);
            c.require(r <= 1e-9, info.key + fmt(" residual %.3g", r));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 5.0, fmt("took %.2f s", secs));
    if (c.pass)
        c.detail = std::to_string(fams.size()) + " families, max residual " + fmt("%.2e", worst) + fmt(", %.2f s", secs);
    return c;
}

Criterion ac2() {
    std::mt19937 rng(2);
    Criterion c;
    double worst = 0.0;
    int n = 0;
    for (const auto& info : list_families()) {
        if (!info.conformal) continue;
        ++n;
        const SurfaceChart s = make_surface(fam(info.key));
        const auto [c0, sigma] = gauss_constants(s.space());
        for (const auto& [u, v] : random_points(s.domain(), 20, rng)) {
            const FormBundle b = fundamental_forms(s, u, v);
            const double d = std::abs(b.K - (c0 + sigma * b.eta_top() * b.eta_top()));
            worst = std::max(worst, d);
            c.require(d <= 1e-9, info.key + fmt(" K law off by %.3g", d));
            c.require(conformality_test(b).classification == Classification::Conformal, info.key + " not Conformal");
        }
    }
    const SurfaceChart plane = make_surface(fam("geodesic-plane"));
    c.require(conformality_test(fundamental_forms(plane, 0.2, 1.1)).classification ==
                  Classification::TotallyGeodesicDegenerate,
              "vertical plane not TotallyGeodesicDegenerate");
    const SurfaceChart ctrl = make_surface(fam("control-paraboloid"));
    for (const auto& [u, v] : inner_grid(ctrl.domain(), 4))
        c.require(conformality_test(fundamental_forms(ctrl, u, v)).classification == Classification::NotConformal,
                  "control paraboloid not NotConformal");
    if (c.pass) c.detail = std::to_string(n) + " conformal families, max K-law error " + fmt("%.2e", worst);
    return c;
}

Criterion ac3() {
    std::mt19937 rng(3);
    Criterion c;
    double worst = 0.0;
    for (const auto& info : list_families()) {
        if (!info.conformal || info.space.is_timelike()) continue;
        const SurfaceChart s = make_surface(fam(info.key));
        const double sign = s.space().is_hyperbolic() ? -1.0 : 1.0;
        for (const auto& [u, v] : random_points(s.domain(), 20, rng)) {
            const FormBundle b = fundamental_forms(s, u, v);
            const ConformalityReport r = conformality_test(b);
            if (!r.rho) {
                c.require(false, info.key + " has no rho");
                continue;
            }
            const double d = std::abs(*r.rho - 2.0 * (b.H + sign * b.eta_top()));
            worst = std::max(worst, d);
            c.require(d <= 1e-8, info.key + fmt(" rho off by %.3g", d));
        }
    }
    if (c.pass) c.detail = "max rho error " + fmt("%.2e", worst);
    return c;
}

Criterion ac4() {
    Criterion c;
    double law = 0.0, dp = 0.0, fit = 0.0;
    for (const auto& info : list_families()) {
        if (info.needs_orientation) continue;
        const SurfaceChart s = make_surface(fam(info.key));
        const SurfaceChart dual = polar_chart(s);
        for (const auto& [u, v] : inner_grid(s.domain(), 4)) {
            const PolarPoint p = polar_variety(s, u, v);
            const double d = double_polarity_defect(s, u, v);
            dp = std::max(dp, d);
            c.require(d <= 1e-8, info.key + fmt(" double polarity %.3g", d));
            if (p.branch_flag) continue;
            const double e = std::abs(*p.dual_K - *p.predicted_K) / std::max(1.0, std::abs(*p.predicted_K));
            law = std::max(law, e);
            c.require(e <= 1e-8, info.key + fmt(" dual curvature law %.3g", e));
            c.require(conformality_test(fundamental_forms(s, u, v)).is_conformal ==
                          conformality_test(fundamental_forms(dual, u, v)).is_conformal,
                      info.key + " conformality differs on the dual");
        }
    }
    for (const char* key : {"translational-6.6", "ruled-6.7", "ruled-6.8", "ruled-7.4-5", "ruled-7.4-6"}) {
        const SurfaceChart s = make_surface(fam(key));
        std::vector<Eigen::Vector3d> pts;
        for (const auto& [u, v] : inner_grid(s.domain(), 5)) pts.push_back(polar_variety(s, u, v).position);
        const IsometryFit f = fit_isometry(pts, *pairing_target(*pairing_partner(fam(key))));
        fit = std::max(fit, f.max_distance);
        c.require(f.max_distance <= 1e-6, std::string(key) + fmt(" pairing distance %.3g", f.max_distance));
        c.require(std::abs(std::abs(f.theta) - M_PI / 2) < 1e-12, std::string(key) + " theta not +-pi/2");
    }
    if (c.pass)
        c.detail = "law " + fmt("%.2e", law) + ", double polarity " + fmt("%.2e", dp) + ", pairing fit " + fmt("%.2e", fit);
    return c;
}

double dual_graph_residual(const GraphExpr& f, GraphDirection dir, GraphPde target, double u, double v,
                           const AmbientSpace& space) {
    const SurfaceChart img = graph_dual_chart(f, dir, {u - 0.1, u + 0.1, v - 0.1, v + 0.1});
    if (img.space().is_timelike() != space.is_timelike() || img.space().is_hyperbolic() != space.is_hyperbolic())
        throw std::logic_error("dual chart lands in the wrong space");
    return std::abs(pde_residual(graph_jet_from_parametric(jet2_eval(img, u, v)), target).residual);
}

Criterion ac5() {
    std::mt19937 rng(5);
    Criterion c;
    double worst = 0.0, dual = 0.0;
    auto check = [&](const GraphExpr& f, const Domain& d, GraphPde eq, const std::string& what) {
        for (const auto& [u, v] : random_points(d, 20, rng)) {
            const double r = std::abs(graph_pde_residual(f, u, v, eq).residual);
            worst = std::max(worst, r);
            c.require(r <= 1e-10, what + fmt(" residual %.3g", r));
        }
    };
    const Domain unit{-1, 1, -1, 1};
    check(parse_graph_expr("1"), unit, GraphPde::Hyperbolic, "f = 1");
    check(parse_graph_expr("3 + 0.5*u - 0.25*v"), unit, GraphPde::Hyperbolic, "plane graph");
    for (const char* key : {"translational-6.3+", "translational-6.3-", "corollary-6+", "corollary-6-", "corollary-7+",
                            "corollary-7-", "translational-7.3-1+", "translational-7.3-1-", "translational-7.3-2+",
                            "translational-7.3-2-", "translational-7.3-3+", "translational-7.3-3-", "translational-7.3-4"})
        check(*family_graph(fam(key)), family_info(key).domain, GraphPde::DeSitter, key);

    const auto h = AmbientSpace::hyperbolic(), ds = AmbientSpace::de_sitter();
    const auto tl = AmbientSpace::de_sitter(3, CausalClass::TimeLike);
    struct Case {
        const char* key;
        GraphDirection dir;
        GraphPde eq;
        AmbientSpace space;
    };
    for (const Case& k : {Case{"graph-6.6+", GraphDirection::H3toDS3, GraphPde::DeSitter, ds},
                          Case{"graph-6.6-", GraphDirection::H3toDS3, GraphPde::DeSitter, ds},
                          Case{"translational-6.3+", GraphDirection::DS3toH3, GraphPde::Hyperbolic, h},
                          Case{"corollary-6+", GraphDirection::DS3toH3, GraphPde::Hyperbolic, h},
                          Case{"translational-7.3-1+", GraphDirection::DS3toDS3, GraphPde::DeSitter, tl}}) {
        const GraphExpr f = *family_graph(fam(k.key));
        for (const auto& [u, v] : inner_grid(family_info(k.key).domain, 3)) {
            const double r = dual_graph_residual(f, k.dir, k.eq, u, v, k.space);
            dual = std::max(dual, r);
            c.require(r <= 1e-6, std::string(k.key) + fmt(" dual graph residual %.3g", r));
        }
    }
    if (c.pass) c.detail = "max residual " + fmt("%.2e", worst) + ", graph duality " + fmt("%.2e", dual);
    return c;
}

Criterion ac6() {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto id = [](Complex z) { return z; };
    const auto case1 = WeierstrassCase::Holo_gAbsGt1;
    std::vector<double> cont, grec;
    double disc = 0.0, ident = 0.0, eta = 0.0;
    for (int n : {17, 33, 65}) {
        const Grid gr = Grid::over(1.5, 2.5, 0.1, 0.9, n, n);
        const ComplexField g(gr, FieldRole::NormalMap_g, id);
        const ComplexField G = solve_G(g, radial_test_G, case1);
        disc = std::max(disc, discrete_residual(g, G, case1));
        const int stride = (n - 1) / 16;
        double w = 0.0;
        for (int j = 2; j <= 14; ++j)
            for (int i = 2; i <= 14; ++i) w = std::max(w, std::abs(continuum_residual(g, G, i * stride, j * stride, case1)));
        cont.push_back(w);
        const BuiltSurface s = build_surface(g, G, case1);
        double gw = 0.0;
        for (const auto& d : s.diagnostics) {
            if (!d.kept) continue;
            ident = std::max(ident, d.identity_defect / (1.0 + std::abs(G.at(d.i, d.j))));
            if (const auto chk = check_built_point(s, d.i, d.j)) {
                gw = std::max(gw, std::abs(chk->g_recovered - g.at(d.i, d.j)));
                eta = std::max(eta, std::abs(chk->forms.eta_top() - d.eta3_formula));
            }
        }
        grec.push_back(gw);
    }
    const double o1 = std::log2(cont[0] / cont[1]), o2 = std::log2(cont[1] / cont[2]);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(disc <= 1e-10, fmt("discrete residual %.3g", disc));
    c.require(o1 >= 1.9 && o2 >= 1.9, fmt("order %.3f", o1) + fmt(" / %.3f", o2));
    c.require(ident <= 1e-12, fmt("identity defect %.3g", ident));
    c.require(grec[1] <= 3e-2, fmt("g recovery %.3g at 33", grec[1]));
    c.require(grec[2] < grec[1] && grec[1] < grec[0], "g recovery does not improve");
    c.require(eta <= 3e-2, fmt("eta3 error %.3g", eta));
    c.require(secs < 60.0, fmt("took %.1f s", secs));
    if (c.pass)
        c.detail = fmt("discrete %.2e", disc) + fmt(", orders %.3f", o1) + fmt("/%.3f", o2) +
                   fmt(", identity %.2e", ident) + fmt(", g recovery %.2e at 33", grec[1]) + fmt(", eta3 %.2e", eta);
    return c;
}

Criterion ac7() {
    Criterion c;
    double iv = 0.0, br = 0.0;
    for (const auto& info : list_families()) {
        const SurfaceChart s = make_surface(fam(info.key));
        for (const auto& [u, v] : inner_grid(s.domain(), 4)) {
            const FormBundle b = fundamental_forms(s, u, v);
            const double d = (fourth_form_direct(s, u, v) - b.IV).norm() / std::max(1.0, b.IV.norm());
            iv = std::max(iv, d);
            c.require(d <= 1e-4, info.key + fmt(" fourth form %.3g", d));
            if (info.space.is_timelike()) continue;
            const double e = std::abs(intrinsic_gauss_curvature(s, u, v) - b.K);
            br = std::max(br, e);
            c.require(e <= 1e-3, info.key + fmt(" Brioschi %.3g", e));
        }
    }
    if (c.pass) c.detail = "fourth form " + fmt("%.2e", iv) + ", Brioschi " + fmt("%.2e", br);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Criterion()>>> all = {
        {"AC1 Obata identity", ac1},          {"AC2 conformality classification", ac2},
        {"AC3 rho formula", ac3},              {"AC4 duality", ac4},
        {"AC5 graph equations", ac5},          {"AC6 Weierstrass solver", ac6},
        {"AC7 cross-validation", ac7}};
    int failures = 0;
    for (const auto& [name, f] : all) {
        const Criterion c = guarded(f);
        std::printf("%s %s: %s\n", c.pass ? "PASS" : "FAIL", name, c.detail.c_str());
        failures += !c.pass;
    }
    return failures == 0 ? 0 : 1;
}
