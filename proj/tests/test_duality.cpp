#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hsurf/duality.hpp"
#include "hsurf/errors.hpp"
#include "hsurf/forms.hpp"
#include "hsurf/zoo.hpp"

using namespace hsurf;

namespace {

FamilyParams fam(const std::string& key, std::map<std::string, double> p = {}) {
    return {key, std::move(p), {}, {}, {}};
}

std::vector<std::pair<double, double>> inner_grid(const Domain& d, int n) {
    std::vector<std::pair<double, double>> pts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            pts.emplace_back(d.u0 + (d.u1 - d.u0) * (0.1 + 0.8 * i / (n - 1)),
                             d.v0 + (d.v1 - d.v0) * (0.1 + 0.8 * j / (n - 1)));
    return pts;
}

}  // namespace

TEST(Duality, CurvatureTransferFormulas) {
    EXPECT_DOUBLE_EQ(curvature_transfer(1.0, TransferDirection::HtoDS), 0.5);
    EXPECT_DOUBLE_EQ(curvature_transfer(-0.5, TransferDirection::DStoH), -0.5 / 1.5);
    EXPECT_DOUBLE_EQ(curvature_transfer(3.0, TransferDirection::DSTimelike), 1.5);
    // Each transfer followed by its inverse is the identity.
    for (double K : {-3.0, -0.2, 0.4, 2.5}) {
        EXPECT_NEAR(curvature_transfer(curvature_transfer(K, TransferDirection::HtoDS), TransferDirection::DStoH), K, 1e-13);
        EXPECT_NEAR(curvature_transfer(curvature_transfer(K, TransferDirection::DSTimelike), TransferDirection::DSTimelike),
                    K, 1e-13);
    }
    for (auto [K, d] : {std::pair{-1.0, TransferDirection::HtoDS}, std::pair{1.0, TransferDirection::DStoH},
                        std::pair{1.0, TransferDirection::DSTimelike}}) {
        try {
            curvature_transfer(K, d);
            FAIL();
        } catch (const GeometryError& e) {
            EXPECT_EQ(e.code(), ErrorCode::BranchPoint);
        }
    }
}

TEST(Duality, DualSpaces) {
    EXPECT_FALSE(dual_space(AmbientSpace::hyperbolic()).is_hyperbolic());
    EXPECT_TRUE(dual_space(AmbientSpace::de_sitter()).is_hyperbolic());
    EXPECT_TRUE(dual_space(AmbientSpace::de_sitter(3, CausalClass::TimeLike)).is_timelike());
    EXPECT_THROW(dual_space(AmbientSpace::hyperbolic(4)), GeometryError);
}

TEST(Duality, PolarPointLiesOnDualQuadric) {
    for (const auto& info : list_families()) {
        if (info.needs_orientation) continue;
        const SurfaceChart c = make_surface(fam(info.key));
        const PolarPoint p = polar_variety(c, c.domain().cu(), c.domain().cv());
        EXPECT_NEAR(p.minkowski.quadric_residual(), 0.0, 1e-10) << info.key;
        EXPECT_NEAR(p.eta3_relation, 0.0, 1e-10) << info.key;
        EXPECT_GT(p.position(2), 0.0) << info.key;
    }
}

TEST(Duality, EquatorialNormalRejected) {
    const SurfaceChart c = make_surface(fam("geodesic-plane"));
    try {
        polar_variety(c, 0.0, 1.0);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::EquatorialNormal);
    }
}

TEST(Duality, CurvatureLawOnEveryFamily) {
    for (const auto& info : list_families()) {
        if (info.needs_orientation) continue;
        const SurfaceChart c = make_surface(fam(info.key));
        for (const auto& [u, v] : inner_grid(c.domain(), 4)) {
            const PolarPoint p = polar_variety(c, u, v);
            if (p.branch_flag) continue;
            ASSERT_TRUE(p.dual_K && p.predicted_K);
            EXPECT_LE(std::abs(*p.dual_K - *p.predicted_K) / std::max(1.0, std::abs(*p.predicted_K)), 1e-8)
                << info.key << " " << u << " " << v;
        }
    }
}

TEST(Duality, DoublePolarityReturnsSource) {
    for (const auto& info : list_families()) {
        if (info.needs_orientation) continue;
        const SurfaceChart c = make_surface(fam(info.key));
        for (const auto& [u, v] : inner_grid(c.domain(), 3))
            EXPECT_LE(double_polarity_defect(c, u, v), 1e-8) << info.key;
    }
}

TEST(Duality, ConformalityIsPreserved) {
    for (const auto& info : list_families()) {
        if (info.needs_orientation) continue;
        const SurfaceChart c = make_surface(fam(info.key));
        const SurfaceChart d = polar_chart(c);
        for (const auto& [u, v] : inner_grid(c.domain(), 3)) {
            if (polar_variety(c, u, v).branch_flag) continue;
            EXPECT_EQ(conformality_test(fundamental_forms(c, u, v)).is_conformal,
                      conformality_test(fundamental_forms(d, u, v)).is_conformal)
                << info.key;
        }
    }
}

TEST(Duality, PairingsFitTheirPartners) {
    const std::vector<FamilyParams> sources = {
        fam("translational-6.6", {{"a", 1.0}, {"b", 1.5}}), fam("ruled-6.7", {{"c", 0.8}}),
        fam("ruled-6.8", {{"c1", 1.2}, {"c2", 0.7}}), fam("ruled-7.4-5", {{"c", 1.3}}),
        fam("ruled-7.4-6", {{"c1", 0.9}, {"c2", 1.1}})};
    for (const auto& fp : sources) {
        const auto partner = pairing_partner(fp);
        ASSERT_TRUE(partner) << fp.name;
        const auto target = pairing_target(*partner);
        ASSERT_TRUE(target) << fp.name;
        const SurfaceChart c = make_surface(fp);
        std::vector<Eigen::Vector3d> pts;
        for (const auto& [u, v] : inner_grid(c.domain(), 5)) pts.push_back(polar_variety(c, u, v).position);
        const IsometryFit f = fit_isometry(pts, *target);
        EXPECT_LE(f.max_distance, 1e-8) << fp.name;
        EXPECT_NEAR(std::abs(f.theta), M_PI / 2, 1e-12) << fp.name;
    }
}

// The time-like partners fit for a single parameter sign only.
TEST(Duality, TimelikePairingSignSearch) {
    const SurfaceChart c = make_surface(fam("ruled-7.4-5", {{"c", 1.3}}));
    std::vector<Eigen::Vector3d> pts;
    for (const auto& [u, v] : inner_grid(c.domain(), 4)) pts.push_back(polar_variety(c, u, v).position);
    const double good = fit_isometry(pts, *pairing_target(fam("ruled-7.4-3", {{"c", 1.3}}))).max_distance;
    double bad = INFINITY;
    try {
        bad = fit_isometry(pts, *pairing_target(fam("ruled-7.4-3", {{"c", 2.6}}))).max_distance;
    } catch (const GeometryError&) {
    }
    EXPECT_LE(good, 1e-8);
    EXPECT_GT(bad, 1e-4);
}

namespace {

// Dualizes the graph of f and measures the other space's graph equation on the
// image, whose jets come from the exact dual chart.
double dual_graph_residual(const GraphExpr& f, GraphDirection dir, GraphPde target, double u, double v,
                           const AmbientSpace& space) {
    const SurfaceChart img = graph_dual_chart(f, dir, {u - 0.1, u + 0.1, v - 0.1, v + 0.1});
    if (img.space().is_timelike() != space.is_timelike() || img.space().is_hyperbolic() != space.is_hyperbolic())
        throw std::logic_error("dual chart lands in the wrong space");
    return pde_residual(graph_jet_from_parametric(jet2_eval(img, u, v)), target).residual;
}

}  // namespace

TEST(Duality, GraphDualityCarriesSolutions) {
    const auto h = AmbientSpace::hyperbolic(), ds = AmbientSpace::de_sitter();
    const auto tl = AmbientSpace::de_sitter(3, CausalClass::TimeLike);
    const GraphExpr f61 = *family_graph(fam("graph-6.6+"));
    const GraphExpr f62 = *family_graph(fam("translational-6.3+"));
    const GraphExpr f73 = *family_graph(fam("translational-7.3-1+"));
    EXPECT_LE(std::abs(graph_pde_residual(f61, 0.3, 0.2, GraphPde::Hyperbolic).residual), 1e-12);
    EXPECT_LE(std::abs(graph_pde_residual(f62, 0.3, 0.2, GraphPde::DeSitter).residual), 1e-12);
    EXPECT_LE(std::abs(dual_graph_residual(f61, GraphDirection::H3toDS3, GraphPde::DeSitter, 0.3, 0.2, ds)), 1e-9);
    EXPECT_LE(std::abs(dual_graph_residual(f62, GraphDirection::DS3toH3, GraphPde::Hyperbolic, 0.3, 0.2, h)), 1e-9);
    EXPECT_LE(std::abs(dual_graph_residual(f73, GraphDirection::DS3toDS3, GraphPde::DeSitter, 2.5, 2.5, tl)), 1e-9);
    // A non-solution does not become one.
    const GraphExpr bump = parse_graph_expr("2 + u^2/4");
    EXPECT_GT(std::abs(dual_graph_residual(bump, GraphDirection::H3toDS3, GraphPde::DeSitter, 0.3, 0.2, ds)), 1e-2);
}

// The exact chart and the pointwise map agree, and finite differences of the
// pointwise map reproduce the chart's jets.
TEST(Duality, GraphDualChartMatchesPointwiseMap) {
    const GraphExpr f = *family_graph(fam("graph-6.6+"));
    const SurfaceChart c = graph_dual_chart(f, GraphDirection::H3toDS3, {-1, 1, -0.5, 0.5});
    const auto P = [&](double a, double b) {
        const GraphJet j = graph_jet(f, a, b);
        return graph_dualize(a, b, j.f, j.fu, j.fv, GraphDirection::H3toDS3);
    };
    const double u = 0.3, v = 0.2, h = 1e-2;
    EXPECT_NEAR((c.position(u, v) - P(u, v)).norm(), 0.0, 1e-15);
    const Jet2 j = jet2_eval(c, u, v);
    const Eigen::Vector3d xuu =
        (-P(u + 2 * h, v) + 16 * P(u + h, v) - 30 * P(u, v) + 16 * P(u - h, v) - P(u - 2 * h, v)) / (12 * h * h);
    EXPECT_LE((j.second(0, 0) - xuu).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Duality, GraphDualizeCausality) {
    EXPECT_THROW(graph_dualize(0, 0, 1.0, 1.0, 0.5, GraphDirection::DS3toH3), GeometryError);
    EXPECT_THROW(graph_dualize(0, 0, 1.0, 0.1, 0.1, GraphDirection::DS3toDS3), GeometryError);
    EXPECT_THROW(graph_dualize(0, 0, -1.0, 0.1, 0.1, GraphDirection::H3toDS3), GeometryError);
    // H3 -> DS3 -> H3 returns the point (hand computation for a flat slice).
    const Eigen::Vector3d y = graph_dualize(0.4, -0.2, 2.0, 0.0, 0.0, GraphDirection::H3toDS3);
    EXPECT_NEAR((y - Eigen::Vector3d(-0.4, 0.2, 2.0)).norm(), 0.0, 1e-15);
}
