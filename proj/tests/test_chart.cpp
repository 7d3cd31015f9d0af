#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hsurf/chart.hpp"
#include "hsurf/errors.hpp"
#include "hsurf/zoo.hpp"

using namespace hsurf;

namespace {

SurfaceChart family(const std::string& key) { return make_surface({key, {}, {}, {}, {}}); }

}  // namespace

TEST(Chart, HorosphereGraphJet) {
    const auto c = SurfaceChart::graph(parse_graph_expr("1"), {-1, 1, -1, 1}, AmbientSpace::hyperbolic());
    const Jet2 j = jet2_eval(c, 0.3, -0.2);
    EXPECT_NEAR((j.x - Eigen::Vector3d(0.3, -0.2, 1.0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((j.du.col(0) - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((j.du.col(1) - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-15);
    for (const auto& m : j.duu) EXPECT_EQ(m.norm(), 0.0);
}

TEST(Chart, RuledJetAtOneOne) {
    const Jet2 j = jet2_eval(family("ruled-6.2-2"), 1.0, 1.0);
    EXPECT_NEAR((j.x - Eigen::Vector3d(std::cosh(1.0), std::sinh(1.0), std::sinh(1.0))).norm(), 0.0, 1e-15);
    EXPECT_NEAR((j.du.col(0) - Eigen::Vector3d(std::cosh(1.0), 0, std::sinh(1.0))).norm(), 0.0, 1e-15);
    EXPECT_NEAR(j.second(0, 1)(0), std::sinh(1.0), 1e-15);
}

TEST(Chart, NumericJetMatchesExact) {
    const SurfaceChart exact = family("ruled-6.2-2");
    const SurfaceChart num = SurfaceChart::numeric("num", [&](double u, double v) { return exact.position(u, v); },
                                                   exact.domain(), exact.space());
    const Jet2 a = jet2_eval(exact, 1.0, 1.0), b = jet2_eval(num, 1.0, 1.0);
    EXPECT_LT((a.du - b.du).cwiseAbs().maxCoeff(), 1e-6);
    for (int k = 0; k < 3; ++k) EXPECT_LT((a.duu[k] - b.duu[k]).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(Chart, GraphJetsMatchFiniteDifferences) {
    std::mt19937 rng(7);
    for (const auto& info : list_families()) {
        if (!info.is_graph) continue;
        const SurfaceChart c = family(info.key);
        const Domain& d = c.domain();
        std::uniform_real_distribution<double> U(0.05, 0.95);
        for (int k = 0; k < 100; ++k) {
            const double u = d.u0 + (d.u1 - d.u0) * U(rng), v = d.v0 + (d.v1 - d.v0) * U(rng);
            const Jet2 j = jet2_eval(c, u, v);
            const double h = 1e-5, H = 2e-3;
            auto P = [&](double dv) { return c.position(u, v + dv); };
            const Eigen::Vector3d fu = (c.position(u + h, v) - c.position(u - h, v)) / (2 * h);
            const Eigen::Vector3d fvv = (-P(2 * H) + 16 * P(H) - 30 * P(0) + 16 * P(-H) - P(-2 * H)) / (12 * H * H);
            const double scale = std::max(1.0, j.second(1, 1).cwiseAbs().maxCoeff());
            ASSERT_LT((j.du.col(0) - fu).cwiseAbs().maxCoeff(), 1e-6) << info.key;
            ASSERT_LT((j.second(1, 1) - fvv).cwiseAbs().maxCoeff(), 1e-6 * scale) << info.key;
        }
    }
}

TEST(Chart, DomainAndHeightErrors) {
    const SurfaceChart c = family("horosphere");
    try {
        jet2_eval(c, 5.0, 0.0);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutsideDomain);
    }
    const auto low = SurfaceChart::graph(parse_graph_expr("u"), {-1, 1, -1, 1}, AmbientSpace::hyperbolic());
    try {
        jet2_eval(low, -0.5, 0.0);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::HeightViolation);
    }
    const auto flat = SurfaceChart::closed_form(
        "degenerate",
        taylor_from_formula([](const Series& u, const Series&) { return std::array<Series, 3>{u, u, 1.0 + 0.0 * u}; }),
        {-1, 1, -1, 1}, AmbientSpace::hyperbolic());
    try {
        jet2_eval(flat, 0.1, 0.1);
        FAIL();
    } catch (const GeometryError& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonImmersed);
    }
}

TEST(Chart, ImplicitGraphOfParametricSurface) {
    // The graph surface seen through its own parametrisation gives its own jet back.
    const GraphExpr f = parse_graph_expr("sqrt(1+u^2) + sqrt(1+v^2)");
    const auto c = SurfaceChart::graph(f, {-1, 1, -1, 1}, AmbientSpace::de_sitter());
    const GraphJet a = graph_jet(f, 0.3, -0.4);
    const GraphJet b = graph_jet_from_parametric(jet2_eval(c, 0.3, -0.4));
    EXPECT_NEAR(a.f, b.f, 1e-14);
    EXPECT_NEAR(a.fu, b.fu, 1e-14);
    EXPECT_NEAR(a.fuv, b.fuv, 1e-13);
    EXPECT_NEAR(a.fvv, b.fvv, 1e-13);
}
