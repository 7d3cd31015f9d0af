#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "hsurf/errors.hpp"
#include "hsurf/forms.hpp"
#include "hsurf/zoo.hpp"

using namespace hsurf;

namespace {

FamilyParams fam(const std::string& key, std::map<std::string, double> p = {}) {
    return {key, std::move(p), {}, {}, {}};
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const GeometryError& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Zoo, RegistryIsLargeAndUnique) {
    const auto& all = list_families();
    EXPECT_GE(all.size(), 14u);
    std::set<std::string> keys;
    for (const auto& f : all) EXPECT_TRUE(keys.insert(f.key).second) << f.key;
    EXPECT_EQ(family_info("translational-6.3").key, "translational-6.3+");
}

TEST(Zoo, RuledSurfaceAtOneOne) {
    const SurfaceChart c = make_surface(fam("ruled-6.2-2", {{"c", 1.0}}));
    const Eigen::Vector3d x = c.position(1.0, 1.0);
    EXPECT_NEAR(x(0), std::cosh(1.0), 1e-15);
    EXPECT_NEAR(x(1), std::sinh(1.0), 1e-15);
    EXPECT_NEAR(x(2), std::sinh(1.0), 1e-15);
}

TEST(Zoo, TranslationalAtOrigin) {
    const SurfaceChart c = make_surface(fam("translational-6.4"));
    EXPECT_NEAR((c.position(0, 0) - Eigen::Vector3d(0, 0, 2)).norm(), 0.0, 1e-15);
}

TEST(Zoo, ParameterAndDomainErrors) {
    EXPECT_EQ(code_of([] { make_surface(fam("translational-6.3", {{"a", 0.0}})); }), ErrorCode::ParamConstraint);
    EXPECT_EQ(code_of([] { make_surface(fam("nosuchfamily")); }), ErrorCode::UnknownFamily);
    EXPECT_EQ(code_of([] { make_surface(fam("ruled-6.2-2", {{"q", 1.0}})); }), ErrorCode::ParamConstraint);
    FamilyParams bad = fam("ruled-6.2-2");
    bad.domain = Domain{-1.0, 1.0, 0.7, 2.0};
    EXPECT_EQ(code_of([&] { make_surface(bad); }), ErrorCode::DomainConstraint);
}

TEST(Zoo, DefaultDomainsAreValid) {
    for (const auto& info : list_families()) {
        const SurfaceChart c = make_surface(fam(info.key));
        EXPECT_EQ(c.space().is_timelike(), info.space.is_timelike()) << info.key;
        EXPECT_NO_THROW(fundamental_forms(c, c.domain().cu(), c.domain().cv())) << info.key;
    }
}

TEST(Zoo, PdeExamples) {
    EXPECT_LE(std::abs(graph_pde_residual(parse_graph_expr("1"), 0.2, 0.3, GraphPde::Hyperbolic).residual), 1e-15);
    EXPECT_LE(std::abs(graph_pde_residual(parse_graph_expr("2 + 0.3*u - 0.4*v"), 0.2, 0.3, GraphPde::Hyperbolic).residual),
              1e-15);
    EXPECT_LE(std::abs(graph_pde_residual(parse_graph_expr("u*v/sqrt(1+v^2)"), 0.3, 0.5, GraphPde::DeSitter).residual),
              1e-12);
    // Hand computation: f = 1 + u^2 gives f det + tr = 2 (1 + 0) = 2 at v-independent slices.
    EXPECT_NEAR(graph_pde_residual(parse_graph_expr("1 + u^2"), 0.0, 0.0, GraphPde::Hyperbolic).residual, 2.0, 1e-15);
}

TEST(Zoo, GraphFamiliesSolveTheirEquation) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> U(0.02, 0.98);
    for (const auto& info : list_families()) {
        if (!info.is_graph) continue;
        const FamilyParams fp = fam(info.key);
        const auto f = family_graph(fp);
        ASSERT_TRUE(f) << info.key;
        const GraphPde eq = info.space.is_hyperbolic() ? GraphPde::Hyperbolic : GraphPde::DeSitter;
        const Domain& d = info.domain;
        for (int k = 0; k < 20; ++k) {
            const double u = d.u0 + (d.u1 - d.u0) * U(rng), v = d.v0 + (d.v1 - d.v0) * U(rng);
            const PdeResidual r = graph_pde_residual(*f, u, v, eq);
            if (info.key == "control-paraboloid") {
                EXPECT_GT(std::abs(r.residual), 1e-3);
                continue;
            }
            ASSERT_LE(std::abs(r.residual), 1e-10) << info.key << " " << u << " " << v;
            if (info.space.is_timelike())
                EXPECT_GT(r.regime, 0.0) << info.key;
            else if (!info.space.is_hyperbolic())
                EXPECT_LT(r.regime, 0.0) << info.key;
        }
    }
}

TEST(Zoo, TranslationalRegimes) {
    const auto p = *family_graph(fam("translational-6.3+"));
    const auto m = *family_graph(fam("translational-6.3-"));
    const auto t = *family_graph(fam("translational-7.3-4"));
    EXPECT_LT(graph_pde_residual(p, 0.5, 0.5, GraphPde::DeSitter).regime, 0.0);
    EXPECT_LT(graph_pde_residual(m, 0.5, 0.5, GraphPde::DeSitter).regime, 0.0);
    EXPECT_GT(graph_pde_residual(t, 4.0, 0.0, GraphPde::DeSitter).regime, 0.0);
}

TEST(Zoo, FlahertyGraphs) {
    for (const auto& psi : flaherty_psi_choices()) {
        for (const char* key : {"flaherty-7.3-5+", "flaherty-7.3-5-"}) {
            FamilyParams fp = fam(key);
            fp.curve = psi;
            const auto f = family_graph(fp);
            ASSERT_TRUE(f);
            const Domain& d = family_info(key).domain;
            const double u = d.cu(), v = d.cv();
            const PdeResidual r = graph_pde_residual(*f, u, v, GraphPde::DeSitter);
            EXPECT_LE(std::abs(r.residual), 1e-12) << key << " " << psi;
            // f_u = +-1, so the regime equals psi'(v)^2.
            const double dpsi = graph_jet(parse_graph_expr(psi), u, v).fv;
            EXPECT_NEAR(r.regime, dpsi * dpsi, 1e-12);
            EXPECT_EQ(conformality_test(fundamental_forms(make_surface(fp), u, v)).classification,
                      Classification::Conformal);
        }
    }
}

TEST(Zoo, CorollaryExamples) {
    for (const char* key : {"corollary-6+", "corollary-6-"}) {
        const auto f = *family_graph(fam(key, {{"c1", 1.0}, {"c2", 2.0}}));
        EXPECT_LE(std::abs(graph_pde_residual(f, 0.3, 0.5, GraphPde::DeSitter).residual), 1e-10) << key;
    }
    for (const char* key : {"corollary-7+", "corollary-7-"}) {
        const auto f = *family_graph(fam(key, {{"c1", 1.0}, {"c2", 2.0}}));
        EXPECT_LE(std::abs(graph_pde_residual(f, 0.3, 1.5, GraphPde::DeSitter).residual), 1e-10) << key;
    }
}

TEST(Zoo, CylinderIsConformalWithOrientation) {
    const SurfaceChart c = make_surface(fam("cylinder-7.4-2"));
    ASSERT_TRUE(c.orientation());
    const FormBundle b = fundamental_forms(c, c.domain().cu(), c.domain().cv());
    EXPECT_NEAR(b.eta_top(), 0.0, 1e-12);
    EXPECT_EQ(conformality_test(b).classification, Classification::Conformal);
    EXPECT_NEAR(b.K, gauss_constants(c.space()).first, 1e-10);
}

TEST(Zoo, ParamsResolveToDefaults) {
    const auto p = resolve_params(fam("ruled-6.8", {{"c2", 3.0}}));
    EXPECT_EQ(p.at("c1"), 1.0);
    EXPECT_EQ(p.at("c2"), 3.0);
}

// The pairing partner of a source is the family its polar lands on; the
// hyperbolic sources map into de Sitter space and the time-like ones stay.
TEST(Zoo, PairingPartners) {
    EXPECT_EQ(pairing_partner(fam("ruled-6.7", {{"c", 2.0}}))->params.at("c"), -2.0);
    EXPECT_EQ(pairing_partner(fam("ruled-7.4-5", {{"c", 2.0}}))->params.at("c"), 2.0);
    EXPECT_FALSE(pairing_partner(fam("horosphere")));
    EXPECT_FALSE(pairing_target(fam("horosphere")));
    for (const char* k : {"translational-6.6", "ruled-6.7", "ruled-6.8", "ruled-7.4-5", "ruled-7.4-6"}) {
        const auto p = pairing_partner(fam(k));
        ASSERT_TRUE(p);
        EXPECT_TRUE(pairing_target(*p)) << k;
    }
}
