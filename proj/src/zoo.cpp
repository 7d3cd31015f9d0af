#include "hsurf/zoo.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <variant>

#include "hsurf/errors.hpp"

namespace hsurf {

namespace {

using P = std::map<std::string, double>;
using S3 = std::array<Series, 3>;
using Builder = std::function<std::variant<TaylorMap, std::string>(const P&, const std::string& curve)>;

constexpr double kPi = std::numbers::pi;

struct Def {
    FamilyInfo info;
    Builder build;
};

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "(%.17g)", x);
    return buf;
}

TaylorMap formula(std::function<S3(const Series&, const Series&)> f) { return taylor_from_formula(std::move(f)); }

ParamSpec nz(const std::string& n, double d) { return {n, d, true, false}; }
ParamSpec pos(const std::string& n, double d) { return {n, d, true, true}; }

AmbientSpace H() { return AmbientSpace::hyperbolic(3); }
AmbientSpace DS() { return AmbientSpace::de_sitter(3, CausalClass::SpaceLike); }
AmbientSpace TL() { return AmbientSpace::de_sitter(3, CausalClass::TimeLike); }

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

/// alpha(v) + u * beta for a constant beta.
TaylorMap cylinder(const std::string& alpha, Eigen::Vector3d beta) {
    const auto parts = split_commas(alpha);
    if (parts.size() != 3) fail(ErrorCode::ParamConstraint, "curve needs three comma-separated components");
    std::vector<GraphExpr> a;
    for (const auto& p : parts) a.push_back(parse_graph_expr(p));
    return formula([a, beta](const Series& u, const Series& v) {
        return S3{a[0].eval(u, v) + beta(0) * u, a[1].eval(u, v) + beta(1) * u, a[2].eval(u, v) + beta(2) * u};
    });
}

std::vector<Def> build_registry() {
    std::vector<Def> r;
    auto add = [&](FamilyInfo info, Builder b) { r.push_back({std::move(info), std::move(b)}); };
    const Domain circ{0.1, kPi - 0.1, 0.1, kPi - 0.1};

    // Hyperbolic space.
    add({"horosphere", "(u, v, c)", H(), {pos("c", 1.0)}, {-1, 1, -1, 1}, true, true, false, ""},
        [](const P& p, const std::string&) { return num(p.at("c")); });
    add({"geodesic-plane", "(u, 0, v)", H(), {}, {-1, 1, 0.5, 2}, false, false, true, ""},
        [](const P&, const std::string&) {
            return formula([](const Series& u, const Series& v) { return S3{u, Series(0.0, u.order()), v}; });
        });
    add({"equidistant-plane", "(u, v, m u)", H(), {pos("m", 1.0)}, {0.5, 2, -1, 1}, true, true, false, ""},
        [](const P& p, const std::string&) { return num(p.at("m")) + "*u"; });
    add({"control-paraboloid", "(u, v, 1 + u^2 + v^2)", H(), {}, {-0.3, 0.3, -0.3, 0.3}, false, true, false, ""},
        [](const P&, const std::string&) { return std::string("1 + u^2 + v^2"); });
    add({"translational-6.6", "(a cos u, b cos v, a sin u + b sin v)", H(), {nz("a", 1), nz("b", 1)}, circ, true,
         false, false, ""},
        [](const P& p, const std::string&) {
            const double a = p.at("a"), b = p.at("b");
            return formula([a, b](const Series& u, const Series& v) {
                return S3{a * cos(u), b * cos(v), a * sin(u) + b * sin(v)};
            });
        });
    add({"ruled-6.7", "(u cos v, c sin v, u sin v)", H(), {nz("c", 1)}, {0.2, 2, 0.1, kPi / 2 - 0.1}, true, false,
         false, ""},
        [](const P& p, const std::string&) {
            const double c = p.at("c");
            return formula([c](const Series& u, const Series& v) { return S3{u * cos(v), c * sin(v), u * sin(v)}; });
        });
    add({"ruled-6.8", "(-c2 sin v + u cos v, c1 sin v, c2 cos v + u sin v)", H(), {nz("c1", 1), nz("c2", 1)},
         {0.2, 2, 0.1, kPi / 2 - 0.1}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double c1 = p.at("c1"), c2 = p.at("c2");
            return formula([c1, c2](const Series& u, const Series& v) {
                return S3{-c2 * sin(v) + u * cos(v), c1 * sin(v), c2 * cos(v) + u * sin(v)};
            });
        });
    add({"graph-6.6+", "f = sqrt(a^2 - u^2) + sqrt(b^2 - v^2)", H(), {nz("a", 2), nz("b", 1)}, {-1.5, 1.5, -0.9, 0.9},
         true, true, false, ""},
        [](const P& p, const std::string&) {
            return "sqrt(" + num(p.at("a")) + "^2 - u^2) + sqrt(" + num(p.at("b")) + "^2 - v^2)";
        });
    add({"graph-6.6-", "f = sqrt(a^2 - u^2) - sqrt(b^2 - v^2)", H(), {nz("a", 2), nz("b", 1)}, {-1.5, 1.5, -0.9, 0.9},
         true, true, false, ""},
        [](const P& p, const std::string&) {
            return "sqrt(" + num(p.at("a")) + "^2 - u^2) - sqrt(" + num(p.at("b")) + "^2 - v^2)";
        });

    // Space-like surfaces in de Sitter space.
    auto trans63 = [](const char* sign) {
        return [sign](const P& p, const std::string&) {
            return "sqrt(" + num(p.at("a")) + "^2 + u^2) " + sign + " sqrt(" + num(p.at("b")) + "^2 + v^2)";
        };
    };
    add({"translational-6.3+", "f = sqrt(a^2 + u^2) + sqrt(b^2 + v^2)", DS(), {nz("a", 1), nz("b", 1)},
         {-0.9, 0.9, -0.9, 0.9}, true, true, false, ""},
        trans63("+"));
    add({"translational-6.3-", "f = sqrt(a^2 + u^2) - sqrt(b^2 + v^2)", DS(), {nz("a", 2), nz("b", 1)},
         {-0.9, 0.9, -0.9, 0.9}, true, true, false, ""},
        trans63("-"));
    add({"translational-6.4", "(a sinh u, b sinh v, a cosh u + b cosh v)", DS(), {nz("a", 1), nz("b", 1)},
         {-0.8, 0.8, -0.8, 0.8}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double a = p.at("a"), b = p.at("b");
            return formula([a, b](const Series& u, const Series& v) {
                return S3{a * sinh(u), b * sinh(v), a * cosh(u) + b * cosh(v)};
            });
        });
    add({"ruled-6.2-2", "(u cosh v, c sinh v, u sinh v)", DS(), {nz("c", 1)}, {0.2, 1.2, 0.7, 2}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double c = p.at("c");
            return formula([c](const Series& u, const Series& v) { return S3{u * cosh(v), c * sinh(v), u * sinh(v)}; });
        });
    add({"ruled-6.2-3", "(c2 sinh v + u cosh v, c1 sinh v, c2 cosh v + u sinh v)", DS(), {nz("c1", 1), nz("c2", 1)},
         {0.2, 1.2, 0.7, 2}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double c1 = p.at("c1"), c2 = p.at("c2");
            return formula([c1, c2](const Series& u, const Series& v) {
                return S3{c2 * sinh(v) + u * cosh(v), c1 * sinh(v), c2 * cosh(v) + u * sinh(v)};
            });
        });
    add({"corollary-6+", "f = (c1 c2 + u v)/sqrt(c1^2 + v^2)", DS(), {nz("c1", 1), {"c2", 1, false, false}},
         {0.1, 0.8, 0.1, 0.8}, true, true, false, ""},
        [](const P& p, const std::string&) {
            return "(" + num(p.at("c1")) + "*" + num(p.at("c2")) + " + u*v)/sqrt(" + num(p.at("c1")) + "^2 + v^2)";
        });
    add({"corollary-6-", "f = -(c1 c2 + u v)/sqrt(c1^2 + v^2)", DS(), {nz("c1", 1), {"c2", -1, false, false}},
         {0.1, 0.5, 0.1, 0.5}, true, true, false, ""},
        [](const P& p, const std::string&) {
            return "-(" + num(p.at("c1")) + "*" + num(p.at("c2")) + " + u*v)/sqrt(" + num(p.at("c1")) + "^2 + v^2)";
        });
    add({"horosphere-ds3", "(u, v, c)", DS(), {pos("c", 1.0)}, {-1, 1, -1, 1}, true, true, false, ""},
        [](const P& p, const std::string&) { return num(p.at("c")); });

    // Time-like surfaces in de Sitter space.
    auto graph2 = [&](const std::string& key, const char* l, const char* sign, const char* r, Domain d) {
        const std::string f = std::string("f = sqrt(u^2 ") + l + " a^2) " + sign + " sqrt(v^2 " + r + " b^2)";
        add({key, f, TL(), {nz("a", 1), nz("b", 1)}, d, true, true, false, ""},
            [l = std::string(l), sign = std::string(sign), r = std::string(r)](const P& p, const std::string&) {
                return "sqrt(u^2 " + l + " " + num(p.at("a")) + "^2) " + sign + " sqrt(v^2 " + r + " " +
                       num(p.at("b")) + "^2)";
            });
    };
    graph2("translational-7.3-1+", "+", "+", "+", {1.5, 4, 1.5, 4});
    graph2("translational-7.3-1-", "+", "-", "+", {3, 5, 1.5, 2.5});
    graph2("translational-7.3-2+", "-", "+", "-", {1.2, 3, 1.2, 3});
    graph2("translational-7.3-2-", "-", "-", "-", {2.5, 4, 1.2, 2});
    graph2("translational-7.3-3+", "+", "+", "-", {0.2, 2, 1.2, 3});
    graph2("translational-7.3-3-", "+", "-", "-", {1.5, 3, 1.2, 2});
    graph2("translational-7.3-4", "-", "-", "+", {3, 5, -1, 1});
    add({"flaherty-7.3-5+", "f = u + psi(v)", TL(), {}, {0.5, 2, 0.2, 1.2}, true, true, false, "v"},
        [](const P&, const std::string& psi) { return "u + (" + psi + ")"; });
    add({"flaherty-7.3-5-", "f = -u + psi(v)", TL(), {}, {-2, -0.2, 0.2, 1.2}, true, true, false, "v"},
        [](const P&, const std::string& psi) { return "-u + (" + psi + ")"; });
    add({"plane-7.4-1", "(u, 0, v)", TL(), {}, {-1, 1, 0.5, 2}, false, false, true, ""},
        [](const P&, const std::string&) {
            return formula([](const Series& u, const Series& v) { return S3{u, Series(0.0, u.order()), v}; });
        });
    add({"cylinder-7.4-2", "alpha(v) + u (0, 0, 1)", TL(), {}, {0.5, 2, 0.2, 1.4}, true, false, true,
         "2*cos(v), 2*sin(v), 0"},
        [](const P&, const std::string& alpha) { return cylinder(alpha, {0, 0, 1}); });
    add({"ruled-7.4-3", "(u cosh v, c sinh v, u sinh v)", TL(), {nz("c", 1)}, {4, 6, 0.2, 1}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double c = p.at("c");
            return formula([c](const Series& u, const Series& v) { return S3{u * cosh(v), c * sinh(v), u * sinh(v)}; });
        });
    add({"ruled-7.4-4", "(c2 sinh v + u cosh v, c1 sinh v, c2 cosh v + u sinh v)", TL(), {nz("c1", 1), nz("c2", 1)},
         {4, 6, 0.2, 1}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double c1 = p.at("c1"), c2 = p.at("c2");
            return formula([c1, c2](const Series& u, const Series& v) {
                return S3{c2 * sinh(v) + u * cosh(v), c1 * sinh(v), c2 * cosh(v) + u * sinh(v)};
            });
        });
    add({"ruled-7.4-5", "(u sinh v, c cosh v, u cosh v)", TL(), {nz("c", 1)}, {0.5, 2, 0.2, 1.5}, true, false, false,
         ""},
        [](const P& p, const std::string&) {
            const double c = p.at("c");
            return formula([c](const Series& u, const Series& v) { return S3{u * sinh(v), c * cosh(v), u * cosh(v)}; });
        });
    add({"ruled-7.4-6", "(c2 cosh v + u sinh v, c1 cosh v, c2 sinh v + u cosh v)", TL(), {nz("c1", 1), nz("c2", 1)},
         {0.5, 2, 0.2, 1.5}, true, false, false, ""},
        [](const P& p, const std::string&) {
            const double c1 = p.at("c1"), c2 = p.at("c2");
            return formula([c1, c2](const Series& u, const Series& v) {
                return S3{c2 * cosh(v) + u * sinh(v), c1 * cosh(v), c2 * sinh(v) + u * cosh(v)};
            });
        });
    add({"flaherty-7.4-7", "alpha(v) + u (1, 0, 1)", TL(), {}, {-1, 1, 0.2, 1.4}, true, false, false, "sin(v), v, 3"},
        [](const P&, const std::string& alpha) { return cylinder(alpha, {1, 0, 1}); });
    add({"corollary-7+", "f = (c1 c2 - u v)/sqrt(v^2 - c1^2)", TL(), {nz("c1", 1), {"c2", 5, false, false}},
         {0.2, 1, 1.2, 2}, true, true, false, ""},
        [](const P& p, const std::string&) {
            return "(" + num(p.at("c1")) + "*" + num(p.at("c2")) + " - u*v)/sqrt(v^2 - " + num(p.at("c1")) + "^2)";
        });
    add({"corollary-7-", "f = -(c1 c2 - u v)/sqrt(v^2 - c1^2)", TL(), {nz("c1", 1), {"c2", -1, false, false}},
         {0.2, 1, 1.2, 2}, true, true, false, ""},
        [](const P& p, const std::string&) {
            return "-(" + num(p.at("c1")) + "*" + num(p.at("c2")) + " - u*v)/sqrt(v^2 - " + num(p.at("c1")) + "^2)";
        });
    return r;
}

const std::vector<Def>& registry() {
    static const std::vector<Def> r = build_registry();
    return r;
}

std::string canonical(const std::string& key) { return key == "translational-6.3" ? "translational-6.3+" : key; }

const Def& find(const std::string& key) {
    const std::string k = canonical(key);
    for (const auto& d : registry())
        if (d.info.key == k) return d;
    fail(ErrorCode::UnknownFamily, "no family named '" + key + "'");
}

std::variant<TaylorMap, std::string> build(const FamilyParams& fp) {
    const Def& d = find(fp.name);
    const P p = resolve_params(fp);
    const std::string curve = fp.curve.value_or(d.info.curve);
    return d.build(p, curve);
}

void validate_domain(const SurfaceChart& chart, bool causal) {
    const Domain& d = chart.domain();
    if (!(d.u1 > d.u0) || !(d.v1 > d.v0)) fail(ErrorCode::DomainConstraint, "empty parameter rectangle");
    constexpr int n = 9;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double u = d.u0 + (d.u1 - d.u0) * (a + 0.5) / n;
            const double v = d.v0 + (d.v1 - d.v0) * (b + 0.5) / n;
            std::ostringstream where;
            where << " at (" << u << ", " << v << ") of " << chart.name();
            try {
                const Jet2 j = jet2_eval(chart, u, v);
                if (!causal) continue;
                const Eigen::Vector3d eps = chart.space().signature_vector();
                Eigen::Matrix2d I;
                for (int i = 0; i < 2; ++i)
                    for (int k = 0; k < 2; ++k)
                        I(i, k) = (j.du.col(i).array() * j.du.col(k).array() * eps.array()).sum();
                const bool ok = chart.space().is_timelike() ? I.determinant() < 0.0
                                                            : (I(0, 0) > 0.0 && I.determinant() > 0.0);
                if (!ok) fail(ErrorCode::DomainConstraint, "surface is not " +
                                                              std::string(chart.space().is_timelike() ? "time-like" : "space-like") +
                                                              where.str());
            } catch (const GeometryError& e) {
                if (e.code() == ErrorCode::DomainConstraint) throw;
                fail(ErrorCode::DomainConstraint, std::string(e.what()) + where.str());
            }
        }
}

}  // namespace

const std::vector<FamilyInfo>& list_families() {
    static const std::vector<FamilyInfo> infos = [] {
        std::vector<FamilyInfo> v;
        for (const auto& d : registry()) v.push_back(d.info);
        return v;
    }();
    return infos;
}

const FamilyInfo& family_info(const std::string& key) { return find(key).info; }

std::map<std::string, double> resolve_params(const FamilyParams& fp) {
    const FamilyInfo& info = find(fp.name).info;
    P p;
    for (const auto& s : info.params) p[s.name] = s.default_value;
    for (const auto& [k, v] : fp.params) {
        if (!p.count(k)) fail(ErrorCode::ParamConstraint, "family " + info.key + " has no parameter '" + k + "'");
        if (!std::isfinite(v)) fail(ErrorCode::ParamConstraint, "parameter " + k + " must be finite");
        p[k] = v;
    }
    for (const auto& s : info.params) {
        if (s.nonzero && p[s.name] == 0.0) fail(ErrorCode::ParamConstraint, s.name + " must be a nonzero constant");
        if (s.positive && !(p[s.name] > 0.0)) fail(ErrorCode::ParamConstraint, s.name + " must be positive");
    }
    return p;
}

SurfaceChart make_surface(const FamilyParams& fp) {
    const Def& d = find(fp.name);
    const Domain dom = fp.domain.value_or(d.info.domain);
    auto b = build(fp);
    SurfaceChart chart = std::holds_alternative<std::string>(b)
                             ? SurfaceChart::graph(parse_graph_expr(std::get<std::string>(b)), dom, d.info.space)
                             : SurfaceChart::closed_form(d.info.key, std::get<TaylorMap>(b), dom, d.info.space);
    std::optional<double> orient = fp.orientation_override;
    if (!orient && d.info.needs_orientation) orient = 1.0;
    chart = chart.with_orientation(orient);
    validate_domain(chart, !fp.domain.has_value());
    return chart;
}

std::optional<GraphExpr> family_graph(const FamilyParams& fp) {
    auto b = build(fp);
    if (!std::holds_alternative<std::string>(b)) return std::nullopt;
    return parse_graph_expr(std::get<std::string>(b));
}

std::optional<TargetFamily> pairing_target(const FamilyParams& fp) {
    const std::string key = canonical(fp.name);
    const P p = resolve_params(fp);
    if (key == "translational-6.4") {
        const double a = p.at("a"), b = p.at("b");
        return TargetFamily{[a, b](double x1, double x2) { return Eigen::Vector2d(std::asinh(x1 / a), std::asinh(x2 / b)); },
                            [a, b](double U, double V) { return a * std::cosh(U) + b * std::cosh(V); }};
    }
    if (key == "ruled-6.2-2" || key == "ruled-7.4-3") {
        const double c = p.at("c");
        return TargetFamily{[c](double x1, double x2) {
                                const double V = std::asinh(x2 / c);
                                return Eigen::Vector2d(x1 / std::cosh(V), V);
                            },
                            [](double U, double V) { return U * std::sinh(V); }};
    }
    if (key == "ruled-6.2-3" || key == "ruled-7.4-4") {
        const double c1 = p.at("c1"), c2 = p.at("c2");
        return TargetFamily{[c1, c2](double x1, double x2) {
                                const double V = std::asinh(x2 / c1);
                                return Eigen::Vector2d((x1 - c2 * std::sinh(V)) / std::cosh(V), V);
                            },
                            [c2](double U, double V) { return c2 * std::cosh(V) + U * std::sinh(V); }};
    }
    return std::nullopt;
}

std::optional<FamilyParams> pairing_partner(const FamilyParams& fp) {
    const std::string key = canonical(fp.name);
    const P p = resolve_params(fp);
    auto partner = [](std::string name, P params) { return FamilyParams{std::move(name), std::move(params), {}, {}, {}}; };
    if (key == "translational-6.6") return partner("translational-6.4", {{"a", p.at("a")}, {"b", p.at("b")}});
    if (key == "ruled-6.7") return partner("ruled-6.2-2", {{"c", -p.at("c")}});
    if (key == "ruled-6.8") return partner("ruled-6.2-3", {{"c1", -p.at("c1")}, {"c2", p.at("c2")}});
    if (key == "ruled-7.4-5") return partner("ruled-7.4-3", {{"c", p.at("c")}});
    if (key == "ruled-7.4-6") return partner("ruled-7.4-4", {{"c1", p.at("c1")}, {"c2", p.at("c2")}});
    return std::nullopt;
}

PdeResidual pde_residual(const GraphJet& j, GraphPde which) {
    const double det = j.fuu * j.fvv - j.fuv * j.fuv;
    const double regime = j.fu * j.fu + j.fv * j.fv - 1.0;
    if (which == GraphPde::Hyperbolic) {
        const double tr = (1 + j.fv * j.fv) * j.fuu - 2 * j.fu * j.fv * j.fuv + (1 + j.fu * j.fu) * j.fvv;
        return {j.f * det + tr, regime};
    }
    const double tr = (1 - j.fv * j.fv) * j.fuu + 2 * j.fu * j.fv * j.fuv + (1 - j.fu * j.fu) * j.fvv;
    return {j.f * det - tr, regime};
}

PdeResidual graph_pde_residual(const GraphExpr& f, double u, double v, GraphPde which) {
    return pde_residual(graph_jet(f, u, v), which);
}

const std::vector<std::string>& flaherty_psi_choices() {
    static const std::vector<std::string> c = {"v", "sinh(v)", "v + v^3/3"};
    return c;
}

}  // namespace hsurf
