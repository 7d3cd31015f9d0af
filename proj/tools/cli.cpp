#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hsurf/duality.hpp"
#include "hsurf/errors.hpp"
#include "hsurf/forms.hpp"
#include "hsurf/gaussmaps.hpp"
#include "hsurf/weierstrass.hpp"
#include "hsurf/zoo.hpp"
#include "mesh.hpp"
#include "report.hpp"

namespace hsurf::cli {

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct SurfaceArgs {
    std::string family;
    std::string graph;
    std::string space;
    std::vector<std::string> params;
    std::string at;
    std::string grid;
    std::string orientation;
    std::string curve;
};

void add_family_opts(CLI::App* app, SurfaceArgs& a) {
    app->add_option("family", a.family, "Zoo family key");
    app->add_option("--param", a.params, "Family parameter k=v (repeatable)")->allow_extra_args(false);
    app->add_option("--orientation", a.orientation, "Normal orientation override, +1 or -1");
    app->add_option("--curve", a.curve, "psi(v) or comma-separated alpha(v) for families that take a curve");
}

void add_point_opts(CLI::App* app, SurfaceArgs& a) {
    app->add_option("--at", a.at, "Single parameter point u,v");
    app->add_option("--grid", a.grid, "Parameter grid a:b:Nxc:d:M (inclusive)");
}

AmbientSpace parse_space(const std::string& s) {
    if (s == "h3") return AmbientSpace::hyperbolic(3);
    if (s == "ds3") return AmbientSpace::de_sitter(3, CausalClass::SpaceLike);
    if (s == "ds3-timelike") return AmbientSpace::de_sitter(3, CausalClass::TimeLike);
    throw UsageError("--space", "expected h3, ds3 or ds3-timelike, got '" + s + "'");
}

FamilyParams family_params(const SurfaceArgs& a) {
    FamilyParams fp{a.family, parse_params(a.params, "--param"), {}, {}, {}};
    if (!a.orientation.empty()) {
        const double s = parse_number(a.orientation, "--orientation");
        if (s != 1.0 && s != -1.0) throw UsageError("--orientation", "orientation must be +1 or -1");
        fp.orientation_override = s;
    }
    if (!a.curve.empty()) fp.curve = a.curve;
    return fp;
}

struct Surface {
    SurfaceChart chart;
    std::optional<FamilyInfo> info;
};

using Points = std::vector<std::pair<double, double>>;

Points grid_points(const Axis& u, const Axis& v) {
    Points pts;
    for (int j = 0; j < v.n; ++j)
        for (int i = 0; i < u.n; ++i) pts.emplace_back(u.at(i), v.at(j));
    return pts;
}

/// Points from --at / --grid, else a 4 x 4 grid on the inner 80% of the domain.
Points sample_points(const SurfaceArgs& a, const std::optional<Domain>& dom) {
    if (!a.at.empty() && !a.grid.empty()) throw UsageError("--at", "--at and --grid are exclusive");
    if (!a.at.empty()) return {parse_pair(a.at, "--at")};
    if (!a.grid.empty()) {
        const auto [u, v] = parse_grid(a.grid, "--grid");
        return grid_points(u, v);
    }
    if (!dom) throw UsageError("--grid", "--at or --grid is required with --graph");
    const double wu = dom->u1 - dom->u0, wv = dom->v1 - dom->v0;
    return grid_points({dom->u0 + 0.1 * wu, dom->u1 - 0.1 * wu, 4}, {dom->v0 + 0.1 * wv, dom->v1 - 0.1 * wv, 4});
}

/// Widens the chart domain so that every requested point has room for the
/// finite-difference cross-checks.
SurfaceChart fit_domain(const SurfaceChart& chart, const Points& pts) {
    Domain d = chart.domain();
    bool grow = false;
    for (const auto& [u, v] : pts) {
        const double m = 0.01 * std::max({1.0, std::abs(u), std::abs(v)});
        if (d.interior(u, v, m)) continue;
        grow = true;
        const double w = 2.0 * m;
        d.u0 = std::min(d.u0, u - w);
        d.u1 = std::max(d.u1, u + w);
        d.v0 = std::min(d.v0, v - w);
        d.v1 = std::max(d.v1, v + w);
    }
    return grow ? chart.with_domain(d) : chart;
}

Surface resolve_surface(const SurfaceArgs& a) {
    if (!a.family.empty() && !a.graph.empty()) throw UsageError("--graph", "give a family or --graph, not both");
    if (!a.family.empty()) {
        if (!a.space.empty()) throw UsageError("--space", "--space only applies to --graph");
        const FamilyParams fp = family_params(a);
        SurfaceChart chart = make_surface(fp);
        return {chart, family_info(fp.name)};
    }
    if (a.graph.empty()) throw UsageError("family", "a family key or --graph EXPR is required");
    if (a.space.empty()) throw UsageError("--space", "--space is required with --graph");
    const AmbientSpace space = parse_space(a.space);
    SurfaceChart chart = SurfaceChart::graph(parse_graph_expr(a.graph), {0.0, 0.0, 0.0, 0.0}, space);
    if (!a.orientation.empty()) chart = chart.with_orientation(family_params(a).orientation_override);
    return {chart, std::nullopt};
}

ordered_json point_json(double u, double v) {
    ordered_json r;
    r["u"] = u;
    r["v"] = v;
    return r;
}

void record_error(Report& rep, ordered_json& rec, const std::exception& e) {
    rec["error"] = e.what();
    rep.count_error();
}

std::optional<Classification> expected_class(const FamilyInfo& info) {
    if (info.conformal) return Classification::Conformal;
    if (info.needs_orientation) return Classification::TotallyGeodesicDegenerate;
    return Classification::NotConformal;
}

int finish(const Report& rep, std::ostream& out) {
    rep.write(out);
    return rep.passed() ? kPass : kFail;
}

// ---- subcommands -----------------------------------------------------------

int cmd_zoo_list(const std::vector<std::string>& argv, std::ostream& out) {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = argv;
    ordered_json fams = ordered_json::array();
    for (const auto& f : list_families()) {
        ordered_json e;
        e["key"] = f.key;
        e["formula"] = f.formula;
        e["space"] = f.space.name();
        ordered_json ps = ordered_json::array();
        for (const auto& p : f.params) {
            ordered_json q;
            q["name"] = p.name;
            q["default"] = p.default_value;
            q["nonzero"] = p.nonzero;
            q["positive"] = p.positive;
            ps.push_back(q);
        }
        e["params"] = ps;
        e["domain"] = {f.domain.u0, f.domain.u1, f.domain.v0, f.domain.v1};
        e["conformal"] = f.conformal;
        e["graph"] = f.is_graph;
        if (!f.curve.empty()) e["curve"] = f.curve;
        fams.push_back(e);
    }
    j["families"] = fams;
    out << j.dump(2) << '\n';
    return kPass;
}

int cmd_zoo_sample(const std::vector<std::string>& argv, const SurfaceArgs& a, const std::string& us,
                   const std::string& vs, const std::string& out_path, std::ostream& out) {
    if (a.family.empty()) throw UsageError("family", "a family key is required");
    const FamilyParams fp = family_params(a);
    const SurfaceChart chart = make_surface(fp);
    const Domain& d = chart.domain();
    const Axis u = us.empty() ? Axis{d.u0, d.u1, 16} : parse_axis(us, "--u");
    const Axis v = vs.empty() ? Axis{d.v0, d.v1, 16} : parse_axis(vs, "--v");
    SampleGrid grid{u.n, v.n, {}};
    std::vector<double> uu, vv;
    for (int i = 0; i < u.n; ++i) uu.push_back(u.at(i));
    for (int j = 0; j < v.n; ++j) vv.push_back(v.at(j));
    for (int j = 0; j < v.n; ++j)
        for (int i = 0; i < u.n; ++i) {
            Eigen::Vector3d x;
            try {
                x = chart.position(uu[i], vv[j]);
            } catch (const GeometryError& e) {
                fail(ErrorCode::DomainConstraint, std::string(e.what()));
            }
            if (!(x(2) > 0.0) || !x.allFinite()) {
                std::ostringstream os;
                os << "x3 = " << x(2) << " at (" << uu[i] << ", " << vv[j] << ") is not positive";
                fail(ErrorCode::DomainConstraint, os.str());
            }
            grid.points.emplace_back(x);
        }
    if (out_path.empty()) {
        write_sample_csv(out, grid, uu, vv);
        return kPass;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, "cannot open '" + out_path + "' for writing");
    write_sample_csv(f, grid, uu, vv);
    if (!f.flush()) fail(ErrorCode::IoError, "write to '" + out_path + "' failed");
    Report rep(argv);
    rep.set("rows", grid.points.size());
    rep.set("out", out_path);
    return finish(rep, out);
}

int cmd_check_forms(const std::vector<std::string>& argv, const SurfaceArgs& a, std::ostream& out) {
    Surface s = resolve_surface(a);
    const Points pts = sample_points(a, s.info ? std::optional<Domain>(s.chart.domain()) : std::nullopt);
    const SurfaceChart chart = fit_domain(s.chart, pts);
    Report rep(argv);
    rep.require_max("obata_residual", 1e-9);
    rep.require_max("fourth_form_cross_check", 1e-4);
    rep.require_max("brioschi_cross_check", 1e-3);
    for (const auto& [u, v] : pts) {
        ordered_json rec = point_json(u, v);
        try {
            const FormBundle fb = fundamental_forms(chart, u, v);
            rec["x"] = to_json(Eigen::VectorXd(chart.position(u, v)));
            rec["eta"] = to_json(fb.eta);
            rec["I"] = to_json(fb.I);
            rec["II"] = to_json(fb.II);
            rec["III"] = to_json(fb.III);
            rec["IV"] = to_json(fb.IV);
            rec["H"] = fb.H;
            rec["K"] = fb.K;
            if (fb.spectrum.kind == ShapeSpectrum::Kind::Real) rec["principal_curvatures"] = fb.spectrum.values;
            const double ob = obata_identity_residual(fb);
            const double iv = (fourth_form_direct(chart, u, v) - fb.IV).norm() / std::max(1.0, fb.IV.norm());
            const double br = std::abs(intrinsic_gauss_curvature(chart, u, v) - fb.K);
            rec["obata_residual"] = ob;
            rec["fourth_form_cross_check"] = iv;
            rec["brioschi_cross_check"] = br;
            rep.track("obata_residual", ob);
            rep.track("fourth_form_cross_check", iv);
            rep.track("brioschi_cross_check", br);
        } catch (const GeometryError& e) {
            record_error(rep, rec, e);
        }
        rep.add_record(std::move(rec));
    }
    return finish(rep, out);
}

int cmd_check_conformal(const std::vector<std::string>& argv, const SurfaceArgs& a, std::ostream& out) {
    Surface s = resolve_surface(a);
    const Points pts = sample_points(a, s.info ? std::optional<Domain>(s.chart.domain()) : std::nullopt);
    const SurfaceChart chart = fit_domain(s.chart, pts);
    const std::optional<Classification> want = s.info ? expected_class(*s.info) : std::nullopt;
    Report rep(argv);
    if (want) rep.set("expected_classification", to_string(*want));
    rep.require_max("classification_mismatch", 0.0);
    rep.require_max("curvature_law_residual", 1e-9);
    rep.require_max("rho_residual", 1e-8);
    for (const auto& [u, v] : pts) {
        ordered_json rec = point_json(u, v);
        try {
            const FormBundle fb = fundamental_forms(chart, u, v);
            const ConformalityReport cr = conformality_test(fb);
            rec["classification"] = to_string(cr.classification);
            rec["umbilic"] = cr.umbilic;
            rec["residual"] = cr.residual;
            rec["eta3"] = fb.eta_top();
            rec["H"] = fb.H;
            rec["K"] = fb.K;
            if (want) rep.track("classification_mismatch", cr.classification == *want ? 0.0 : 1.0);
            if (cr.classification == Classification::Conformal) {
                const double kres = std::abs(fb.K - conformal_curvature(fb));
                const double rres = std::abs(*cr.rho - expected_rho(fb));
                rec["rho"] = *cr.rho;
                rec["rho_expected"] = expected_rho(fb);
                rec["K_expected"] = conformal_curvature(fb);
                rec["curvature_law_residual"] = kres;
                rec["rho_residual"] = rres;
                rep.track("curvature_law_residual", kres);
                rep.track("rho_residual", rres);
            }
        } catch (const GeometryError& e) {
            record_error(rep, rec, e);
        }
        rep.add_record(std::move(rec));
    }
    return finish(rep, out);
}

int cmd_pde_residual(const std::vector<std::string>& argv, const std::string& eq, const std::string& expr,
                     const std::string& grid_text, const std::string& at, std::ostream& out) {
    GraphPde which;
    if (eq == "6.1") which = GraphPde::Hyperbolic;
    else if (eq == "6.2") which = GraphPde::DeSitter;
    else throw UsageError("--eq", "expected 6.1 or 6.2, got '" + eq + "'");
    if (expr.empty()) throw UsageError("--graph", "--graph EXPR is required");
    const GraphExpr f = parse_graph_expr(expr);
    SurfaceArgs pa;
    pa.grid = grid_text;
    pa.at = at;
    const Points pts = sample_points(pa, std::nullopt);
    Report rep(argv);
    rep.require_max("pde_residual", 1e-10);
    double rmin = INFINITY, rmax = -INFINITY;
    for (const auto& [u, v] : pts) {
        ordered_json rec = point_json(u, v);
        try {
            const GraphJet j = graph_jet(f, u, v);
            const PdeResidual r = pde_residual(j, which);
            rec["f"] = j.f;
            rec["residual"] = r.residual;
            rec["regime"] = r.regime;
            rep.track("pde_residual", std::abs(r.residual));
            rmin = std::min(rmin, r.regime);
            rmax = std::max(rmax, r.regime);
        } catch (const GeometryError& e) {
            record_error(rep, rec, e);
        }
        rep.add_record(std::move(rec));
    }
    if (rmin <= rmax) rep.set("regime", ordered_json{{"min", rmin}, {"max", rmax}});
    return finish(rep, out);
}

int cmd_dualize(const std::vector<std::string>& argv, const SurfaceArgs& a, bool fit, std::ostream& out) {
    if (a.family.empty()) throw UsageError("family", "a family key is required");
    const FamilyParams fp = family_params(a);
    std::optional<FamilyParams> partner;
    if (fit) {
        partner = pairing_partner(fp);
        if (!partner) throw UsageError("--fit-isometry", "no pairing is known for family '" + fp.name + "'");
    }
    const SurfaceChart src = make_surface(fp);
    const Points pts = sample_points(a, src.domain());
    const SurfaceChart chart = fit_domain(src, pts);
    std::optional<SurfaceChart> dual;
    Report rep(argv);
    rep.require_max("curvature_law_relative", 1e-8);
    rep.require_max("double_polarity_defect", 1e-8);
    rep.require_max("conformality_mismatch", 0.0);
    std::vector<Eigen::Vector3d> polar_points;
    for (const auto& [u, v] : pts) {
        ordered_json rec = point_json(u, v);
        try {
            const PolarPoint p = polar_variety(chart, u, v);
            rec["polar"] = to_json(Eigen::VectorXd(p.position));
            rec["minkowski"] = to_json(Eigen::VectorXd(p.minkowski.coords));
            if (p.sheet) rec["sheet"] = *p.sheet == DeSitterBranch::Plus ? "plus" : "minus";
            rec["source_eta3"] = p.source_eta3;
            rec["source_K"] = p.source_K;
            rec["dual_K"] = p.dual_K ? ordered_json(*p.dual_K) : ordered_json(nullptr);
            rec["predicted_K"] = p.predicted_K ? ordered_json(*p.predicted_K) : ordered_json(nullptr);
            rec["volume_ratio"] = p.volume_ratio;
            rec["branch"] = p.branch_flag;
            const double dp = double_polarity_defect(chart, u, v);
            rec["double_polarity_defect"] = dp;
            rep.track("double_polarity_defect", dp);
            if (!p.branch_flag) {
                polar_points.push_back(p.position);
                if (p.dual_K && p.predicted_K) {
                    const double law = std::abs(*p.dual_K - *p.predicted_K) / std::max(1.0, std::abs(*p.predicted_K));
                    rec["curvature_law_relative"] = law;
                    rep.track("curvature_law_relative", law);
                }
                if (!dual) dual = polar_chart(chart);
                const bool cs = conformality_test(fundamental_forms(chart, u, v)).is_conformal;
                const bool cd = conformality_test(fundamental_forms(*dual, u, v)).is_conformal;
                rec["source_conformal"] = cs;
                rec["dual_conformal"] = cd;
                rep.track("conformality_mismatch", cs == cd ? 0.0 : 1.0);
            }
        } catch (const GeometryError& e) {
            record_error(rep, rec, e);
        }
        rep.add_record(std::move(rec));
    }
    if (partner) {
        ordered_json fj;
        fj["partner"] = partner->name;
        fj["partner_params"] = partner->params;
        try {
            const IsometryFit f = fit_isometry(polar_points, *pairing_target(*partner));
            fj["theta"] = f.theta;
            fj["a"] = f.a;
            fj["b"] = f.b;
            fj["max_distance"] = f.max_distance;
            rep.track("isometry_distance", f.max_distance);
            rep.require_max("isometry_distance", 1e-6);
        } catch (const GeometryError& e) {
            fj["error"] = e.what();
            rep.count_error();
        }
        rep.set("isometry_fit", fj);
    }
    return finish(rep, out);
}

struct WeierArgs {
    std::string g = "builtin:z";
    int case_k = 1;
    std::string domain = "1.5:2.5:0.1:0.9";
    int grid = 33;
    std::string boundary;
    std::string out;
    std::string g_out;
    std::string G_out;
    double delta = 0.1;
    double realness_tol = 5e-2;
};

void write_field(const ComplexField& f, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    f.write_csv(os);
    if (!os.flush()) fail(ErrorCode::IoError, "write to '" + path + "' failed");
}

int cmd_weierstrass_build(const std::vector<std::string>& argv, const WeierArgs& w, std::ostream& out) {
    const WeierstrassCase wc = [&] {
        if (w.case_k != 1 && w.case_k != 2) throw UsageError("--case", "expected 1 or 2");
        return parse_case(w.case_k);
    }();
    std::vector<double> dom;
    {
        std::stringstream ss(w.domain);
        std::string item;
        while (std::getline(ss, item, ':')) dom.push_back(parse_number(item, "--domain"));
        if (dom.size() != 4 || !(dom[1] > dom[0]) || !(dom[3] > dom[2]))
            throw UsageError("--domain", "expected u0:u1:v0:v1 with u0 < u1 and v0 < v1");
    }
    if (w.grid < 3 || w.grid > 65) throw UsageError("--grid", "grid size must be between 3 and 65");
    if (w.boundary.empty()) throw UsageError("--boundary", "--boundary EXPR|builtin:exact is required");
    std::function<Complex(Complex)> gfun;
    if (w.g == "builtin:z") {
        gfun = [](Complex z) { return z; };
    } else {
        const GraphExpr ge = parse_graph_expr(w.g, ExprMode::Complex);
        gfun = [ge](Complex z) { return ge.eval(z); };
    }
    std::function<Complex(Complex)> bfun;
    if (w.boundary == "builtin:exact") {
        if (w.g != "builtin:z" || wc != WeierstrassCase::Holo_gAbsGt1)
            throw UsageError("--boundary", "builtin:exact is the radial solution for --g builtin:z --case 1");
        bfun = radial_test_G;
    } else {
        const GraphExpr be = parse_graph_expr(w.boundary, ExprMode::Complex);
        bfun = [be](Complex z) { return be.eval(z); };
    }
    const Grid grid = Grid::over(dom[0], dom[1], dom[2], dom[3], w.grid, w.grid);
    Report rep(argv);
    rep.require_max("discrete_residual", 1e-10);
    rep.require_max("identity_defect", 1e-12);
    rep.require_max("g_recovery_error", 3e-2);
    rep.require_max("eta3_error", 3e-2);
    rep.require_max("conformality_residual", 5e-2);
    try {
        const ComplexField g(grid, FieldRole::NormalMap_g, gfun);
        const ComplexField G = solve_G(g, bfun, wc, w.delta);
        const double dr = discrete_residual(g, G, wc);
        rep.track("discrete_residual", dr);
        if (!w.g_out.empty()) write_field(g, w.g_out);
        if (!w.G_out.empty()) write_field(G, w.G_out);
        const BuiltSurface s = build_surface(g, G, wc, {w.delta, w.realness_tol});
        std::map<std::string, int> reasons;
        for (const auto& d : s.diagnostics) {
            ordered_json rec;
            rec["i"] = d.i;
            rec["j"] = d.j;
            rec["u"] = grid.u(d.i);
            rec["v"] = grid.v(d.j);
            rec["kept"] = d.kept;
            if (!d.kept) {
                rec["reason"] = d.reason;
                ++reasons[d.reason];
                rep.add_record(std::move(rec));
                continue;
            }
            rec["x"] = to_json(Eigen::VectorXd(*s.at(d.i, d.j)));
            const double idd = d.identity_defect / (1.0 + std::abs(G.at(d.i, d.j)));
            rec["identity_defect"] = idd;
            rep.track("identity_defect", idd);
            rec["compatibility"] = d.compatibility;
            try {
                if (const auto c = check_built_point(s, d.i, d.j)) {
                    const double ge = std::abs(c->g_recovered - g.at(d.i, d.j));
                    const double e3 = wc == WeierstrassCase::Holo_gAbsGt1 ? c->forms.eta_top() : -c->forms.eta_top();
                    const double ee = std::abs(e3 - d.eta3_formula);
                    rec["g_recovery_error"] = ge;
                    rec["eta3_error"] = ee;
                    rec["conformality_residual"] = c->conformality.residual;
                    rep.track("g_recovery_error", ge);
                    rep.track("eta3_error", ee);
                    rep.track("conformality_residual", c->conformality.residual);
                }
            } catch (const GeometryError& e) {
                record_error(rep, rec, e);
            }
            rep.add_record(std::move(rec));
        }
        rep.set("kept", s.kept());
        rep.set("dropped", s.diagnostics.size() - s.kept());
        rep.set("dropped_reasons", reasons);
        if (!w.out.empty()) {
            SampleGrid sg{grid.nu, grid.nv, s.samples};
            std::vector<double> us, vs;
            for (int i = 0; i < grid.nu; ++i) us.push_back(grid.u(i));
            for (int j = 0; j < grid.nv; ++j) vs.push_back(grid.v(j));
            std::ofstream f(w.out, std::ios::binary);
            if (!f) fail(ErrorCode::IoError, "cannot open '" + w.out + "' for writing");
            write_sample_csv(f, sg, us, vs);
            if (!f.flush()) fail(ErrorCode::IoError, "write to '" + w.out + "' failed");
        }
    } catch (const GeometryError& e) {
        if (e.code() == ErrorCode::IoError) throw;
        rep.set("error", e.what());
        rep.count_error();
    }
    return finish(rep, out);
}

int cmd_export_obj(const std::vector<std::string>& argv, const std::string& in, const std::string& outp,
                   std::ostream& out, std::ostream& err) {
    std::ifstream f(in, std::ios::binary);
    if (!f) fail(ErrorCode::IoError, "cannot open '" + in + "'");
    const SampleGrid g = read_sample_csv(f);
    const ObjStats st = export_obj(g, outp);
    if (st.omitted_faces > 0) err << "omitted " << st.omitted_faces << " faces touching dropped samples\n";
    Report rep(argv);
    rep.set("grid", ordered_json{g.nu, g.nv});
    rep.set("vertices", st.vertices);
    rep.set("faces", st.faces);
    rep.set("omitted_faces", st.omitted_faces);
    return finish(rep, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fundamental forms, Gauss maps and duality of surfaces in H3 and de Sitter space", "hsurf"};
    app.require_subcommand(1);

    auto* zoo = app.add_subcommand("zoo", "Surface family registry")->require_subcommand(1);
    auto* zoo_list = zoo->add_subcommand("list", "List families and their parameters");
    auto* zoo_sample = zoo->add_subcommand("sample", "Sample a family on a grid (CSV i,j,u,v,x1,x2,x3)");
    SurfaceArgs sample_args;
    std::string su, sv, sout;
    add_family_opts(zoo_sample, sample_args);
    zoo_sample->add_option("--u", su, "u axis a:b:N");
    zoo_sample->add_option("--v", sv, "v axis a:b:N");
    zoo_sample->add_option("--out", sout, "CSV output file (default stdout)");

    auto* check = app.add_subcommand("check", "Verification reports")->require_subcommand(1);
    SurfaceArgs forms_args, conf_args;
    auto* check_forms = check->add_subcommand("forms", "Fundamental forms with Obata and cross-checks");
    auto* check_conf = check->add_subcommand("conformal", "Conformality of the normal Gauss map");
    for (auto [sub, a] : {std::pair{check_forms, &forms_args}, std::pair{check_conf, &conf_args}}) {
        add_family_opts(sub, *a);
        add_point_opts(sub, *a);
        sub->add_option("--graph", a->graph, "Graph f(u,v) instead of a family");
        sub->add_option("--space", a->space, "h3, ds3 or ds3-timelike (with --graph)");
    }

    auto* pde = app.add_subcommand("pde", "Graph PDEs")->require_subcommand(1);
    auto* pde_res = pde->add_subcommand("residual", "Residual of a graph PDE on a grid");
    std::string eq, pde_graph, pde_grid, pde_at;
    pde_res->add_option("--eq", eq, "6.1 (hyperbolic) or 6.2 (de Sitter)")->required();
    pde_res->add_option("--graph", pde_graph, "f(u,v)")->required();
    pde_res->add_option("--grid", pde_grid, "a:b:Nxc:d:M");
    pde_res->add_option("--at", pde_at, "u,v");

    auto* dualize = app.add_subcommand("dualize", "Polar variety of a family");
    SurfaceArgs dual_args;
    bool fit = false;
    add_family_opts(dualize, dual_args);
    add_point_opts(dualize, dual_args);
    dualize->add_flag("--fit-isometry", fit, "Fit the polar against the paired family");

    auto* weier = app.add_subcommand("weierstrass", "Surfaces from Gauss map data")->require_subcommand(1);
    auto* wbuild = weier->add_subcommand("build", "Solve for G and build the surface");
    WeierArgs w;
    wbuild->add_option("--g", w.g, "builtin:z or an expression in z");
    wbuild->add_option("--case", w.case_k, "1 (holomorphic, |g| > 1) or 2 (antiholomorphic, |g| < 1)")->required();
    wbuild->add_option("--domain", w.domain, "u0:u1:v0:v1");
    wbuild->add_option("--grid", w.grid, "Nodes per side (3..65)");
    wbuild->add_option("--boundary", w.boundary, "Dirichlet data for G: expression in z or builtin:exact")->required();
    wbuild->add_option("--out", w.out, "CSV of kept samples");
    wbuild->add_option("--g-out", w.g_out, "CSV of the g field");
    wbuild->add_option("--G-out", w.G_out, "CSV of the solved G field");
    wbuild->add_option("--delta", w.delta, "Standoff from |g| = 1");
    wbuild->add_option("--realness-tol", w.realness_tol, "Allowed relative imaginary part of the height");

    auto* exp = app.add_subcommand("export", "Mesh export")->require_subcommand(1);
    auto* exp_obj = exp->add_subcommand("obj", "CSV samples to an OBJ triangle mesh");
    std::string in_path, obj_path;
    exp_obj->add_option("--in", in_path, "Sample CSV")->required();
    exp_obj->add_option("--out", obj_path, "OBJ file")->required();

    std::vector<std::string> argv{"hsurf"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<char*> cargv;
    for (auto& s : argv) cargv.push_back(s.data());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    const std::vector<std::string> echo(argv.begin() + 1, argv.end());
    try {
        if (zoo_list->parsed()) return cmd_zoo_list(echo, out);
        if (zoo_sample->parsed()) return cmd_zoo_sample(echo, sample_args, su, sv, sout, out);
        if (check_forms->parsed()) return cmd_check_forms(echo, forms_args, out);
        if (check_conf->parsed()) return cmd_check_conformal(echo, conf_args, out);
        if (pde_res->parsed()) return cmd_pde_residual(echo, eq, pde_graph, pde_grid, pde_at, out);
        if (dualize->parsed()) return cmd_dualize(echo, dual_args, fit, out);
        if (wbuild->parsed()) return cmd_weierstrass_build(echo, w, out);
        if (exp_obj->parsed()) return cmd_export_obj(echo, in_path, obj_path, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << " (" << e.flag() << ")\n";
        return kUsage;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    err << "error: no command given\n";
    return kUsage;
}

}  // namespace hsurf::cli
