#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hsurf/chart.hpp"
#include "hsurf/duality.hpp"
#include "hsurf/expr.hpp"

namespace hsurf {

struct ParamSpec {
    std::string name;
    double default_value;
    bool nonzero;  // family requires a nonzero value
    bool positive;  // family requires a positive value
};

struct FamilyInfo {
    std::string key;
    std::string formula;
    AmbientSpace space;
    std::vector<ParamSpec> params;
    Domain domain;
    bool conformal;      // listed with conformal normal Gauss map
    bool is_graph;       // shipped as a graph (u, v, f)
    bool needs_orientation;  // eta3 vanishes identically; default override +1
    std::string curve;   // default psi or alpha for families that take one, else empty
};

struct FamilyParams {
    std::string name;
    std::map<std::string, double> params;
    std::optional<double> orientation_override;
    /// psi(v) for the Flaherty graphs; alpha(v) components (comma separated) for curve families.
    std::optional<std::string> curve;
    std::optional<Domain> domain;
};

const std::vector<FamilyInfo>& list_families();
const FamilyInfo& family_info(const std::string& key);

/// Resolved parameter values (defaults filled in) for a request.
std::map<std::string, double> resolve_params(const FamilyParams& fp);

SurfaceChart make_surface(const FamilyParams& fp);

/// The height function f for families shipped as graphs.
std::optional<GraphExpr> family_graph(const FamilyParams& fp);

/// Horizontal inverse and height for families used as pairing targets.
std::optional<TargetFamily> pairing_target(const FamilyParams& fp);

/// Family whose polar variety is isometric to the given one, with its
/// parameters, or empty when no pairing is known.
std::optional<FamilyParams> pairing_partner(const FamilyParams& fp);

enum class GraphPde { Hyperbolic, DeSitter };

struct PdeResidual {
    double residual;
    double regime;  // f_u^2 + f_v^2 - 1
};

PdeResidual pde_residual(const GraphJet& j, GraphPde which);
PdeResidual graph_pde_residual(const GraphExpr& f, double u, double v, GraphPde which);

/// Flaherty psi choices shipped by default.
const std::vector<std::string>& flaherty_psi_choices();

}  // namespace hsurf
