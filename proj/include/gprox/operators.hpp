#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gprox/graph.hpp"
#include "gprox/metric.hpp"

namespace gprox {

/// A total self-map on A ∪ B: an index table (tabulated instances) or a
/// named closed-form rule on coordinates. Cyclicity is not enforced here;
/// validate_cyclic reports it.
class CyclicMap {
public:
    /// May throw DomainError for points outside the rule's domain.
    using Rule = std::function<Coords(const Coords&)>;

    static CyclicMap table(std::vector<std::size_t> images, std::string name = "table");
    static CyclicMap rule(std::string name, std::vector<double> params, Rule rule);

    const std::string& name() const noexcept { return name_; }
    const std::vector<double>& params() const noexcept { return params_; }
    bool is_table() const noexcept { return !rule_; }
    const std::vector<std::size_t>& images() const noexcept { return table_; }

    PointRef operator()(const PointRef& x) const;

private:
    std::string name_;
    std::vector<double> params_;
    std::vector<std::size_t> table_;
    Rule rule_;
};

/// (T, S) with T(A) ⊆ B and S(B) ⊆ A; both total on A ∪ B.
struct MapPair {
    CyclicMap t;
    CyclicMap s;
};

/// Nonnegative (α, β, γ) with α + 2β + γ < 1 (strict).
class CrrParams {
public:
    /// Throws DomainError if the constants leave the open simplex.
    CrrParams(double alpha, double beta, double gamma);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }
    /// Residual decay rate (α+β)/(1−β), always in [0,1).
    double k() const noexcept { return (alpha_ + beta_) / (1.0 - beta_); }

    friend bool operator==(const CrrParams&, const CrrParams&) = default;

private:
    double alpha_;
    double beta_;
    double gamma_;
};

/// Points of A ∪ B with their images and displacements d(x, f(x)).
struct EvaluatedMap {
    EvaluatedMap(const MetricSpace& space, const SubsetPair& sets, const CyclicMap& f);

    std::vector<PointRef> images;
    PointTable points;
    PointTable image_points;
    std::vector<double> displacement;
};

ValidationReport validate_cyclic(const CyclicMap& f, const SubsetPair& sets);
/// T(A) ⊆ B, S(B) ⊆ A, and both maps defined on all of A ∪ B.
ValidationReport validate_pair(const MapPair& pair, const SubsetPair& sets);

/// Outcome of an edge-wise inequality scan. `worst_edge` maximises
/// lhs − rhs (first in scan order on ties); it is empty when no edge qualifies.
struct EdgeCheck {
    bool holds = true;
    bool preserves = true;
    std::optional<Edge> preservation_failure;
    std::optional<Edge> worst_edge;
    double worst_excess = 0.0;
    std::size_t edges_checked = 0;
};

struct ContractionFactor {
    bool contractive = true;
    /// max d(fx,fy)/d(x,y) over edges with d(x,y) > 0; 0 if there are none,
    /// +inf if some zero-length edge has images apart.
    double alpha_min = 0.0;
    std::optional<Edge> worst_edge;
};

/// Throws ClassificationError if f does not preserve the edges of g.
ContractionFactor min_contraction_factor(const MetricSpace& space, const SubsetPair& sets,
                                         const DirectedGraph& g, const CyclicMap& f);

/// Requires α ∈ (0,1).
EdgeCheck is_g_contraction(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                           const CyclicMap& f, double alpha, Tolerance tol = {});

EdgeCheck is_crr_moh(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                     const CyclicMap& f, const CrrParams& params, Tolerance tol = {});

/// Lexicographically first (α, β, γ) on the grid {i·step} with α+2β+γ < 1
/// that passes is_crr_moh; empty if none does or f breaks edges.
std::optional<CrrParams> crr_params_feasible(const MetricSpace& space, const SubsetPair& sets,
                                             const DirectedGraph& g, const CyclicMap& f,
                                             double grid_step, Tolerance tol = {});

/// Both conditions are checked on E(G) ∩ (A×B).
EdgeCheck is_crr_2map(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                      const MapPair& pair, const CrrParams& params, Tolerance tol = {});

std::optional<CrrParams> crr_2map_params_feasible(const MetricSpace& space, const SubsetPair& sets,
                                                  const DirectedGraph& g, const MapPair& pair,
                                                  double grid_step, Tolerance tol = {});

EdgeCheck is_edge_nonexpansive(const MetricSpace& space, const SubsetPair& sets,
                               const DirectedGraph& g, const CyclicMap& f, Tolerance tol = {});

} // namespace gprox
