#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gprox/graph.hpp"
#include "gprox/metric.hpp"
#include "gprox/operators.hpp"

namespace gprox {

struct SolveConfig {
    double epsilon = 0.1;
    std::size_t max_iter = 100;
    Tolerance tol{};

    /// Throws DomainError unless ε > 0 and max_iter ≥ 1.
    void validate() const;
};

/// Orbit points with residuals. Single map: residuals[n] = d(x_n, x_{n+1}) − d(A,B).
/// Pair schemes also fill `partners` (the y_n) and use the scheme's residual.
struct IterationTrace {
    std::vector<PointRef> points;
    std::vector<PointRef> partners;
    std::vector<double> residuals;
};

enum class SolveStatus { found, exhausted, ineligible };

std::string to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::exhausted;
    std::optional<PointRef> witness;
    std::optional<PointRef> witness_partner;
    std::size_t iterations = 0;
    IterationTrace trace;
    Distance set_distance = 0.0;
    std::string note;
};

/// x0, f(x0), …, f^n(x0) with n residuals. Throws OrbitError if f is
/// undefined at some orbit point; last_valid_index() names the last good one.
IterationTrace picard_orbit(const MetricSpace& space, const SubsetPair& sets, const CyclicMap& f,
                            const PointRef& x0, std::size_t n);

/// Picard iteration until d(x_n, f x_n) ≤ d(A,B) + ε + τ with (x_n, f x_n) ∈ E(G).
SolveResult find_proximity_point(const MetricSpace& space, const SubsetPair& sets,
                                 const DirectedGraph& g, const CyclicMap& f, const PointRef& x0,
                                 const SolveConfig& cfg);

/// Smallest n ≥ 0 with kⁿ (d0 − dAB) ≤ ε.
std::size_t crr_iteration_bound(Distance d0, double k, Distance dab, double epsilon,
                                Tolerance tol = {});

struct GtMinimizing {
    bool holds = false;
    /// First trace index whose (z_n, f z_n) is not an edge, if any.
    std::optional<std::size_t> off_graph_index;
    std::vector<double> residuals;
};

/// Finite surrogate for lim d(z_n, T z_n) = d(A,B): the last `window`
/// residuals are all ≤ δ. Throws DomainError if the trace is shorter.
GtMinimizing is_gt_minimizing(const MetricSpace& space, const SubsetPair& sets,
                              const DirectedGraph& g, const CyclicMap& f,
                              const IterationTrace& trace, std::size_t window, double delta);

/// Searches the orbit of f^power for z with d(z, f^power z) < ε.
SolveResult epsilon_fixed_point(const MetricSpace& space, const CyclicMap& f, const PointRef& x0,
                                std::size_t power, const SolveConfig& cfg);

/// x_n = Tⁿx0, y_n = Sⁿy0 until d(T x_n, S y_n) ≤ d(A,B) + ε + τ at a pair
/// (x_n, y_n) ∈ E(G) ∩ (A×B).
SolveResult two_map_parallel(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                             const MapPair& pair, const PointRef& x0, const PointRef& y0,
                             const SolveConfig& cfg);

struct AlternatingResult {
    SolveResult result;
    /// bounds[m] = α^m d(x_0,y_0) + (1 − α^m) d(A,B) for the m-th iterate.
    std::vector<double> bounds;
    std::size_t bound_violations = 0;
};

/// x_{n+1} = S y_n, y_{n+1} = T x_n under d(Tx,Sy) ≤ α d(x,y) + γ d(A,B),
/// α + γ = 1. Stops when d(x_n, y_n) ≤ d(A,B) + ε + τ. Throws
/// HypothesisError at the first step where the hypothesis fails.
AlternatingResult two_map_alternating(const MetricSpace& space, const SubsetPair& sets,
                                      const DirectedGraph& g, const MapPair& pair,
                                      const PointRef& x1, const PointRef& y1, double alpha,
                                      double gamma, const SolveConfig& cfg);

} // namespace gprox
