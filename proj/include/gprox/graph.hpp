#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gprox/metric.hpp"

namespace gprox {

using Edge = std::pair<PointRef, PointRef>;

std::string to_string(const Edge& e);

enum class GraphRule { complete, diagonal, explicit_list, custom };

/// Directed graph G over A ∪ B, stored as a named rule or an explicit edge set.
/// Explicit lists keep set semantics; repeated input edges are remembered so
/// validation can report them as parallel edges.
class DirectedGraph {
public:
    using Predicate = std::function<bool(const PointRef&, const PointRef&)>;

    static DirectedGraph complete();
    static DirectedGraph diagonal();
    static DirectedGraph from_edges(std::vector<Edge> edges);
    static DirectedGraph custom(std::string name, Predicate predicate);

    GraphRule rule() const noexcept { return rule_; }
    const std::string& name() const noexcept { return name_; }

    /// Sorted, duplicate-free edge list (explicit graphs only).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Edge>& parallel_edges() const noexcept { return parallel_; }

    /// Raw membership test; no check that x and y belong to the instance.
    bool contains(const PointRef& x, const PointRef& y) const;

    /// Calls fn(i, j) for every edge between positions of sets.points(), in
    /// lexicographic (i, j) order. If fn returns bool, false stops the scan.
    template <class Fn>
    void for_each_edge(const SubsetPair& sets, Fn&& fn) const;

private:
    GraphRule rule_ = GraphRule::complete;
    std::string name_ = "complete";
    std::vector<Edge> edges_;
    std::vector<Edge> parallel_;
    Predicate predicate_;

    std::vector<std::pair<std::size_t, std::size_t>> explicit_positions(const SubsetPair& sets) const;
};

/// Throws DomainError if x or y is not a point of the space.
bool contains_edge(const DirectedGraph& g, const MetricSpace& space, const PointRef& x,
                   const PointRef& y);

/// Flags missing diagonal edges, foreign endpoints and parallel edges.
ValidationReport validate_graph(const DirectedGraph& g, const MetricSpace& space,
                                const SubsetPair& sets);

struct PreservationResult {
    bool holds = true;
    std::optional<Edge> counterexample;
};

/// (x,y) ∈ E(G) ⇒ (f(x), f(y)) ∈ E(G), with images[i] = f(sets.points()[i]).
PreservationResult preserves_edges(const DirectedGraph& g, const SubsetPair& sets,
                                   std::span<const PointRef> images);

template <class Fn>
void DirectedGraph::for_each_edge(const SubsetPair& sets, Fn&& fn) const
{
    auto call = [&fn](std::size_t i, std::size_t j) -> bool {
        if constexpr (std::is_same_v<std::invoke_result_t<Fn&, std::size_t, std::size_t>, bool>) {
            return fn(i, j);
        } else {
            fn(i, j);
            return true;
        }
    };
    const auto& pts = sets.points();
    const std::size_t n = pts.size();
    switch (rule_) {
    case GraphRule::complete:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!call(i, j)) return;
        return;
    case GraphRule::diagonal:
        for (std::size_t i = 0; i < n; ++i)
            if (!call(i, i)) return;
        return;
    case GraphRule::explicit_list:
        for (const auto& [i, j] : explicit_positions(sets))
            if (!call(i, j)) return;
        return;
    case GraphRule::custom:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (predicate_(pts[i], pts[j]) && !call(i, j)) return;
        return;
    }
}

} // namespace gprox
