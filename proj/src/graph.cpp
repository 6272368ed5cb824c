#include "gprox/graph.hpp"

#include <algorithm>

namespace gprox {

std::string to_string(const Edge& e)
{
    return "(" + e.first.to_string() + ", " + e.second.to_string() + ")";
}

DirectedGraph DirectedGraph::complete()
{
    return DirectedGraph{};
}

DirectedGraph DirectedGraph::diagonal()
{
    DirectedGraph g;
    g.rule_ = GraphRule::diagonal;
    g.name_ = "diagonal";
    return g;
}

DirectedGraph DirectedGraph::from_edges(std::vector<Edge> edges)
{
    DirectedGraph g;
    g.rule_ = GraphRule::explicit_list;
    g.name_ = "explicit";
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (k > 0 && edges[k] == edges[k - 1]) {
            if (g.parallel_.empty() || g.parallel_.back() != edges[k]) g.parallel_.push_back(edges[k]);
            continue;
        }
        g.edges_.push_back(std::move(edges[k]));
    }
    return g;
}

DirectedGraph DirectedGraph::custom(std::string name, Predicate predicate)
{
    if (!predicate) throw DomainError("custom graph rule '" + name + "' has no predicate");
    DirectedGraph g;
    g.rule_ = GraphRule::custom;
    g.name_ = std::move(name);
    g.predicate_ = std::move(predicate);
    return g;
}

bool DirectedGraph::contains(const PointRef& x, const PointRef& y) const
{
    switch (rule_) {
    case GraphRule::complete: return true;
    case GraphRule::diagonal: return x == y;
    case GraphRule::explicit_list: {
        const Edge key{x, y};
        return std::binary_search(edges_.begin(), edges_.end(), key);
    }
    case GraphRule::custom: return predicate_(x, y);
    }
    return false;
}

std::vector<std::pair<std::size_t, std::size_t>> DirectedGraph::explicit_positions(const SubsetPair& sets) const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edges_.size());
    const std::size_t n = sets.points().size();
    for (const auto& [x, y] : edges_) {
        const std::size_t i = sets.position(x);
        const std::size_t j = sets.position(y);
        if (i < n && j < n) out.emplace_back(i, j);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool contains_edge(const DirectedGraph& g, const MetricSpace& space, const PointRef& x,
                   const PointRef& y)
{
    space.check_point(x);
    space.check_point(y);
    return g.contains(x, y);
}

ValidationReport validate_graph(const DirectedGraph& g, const MetricSpace& space,
                                const SubsetPair& sets)
{
    ValidationReport report;
    const auto& pts = sets.points();
    if (g.rule() == GraphRule::explicit_list) {
        for (const auto& e : g.edges()) {
            for (const PointRef* p : {&e.first, &e.second}) {
                bool foreign = false;
                try {
                    space.check_point(*p);
                } catch (const DomainError&) {
                    foreign = true;
                }
                if (foreign || sets.position(*p) >= pts.size()) {
                    report.add("foreign_endpoint", "foreign endpoint " + p->to_string() + " in edge " +
                                                       to_string(e));
                    break;
                }
            }
        }
        for (const auto& e : g.parallel_edges()) {
            report.add("parallel_edge", "parallel edge " + to_string(e));
        }
    }
    if (g.rule() == GraphRule::explicit_list || g.rule() == GraphRule::custom) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!g.contains(pts[i], pts[i])) {
                report.add("diagonal", "diagonal incomplete at " + pts[i].to_string(), {i});
            }
        }
    }
    return report;
}

PreservationResult preserves_edges(const DirectedGraph& g, const SubsetPair& sets,
                                   std::span<const PointRef> images)
{
    PreservationResult result;
    if (g.rule() == GraphRule::complete) return result;
    const auto& pts = sets.points();
    g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
        if (g.contains(images[i], images[j])) return true;
        result.holds = false;
        result.counterexample = Edge{pts[i], pts[j]};
        return false;
    });
    return result;
}

} // namespace gprox
