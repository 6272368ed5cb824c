#include "gprox/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gprox {

namespace {

void require_samples(const SubsetPair& sets)
{
    if (!sets.has_samples()) {
        throw CapabilityError("enumeration needs sampled sets (tabulated instance or stored grid)");
    }
}

void require_epsilon(double epsilon)
{
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be >= 0");
}

} // namespace

ProximitySet enumerate_proximity_set(const MetricSpace& space, const SubsetPair& sets,
                                     const DirectedGraph& g, const CyclicMap& f, double epsilon,
                                     MembershipMode mode, Tolerance tol)
{
    require_samples(sets);
    require_epsilon(epsilon);
    const EvaluatedMap ev(space, sets, f);
    const double threshold = pair_distance(space, sets) + epsilon + tol.value();
    const auto& pts = sets.points();

    ProximitySet out;
    out.epsilon = epsilon;
    out.mode = mode;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool edge = g.contains(pts[i], ev.images[i]);
        const bool close = ev.displacement[i] <= threshold;
        const bool member = mode == MembershipMode::strict ? (edge && close) : (!edge || close);
        if (member) out.members.push_back(pts[i]);
    }
    return out;
}

PairProximitySet enumerate_pair_set(const MetricSpace& space, const SubsetPair& sets,
                                    const DirectedGraph& g, const MapPair& pair, double epsilon,
                                    Tolerance tol)
{
    require_samples(sets);
    require_epsilon(epsilon);
    const EvaluatedMap t(space, sets, pair.t);
    const EvaluatedMap s(space, sets, pair.s);
    const double threshold = pair_distance(space, sets) + epsilon + tol.value();
    const auto& pts = sets.points();
    std::vector<bool> in_a(pts.size()), in_b(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        in_a[i] = sets.in_a(pts[i]);
        in_b[i] = sets.in_b(pts[i]);
    }

    PairProximitySet out;
    out.epsilon = epsilon;
    g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
        if (!in_a[i] || !in_b[j]) return;
        if (t.image_points.distance_to(s.image_points, i, j) <= threshold) {
            out.members.emplace_back(pts[i], pts[j]);
        }
    });
    return out;
}

Distance proximity_diameter(const MetricSpace& space, const ProximitySet& ps)
{
    if (ps.members.empty()) throw DomainError("diameter of an empty proximity set");
    return set_diameter(space, ps.members);
}

Distance pair_diameter(const MetricSpace& space, const PairProximitySet& pps)
{
    if (pps.members.empty()) throw DomainError("diameter of an empty pair set");
    double best = 0.0;
    for (const auto& [x, y] : pps.members) best = std::max(best, space.distance(x, y));
    return best;
}

Distance contraction_diam_bound(double alpha, double epsilon, Distance dab)
{
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("contraction factor must lie in [0,1)");
    return 2.0 * epsilon / (1.0 - alpha) + 2.0 * dab / (1.0 - alpha);
}

Distance two_map_diam_bound(double k, double epsilon, Distance dab)
{
    if (!(k >= 0.0 && k < 1.0)) throw DomainError("k must lie in [0,1)");
    return epsilon / (1.0 - k) + dab / (1.0 - k);
}

std::optional<double> two_map_displacement_ratio(const MetricSpace& space, const MapPair& pair,
                                                 const PairProximitySet& pps)
{
    double k = 0.0;
    for (const auto& [x, y] : pps.members) {
        const double lhs = space.distance(x, pair.t(x)) + space.distance(pair.s(y), y);
        const double d = space.distance(x, y);
        if (d > 0.0) {
            k = std::max(k, lhs / d);
        } else if (lhs > 0.0) {
            return std::nullopt;
        }
    }
    return k;
}

MinimizerReport minimizer_report(const MetricSpace& space, const SubsetPair& sets,
                                 const DirectedGraph& g, const CyclicMap& f, Tolerance tol)
{
    require_samples(sets);
    const EvaluatedMap ev(space, sets, f);
    const auto& pts = sets.points();
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!g.contains(pts[i], ev.images[i])) continue;
        if (!best || ev.displacement[i] < ev.displacement[*best]) best = i;
    }
    if (!best) throw DomainError("no point z with (z, f(z)) in E(G)");

    MinimizerReport out;
    out.minimizer = pts[*best];
    out.displacement = ev.displacement[*best];
    out.residual = out.displacement - pair_distance(space, sets);
    out.nonexpansive = is_edge_nonexpansive(space, sets, g, f, tol).holds;
    if (out.nonexpansive) {
        const double eps = std::max(out.residual, 0.0) + tol.value();
        out.set_size = enumerate_proximity_set(space, sets, g, f, eps, MembershipMode::strict, tol)
                           .members.size();
    }
    return out;
}

} // namespace gprox
