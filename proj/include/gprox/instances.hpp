#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gprox/graph.hpp"
#include "gprox/metric.hpp"
#include "gprox/operators.hpp"

namespace gprox {

enum class InstanceKind { single_map, two_map };

/// A space, the sets A and B, a graph and one map (T) or two (T, S).
struct Instance {
    std::string name;
    InstanceKind kind = InstanceKind::single_map;
    MetricSpace space;
    SubsetPair sets;
    DirectedGraph graph;
    CyclicMap map;
    std::optional<CyclicMap> second;
    /// Sample grid step of coordinate instances; 0 for tabulated ones.
    double resolution = 0.0;
    /// Generating parameters, in a fixed order, for reports and files.
    std::vector<std::pair<std::string, std::string>> params;

    MapPair pair() const;
};

/// Graph rules available by name: complete, diagonal, same_set (edges whose
/// endpoints lie in the same one of A, B).
DirectedGraph named_graph(const std::string& rule, const SubsetPair& sets);

/// A = [-3,-1], B = [1,3], T(x) = (1-x)/2 on A and (-1-x)/2 on B. The step
/// must divide 2 so that ±1 and ±3 are grid points.
Instance interval_example(double grid_step, const std::string& graph_rule = "complete");

/// A = {(x-y)² + y² ≤ 1}, B = {(x+y)² + y² ≤ 1}, T(x,y) = (-x,y), sampled on
/// a grid symmetric under x ↦ -x.
Instance ellipse_example(double grid_step, const std::string& graph_rule = "complete");

/// A = [0,1]×{0}, B = [0,1]×{1}, T ≡ (1/2, 1), S ≡ (1/2, 0). The step must
/// divide 1/2.
Instance segments_example(double grid_step, const std::string& graph_rule = "complete");

/// Same sets with T(p) = (c + f(p.x − c), 1), S(p) = (c + f(p.x − c), 0).
/// For f ≤ α these satisfy d(Tx,Sy) ≤ α d(x,y) + (1−α) d(A,B) everywhere.
/// f = 0, c = 1/2 is segments_example.
Instance segments_family(double grid_step, double center, double factor,
                         const std::string& graph_rule = "complete");

enum class MapRule {
    nearest,  // nearest point of the other set (ties: lowest index)
    affine,   // c_target + factor·(x − c_source), snapped to the target set
    chain,    // exact affine orbits toward a shared centre, see RandomSpec
};

enum class RandomGraphRule { complete, diagonal, random, random_closed };

struct Box {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

/// Seeded tabulated instance built from a Euclidean point cloud in R².
///
/// nearest / affine: n_a points of A in box_a, n_b points of B in box_b, and
/// n_shared points (in box_a) that belong to both sets.
///
/// chain: a centre c (the middle of box_a, in both sets) and n_a + n_b seeds
/// at radius in [0.8R, R] around it, R = half the shorter side of box_a.
/// Each seed s contributes c + factorˡ(s − c) for l = 0..depth, alternating
/// between the sets; the map steps one level down and sends the last level
/// to c.
///
/// random graphs always contain Δ; random_closed also adds the images of
/// every edge under the map(s) until the edge set is closed.
struct RandomSpec {
    std::uint64_t seed = 1;
    std::size_t n_a = 10;
    std::size_t n_b = 10;
    std::size_t n_shared = 0;
    Box box_a{0.0, 1.0, 0.0, 1.0};
    Box box_b{1.5, 2.5, 0.0, 1.0};
    MapRule map_rule = MapRule::nearest;
    double factor = 0.5;
    std::size_t depth = 3;
    /// Two-map instance when set (S built by this rule).
    std::optional<MapRule> second_rule;
    RandomGraphRule graph_rule = RandomGraphRule::complete;
    double edge_probability = 0.1;
};

Instance random_instance(const RandomSpec& spec);

std::string to_string(MapRule rule);
std::string to_string(RandomGraphRule rule);
std::optional<MapRule> parse_map_rule(const std::string& text);
std::optional<RandomGraphRule> parse_graph_rule(const std::string& text);

/// Rebuilds a named coordinate example from its stored parameters.
Instance build_named_example(const std::string& name, double grid_step, const std::string& graph_rule,
                             double center = 0.5, double factor = 0.0);

} // namespace gprox
