#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gprox/graph.hpp"
#include "gprox/metric.hpp"
#include "gprox/operators.hpp"

namespace gprox {

/// strict:  (x,Tx) ∈ E(G) and d(x,Tx) ≤ d(A,B) + ε
/// vacuous: (x,Tx) ∈ E(G) ⇒ d(x,Tx) ≤ d(A,B) + ε
enum class MembershipMode { strict, vacuous };

struct ProximitySet {
    double epsilon = 0.0;
    MembershipMode mode = MembershipMode::strict;
    std::vector<PointRef> members;  // in sets.points() order
};

struct PairProximitySet {
    double epsilon = 0.0;
    std::vector<std::pair<PointRef, PointRef>> members;  // lexicographic by position
};

/// Exact scan of the sampled A ∪ B. ε = 0 is admitted. Throws
/// CapabilityError when the sets carry no samples.
ProximitySet enumerate_proximity_set(const MetricSpace& space, const SubsetPair& sets,
                                     const DirectedGraph& g, const CyclicMap& f, double epsilon,
                                     MembershipMode mode = MembershipMode::strict, Tolerance tol = {});

/// Pairs (x,y) ∈ E(G) ∩ (A×B) with d(Tx, Sy) ≤ d(A,B) + ε.
PairProximitySet enumerate_pair_set(const MetricSpace& space, const SubsetPair& sets,
                                    const DirectedGraph& g, const MapPair& pair, double epsilon,
                                    Tolerance tol = {});

Distance proximity_diameter(const MetricSpace& space, const ProximitySet& ps);

/// max over member pairs (x,y) of d(x,y): the distance inside each pair.
Distance pair_diameter(const MetricSpace& space, const PairProximitySet& pps);

/// 2ε/(1−α) + 2 d(A,B)/(1−α), α ∈ [0,1).
Distance contraction_diam_bound(double alpha, double epsilon, Distance dab);

/// ε/(1−k) + d(A,B)/(1−k), k ∈ [0,1).
Distance two_map_diam_bound(double k, double epsilon, Distance dab);

/// Smallest k with d(x,Tx) + d(Sy,y) ≤ k d(x,y) over the given pairs, or
/// nothing if some pair has d(x,y) = 0 with a positive left side.
std::optional<double> two_map_displacement_ratio(const MetricSpace& space, const MapPair& pair,
                                                 const PairProximitySet& pps);

struct MinimizerReport {
    PointRef minimizer = PointRef::at(0);
    Distance displacement = 0.0;
    /// d(z*, f z*) − d(A,B)
    double residual = 0.0;
    bool nonexpansive = false;
    /// Set only when nonexpansive: size of the strict set at ε = max(residual, 0) + τ.
    std::optional<std::size_t> set_size;
};

/// Exact argmin of d(z, f z) over eligible z ((z, f z) ∈ E(G)); ties go to
/// the lowest position. Throws DomainError when no point is eligible.
MinimizerReport minimizer_report(const MetricSpace& space, const SubsetPair& sets,
                                 const DirectedGraph& g, const CyclicMap& f, Tolerance tol = {});

} // namespace gprox
