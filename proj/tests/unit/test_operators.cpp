#include <gtest/gtest.h>

#include <cmath>

#include "gprox/instances.hpp"
#include "gprox/operators.hpp"
#include "oracles.hpp"

using namespace gprox;

namespace {

MetricSpace line(std::vector<double> xs)
{
    std::vector<std::vector<double>> d(xs.size(), std::vector<double>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) d[i][j] = std::abs(xs[i] - xs[j]);
    return MetricSpace::tabulated(d);
}

std::vector<PointRef> idx(std::initializer_list<std::size_t> list)
{
    std::vector<PointRef> out;
    for (auto i : list) out.push_back(PointRef::at(i));
    return out;
}

} // namespace

TEST(CrrParams, EnforcesTheOpenSimplex)
{
    EXPECT_NO_THROW(CrrParams(0.5, 0.2, 0.09));
    EXPECT_THROW(CrrParams(0.5, 0.25, 0.0), DomainError);
    EXPECT_THROW(CrrParams(-0.1, 0.0, 0.0), DomainError);
    EXPECT_DOUBLE_EQ(CrrParams(0.2, 0.2, 0.0).k(), 0.5);
}

TEST(ValidateCyclic, IntervalMapIsCyclic)
{
    const auto inst = interval_example(0.5);
    EXPECT_TRUE(validate_cyclic(inst.map, inst.sets).ok());
}

TEST(ValidateCyclic, IdentityOnDisjointSetsFailsEverywhere)
{
    SubsetPair sets(idx({0, 1}), idx({2}));
    const auto r = validate_cyclic(CyclicMap::table({0, 1, 2}), sets);
    EXPECT_EQ(r.violations.size(), 3u);
}

TEST(ValidateCyclic, SwapIsCyclic)
{
    SubsetPair sets(idx({0}), idx({1}));
    EXPECT_TRUE(validate_cyclic(CyclicMap::table({1, 0}), sets).ok());
}

TEST(ValidatePair, RequiresTotality)
{
    const auto seg = segments_example(0.25);
    EXPECT_TRUE(validate_pair(seg.pair(), seg.sets).ok());
    SubsetPair sets(idx({0}), idx({1}));
    MapPair short_s{CyclicMap::table({1, 0}), CyclicMap::table({0})};
    EXPECT_FALSE(validate_pair(short_s, sets).ok());
}

TEST(MinContractionFactor, IntervalCrossPairKeepsItsLength)
{
    // T(-1) = 1 and T(1) = -1, so the cross edge (-1, 1) has ratio exactly 1.
    const auto inst = interval_example(0.5);
    const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
    EXPECT_FALSE(cf.contractive);
    EXPECT_DOUBLE_EQ(cf.alpha_min, 1.0);
    ASSERT_TRUE(cf.worst_edge);
    EXPECT_EQ(std::abs(cf.worst_edge->first.coords()[0]), 1.0);
}

TEST(MinContractionFactor, IntervalWithinSetsIsOneHalf)
{
    const auto inst = interval_example(0.5, "same_set");
    const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
    EXPECT_TRUE(cf.contractive);
    EXPECT_NEAR(cf.alpha_min, 0.5, 1e-12);
}

TEST(MinContractionFactor, IdentityOnDiagonalIsZero)
{
    SubsetPair sets(idx({0, 1}), idx({0, 1}));
    const auto cf = min_contraction_factor(line({0, 1}), sets, DirectedGraph::diagonal(), CyclicMap::table({0, 1}));
    EXPECT_TRUE(cf.contractive);
    EXPECT_EQ(cf.alpha_min, 0.0);
    EXPECT_FALSE(cf.worst_edge);
}

TEST(MinContractionFactor, ExpandingEdgeIsNotContractive)
{
    // 0 at 0, 1 at 0.1, 2 at 1, 3 at 3: the edge (0,1) maps to (2,3).
    SubsetPair sets(idx({0, 1}), idx({2, 3}));
    const auto cf = min_contraction_factor(line({0, 0.1, 1, 3}), sets, DirectedGraph::complete(),
                                           CyclicMap::table({2, 3, 0, 1}));
    EXPECT_FALSE(cf.contractive);
    EXPECT_NEAR(cf.alpha_min, 20.0, 1e-9);
}

TEST(MinContractionFactor, ZeroLengthEdgeWithDistinctImages)
{
    // Points 0 and 1 coincide but map to different places.
    const auto space = MetricSpace::tabulated({{0, 0, 1, 2}, {0, 0, 1, 2}, {1, 1, 0, 1}, {2, 2, 1, 0}});
    SubsetPair sets(idx({0, 1}), idx({2, 3}));
    const auto cf = min_contraction_factor(space, sets, DirectedGraph::complete(), CyclicMap::table({2, 3, 0, 0}));
    EXPECT_FALSE(cf.contractive);
    EXPECT_TRUE(std::isinf(cf.alpha_min));
}

TEST(MinContractionFactor, NonPreservingMapThrows)
{
    const auto g = DirectedGraph::from_edges({{PointRef::at(0), PointRef::at(0)},
                                              {PointRef::at(1), PointRef::at(1)},
                                              {PointRef::at(0), PointRef::at(1)}});
    SubsetPair sets(idx({0}), idx({1}));
    EXPECT_THROW(min_contraction_factor(line({0, 1}), sets, g, CyclicMap::table({1, 0})), ClassificationError);
}

TEST(IsGContraction, IntervalWithinSets)
{
    const auto inst = interval_example(0.5, "same_set");
    EXPECT_TRUE(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, 0.5).holds);
    const auto r = is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, 0.4);
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.worst_edge);
    // Worst excess is on the longest within-set edge: |x−y| = 2, excess 1 − 0.8.
    EXPECT_NEAR(r.worst_excess, 0.2, 1e-12);
    EXPECT_THROW(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, 1.0), DomainError);
}

TEST(IsGContraction, IntervalOnCompleteGraphFailsBelowOne)
{
    const auto inst = interval_example(0.5);
    EXPECT_FALSE(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, 0.5).holds);
    EXPECT_FALSE(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, 0.999).holds);
}

TEST(IsCrrMoh, ReducesToContraction)
{
    const auto inst = interval_example(0.5, "same_set");
    EXPECT_TRUE(is_crr_moh(inst.space, inst.sets, inst.graph, inst.map, CrrParams(0.5, 0, 0)).holds);
    EXPECT_FALSE(is_crr_moh(inst.space, inst.sets, inst.graph, inst.map, CrrParams(0.4, 0, 0)).holds);
}

TEST(IsCrrMoh, ExpandingMapNearSimplexBoundary)
{
    SubsetPair sets(idx({0, 1}), idx({2, 3}));
    const auto space = line({0, 0.1, 1, 3});
    const auto f = CyclicMap::table({2, 3, 0, 1});
    const auto r = is_crr_moh(space, sets, DirectedGraph::complete(), f, CrrParams(0.33, 0.33, 0.0));
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.worst_edge);
    // Same verdict from the brute-force oracle.
    Instance inst{.name = "x", .space = space, .sets = sets, .graph = DirectedGraph::complete(), .map = f};
    EXPECT_FALSE(oracle::crr_holds(oracle::tab(inst), 0.33, 0.33, 0.0));
}

TEST(CrrParamsFeasible, IntervalWithinSetsFindsLexFirstTriple)
{
    // (0, 0, γ) needs |x−y|/2 ≤ 2γ for |x−y| up to 2, so γ = 0.5 is the first hit.
    const auto inst = interval_example(0.5, "same_set");
    const auto p = crr_params_feasible(inst.space, inst.sets, inst.graph, inst.map, 0.05);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->alpha(), 0.0);
    EXPECT_EQ(p->beta(), 0.0);
    EXPECT_NEAR(p->gamma(), 0.5, 1e-12);
    EXPECT_TRUE(is_crr_moh(inst.space, inst.sets, inst.graph, inst.map, *p).holds);
}

TEST(CrrParamsFeasible, IntervalOnCompleteGraphIsInfeasible)
{
    // Cross edge (-1, 1): 2 ≤ 2α + 4β + 2γ < 2 is impossible.
    const auto inst = interval_example(0.5);
    EXPECT_FALSE(crr_params_feasible(inst.space, inst.sets, inst.graph, inst.map, 0.05));
}

TEST(CrrParamsFeasible, DiagonalGraphGivesZeroTriple)
{
    SubsetPair sets(idx({0}), idx({1}));
    const auto p = crr_params_feasible(line({0, 1}), sets, DirectedGraph::diagonal(), CyclicMap::table({1, 0}), 0.1);
    ASSERT_TRUE(p);
    EXPECT_EQ(*p, CrrParams(0, 0, 0));
}

TEST(CrrParamsFeasible, IsometryAtDistanceZeroIsInfeasible)
{
    // A = B = {0, 1}, T swaps: d(T0, T1) = d(0,1) = 1, d(x,Tx) = 1, d(A,B) = 0.
    // The right side is α + 2β < 1 for every grid triple.
    SubsetPair sets(idx({0, 1}), idx({0, 1}));
    EXPECT_FALSE(crr_params_feasible(line({0, 1}), sets, DirectedGraph::complete(), CyclicMap::table({1, 0}), 0.05));
    EXPECT_FALSE(crr_params_feasible(line({0, 1}), sets, DirectedGraph::complete(), CyclicMap::table({1, 0}), 0.01));
}

TEST(IsCrr2Map, SegmentsConstantMaps)
{
    const auto seg = segments_example(0.25);
    const auto pair = seg.pair();
    EXPECT_FALSE(is_crr_2map(seg.space, seg.sets, seg.graph, pair, CrrParams(0, 0, 0.9)).holds);

    // (0, 0.4, 0.1): compare the verdict with a direct scan over A×B.
    bool direct = true;
    for (const auto& x : seg.sets.a()) {
        for (const auto& y : seg.sets.b()) {
            const double lhs = seg.space.distance(pair.t(x), pair.s(y));
            const double rhs =
                0.4 * (seg.space.distance(x, pair.t(x)) + seg.space.distance(y, pair.s(y))) + 0.1 * 1.0;
            if (lhs > rhs + 1e-9) direct = false;
        }
    }
    EXPECT_EQ(is_crr_2map(seg.space, seg.sets, seg.graph, pair, CrrParams(0, 0.4, 0.1)).holds, direct);
    EXPECT_FALSE(crr_2map_params_feasible(seg.space, seg.sets, seg.graph, pair, 0.05));
}

TEST(IsCrr2Map, VacuousWithoutCrossEdges)
{
    const auto seg = segments_example(0.25, "diagonal");
    const auto r = is_crr_2map(seg.space, seg.sets, seg.graph, seg.pair(), CrrParams(0, 0, 0));
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.edges_checked, 0u);
}

TEST(IsCrr2Map, EqualMapsReduceToSingleMapContraction)
{
    RandomSpec spec;
    spec.seed = 5;
    spec.map_rule = MapRule::chain;
    spec.second_rule = MapRule::chain;
    spec.factor = 0.4;
    const auto inst = random_instance(spec);
    const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
    ASSERT_TRUE(cf.contractive);
    const double a = std::min(cf.alpha_min + 1e-6, 0.999);
    EXPECT_TRUE(is_crr_2map(inst.space, inst.sets, inst.graph, inst.pair(), CrrParams(a, 0, 0)).holds);
}

TEST(IsEdgeNonexpansive, Cases)
{
    const auto inst = interval_example(0.5);
    EXPECT_TRUE(is_edge_nonexpansive(inst.space, inst.sets, inst.graph, inst.map).holds);
    SubsetPair swap_sets(idx({0, 1}), idx({0, 1}));
    EXPECT_TRUE(is_edge_nonexpansive(line({0, 1}), swap_sets, DirectedGraph::complete(), CyclicMap::table({1, 0})).holds);
    SubsetPair sets(idx({0, 1}), idx({2, 3}));
    EXPECT_FALSE(is_edge_nonexpansive(line({0, 0.1, 1, 3}), sets, DirectedGraph::complete(),
                                      CyclicMap::table({2, 3, 0, 1}))
                     .holds);
}

TEST(Classification, MatchesOracleOnRandomInstances)
{
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.n_a = 6;
        spec.n_b = 6;
        spec.n_shared = seed % 3;
        spec.map_rule = seed % 2 ? MapRule::nearest : MapRule::affine;
        spec.graph_rule = RandomGraphRule::random_closed;
        spec.edge_probability = 0.15;
        const auto inst = random_instance(spec);
        const auto o = oracle::tab(inst);
        ASSERT_TRUE(oracle::preserves(o));
        const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
        const double want = oracle::alpha_min(o);
        if (std::isinf(want)) {
            EXPECT_TRUE(std::isinf(cf.alpha_min)) << seed;
        } else {
            EXPECT_NEAR(cf.alpha_min, want, 1e-12) << seed;
        }
        EXPECT_EQ(is_edge_nonexpansive(inst.space, inst.sets, inst.graph, inst.map).holds, oracle::nonexpansive(o));
        const auto p = crr_params_feasible(inst.space, inst.sets, inst.graph, inst.map, 0.1);
        if (p) EXPECT_TRUE(oracle::crr_holds(o, p->alpha(), p->beta(), p->gamma())) << seed;
    }
}
