#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gprox/analysis.hpp"
#include "gprox/instances.hpp"
#include "gprox/solver.hpp"
#include "oracles.hpp"

using namespace gprox;

namespace {

Instance cloud(std::uint64_t seed, RandomGraphRule graph = RandomGraphRule::random_closed)
{
    RandomSpec spec;
    spec.seed = seed;
    spec.n_a = 7;
    spec.n_b = 6;
    spec.n_shared = seed % 3;
    spec.box_b = {0.5, 1.5, 0, 1};
    spec.graph_rule = graph;
    spec.edge_probability = 0.15;
    return random_instance(spec);
}

} // namespace

TEST(Properties, GContractionImpliesCrrWithZeroBetaAndGamma)
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto inst = cloud(seed);
        const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
        if (!cf.contractive || cf.alpha_min >= 1.0) continue;
        const double alpha = std::max(cf.alpha_min, 1e-6);
        if (alpha >= 1.0) continue;
        EXPECT_TRUE(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, alpha).holds) << seed;
        EXPECT_TRUE(is_crr_moh(inst.space, inst.sets, inst.graph, inst.map, CrrParams(alpha, 0, 0)).holds) << seed;
    }
}

TEST(Properties, FeasibleCrrTripleSatisfiesTheInequality)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto inst = cloud(seed);
        const auto p = crr_params_feasible(inst.space, inst.sets, inst.graph, inst.map, 0.1);
        if (!p) continue;
        EXPECT_TRUE(is_crr_moh(inst.space, inst.sets, inst.graph, inst.map, *p).holds);
        EXPECT_TRUE(oracle::crr_holds(oracle::tab(inst), p->alpha(), p->beta(), p->gamma()));
        EXPECT_LT(p->alpha() + 2 * p->beta() + p->gamma(), 1.0);
    }
}

TEST(Properties, AlphaAboveMinimumHoldsAndBelowFails)
{
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto inst = cloud(seed);
        const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
        if (!cf.contractive || cf.alpha_min <= 2e-3 || cf.alpha_min >= 0.999) continue;
        EXPECT_TRUE(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, cf.alpha_min).holds);
        EXPECT_FALSE(is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, cf.alpha_min - 1e-3).holds);
        EXPECT_NEAR(cf.alpha_min, oracle::alpha_min(oracle::tab(inst)), 1e-12);
    }
}

TEST(Properties, ProximitySetIsMonotoneInEpsilon)
{
    const std::vector<double> grid{0.0, 0.01, 0.05, 0.1, 0.3, 1.0, 3.0};
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto inst = cloud(seed, RandomGraphRule::random);
        std::size_t previous = 0;
        std::optional<double> previous_diam;
        for (double eps : grid) {
            const auto ps = enumerate_proximity_set(inst.space, inst.sets, inst.graph, inst.map, eps);
            EXPECT_GE(ps.members.size(), previous);
            previous = ps.members.size();
            if (!ps.members.empty()) {
                const double d = proximity_diameter(inst.space, ps);
                if (previous_diam) EXPECT_GE(d, *previous_diam);
                previous_diam = d;
            }
        }
    }
}

TEST(Properties, ResidualsNeverDropBelowSetDistance)
{
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto inst = cloud(seed, RandomGraphRule::complete);
        const auto trace = picard_orbit(inst.space, inst.sets, inst.map, inst.sets.a().front(), 12);
        for (double r : trace.residuals) EXPECT_GE(r, -1e-9);
    }
}

TEST(Properties, FoundWitnessMeetsTheStoppingRule)
{
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.map_rule = MapRule::chain;
        spec.factor = 0.4;
        spec.depth = 6;
        const auto inst = random_instance(spec);
        SolveConfig cfg;
        cfg.epsilon = 1e-3;
        const auto r = find_proximity_point(inst.space, inst.sets, inst.graph, inst.map, inst.sets.a().back(), cfg);
        if (r.status != SolveStatus::found) continue;
        const auto w = *r.witness;
        EXPECT_LE(inst.space.distance(w, inst.map(w)), r.set_distance + cfg.epsilon + 1e-9);
    }
}

TEST(Properties, DiagonalGraphIsAlwaysNonexpansive)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = cloud(seed, RandomGraphRule::diagonal);
        EXPECT_TRUE(is_edge_nonexpansive(inst.space, inst.sets, inst.graph, inst.map).holds);
    }
}

TEST(Properties, MinimizerMatchesBruteForce)
{
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = cloud(seed, RandomGraphRule::complete);
        const auto m = minimizer_report(inst.space, inst.sets, inst.graph, inst.map);
        const auto o = oracle::tab(inst);
        double best = INFINITY;
        for (std::size_t i = 0; i < o.n; ++i) best = std::min(best, o.d[i][o.t[i]]);
        EXPECT_DOUBLE_EQ(m.displacement, best);
        EXPECT_DOUBLE_EQ(m.residual, best - oracle::dab(o));
    }
}
