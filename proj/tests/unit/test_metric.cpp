#include <gtest/gtest.h>

#include <cmath>

#include "gprox/format.hpp"
#include "gprox/metric.hpp"

using namespace gprox;

namespace {

MetricSpace line3()
{
    return MetricSpace::tabulated({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
}

bool has_kind(const ValidationReport& r, const std::string& kind)
{
    for (const auto& v : r.violations)
        if (v.kind == kind) return true;
    return false;
}

} // namespace

TEST(Tolerance, RejectsNegativeAndNonFinite)
{
    EXPECT_THROW(Tolerance(-1.0), DomainError);
    EXPECT_THROW(Tolerance(NAN), DomainError);
    EXPECT_DOUBLE_EQ(Tolerance().value(), 1e-9);
    EXPECT_DOUBLE_EQ(Tolerance(0.0).value(), 0.0);
}

TEST(MetricSpace, TabulatedRejectsMalformedMatrices)
{
    EXPECT_THROW(MetricSpace::tabulated({{0, 1}, {1}}), StructuralError);
    EXPECT_THROW(MetricSpace::tabulated({{0, INFINITY}, {1, 0}}), StructuralError);
    EXPECT_THROW(MetricSpace::tabulated({{0, NAN}, {NAN, 0}}), StructuralError);
}

TEST(MetricSpace, DistanceAndPointChecks)
{
    const auto s = line3();
    EXPECT_EQ(s.size(), 3u);
    EXPECT_DOUBLE_EQ(s.distance(PointRef::at(0), PointRef::at(2)), 2.0);
    EXPECT_THROW(s.check_point(PointRef::at(3)), DomainError);
    EXPECT_THROW(s.check_point(PointRef::coords({0.0})), DomainError);

    const auto e = MetricSpace::euclidean(2);
    EXPECT_DOUBLE_EQ(e.distance(PointRef::coords({0, 0}), PointRef::coords({3, 4})), 5.0);
    EXPECT_THROW(e.check_point(PointRef::coords({1.0})), DomainError);
    EXPECT_THROW(e.check_point(PointRef::at(0)), DomainError);
}

TEST(ValidateMetric, AcceptsAMetric)
{
    EXPECT_TRUE(validate_metric(line3()).ok());
    EXPECT_TRUE(validate_metric(MetricSpace::euclidean(3)).ok());
}

TEST(ValidateMetric, ReportsEachAxiomWithWitness)
{
    // d(0,2) = 5 > d(0,1) + d(1,2) = 2
    const auto tri = validate_metric(MetricSpace::tabulated({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}));
    ASSERT_TRUE(has_kind(tri, "triangle"));
    bool witnessed = false;
    for (const auto& v : tri.violations)
        if (v.kind == "triangle" && v.witness == std::vector<std::size_t>{0, 1, 2}) witnessed = true;
    EXPECT_TRUE(witnessed);

    const auto sym = validate_metric(MetricSpace::tabulated({{0, 1}, {2, 0}}));
    ASSERT_TRUE(has_kind(sym, "symmetry"));
    EXPECT_EQ(sym.violations.front().witness, (std::vector<std::size_t>{0, 1}));

    EXPECT_TRUE(has_kind(validate_metric(MetricSpace::tabulated({{1, 1}, {1, 0}})), "zero_diagonal"));
    EXPECT_TRUE(has_kind(validate_metric(MetricSpace::tabulated({{0, -1}, {-1, 0}})), "nonnegativity"));
}

TEST(ValidateMetric, ToleranceAbsorbsRoundoff)
{
    const auto s = MetricSpace::tabulated({{0, 1, 2 + 1e-12}, {1, 0, 1}, {2 + 1e-12, 1, 0}});
    EXPECT_TRUE(validate_metric(s).ok());
    EXPECT_FALSE(validate_metric(s, Tolerance(0.0)).ok());
}

TEST(SubsetPair, UnionKeepsAFirstAndDeduplicates)
{
    SubsetPair sets({PointRef::at(2), PointRef::at(0)}, {PointRef::at(0), PointRef::at(1)});
    ASSERT_EQ(sets.points().size(), 3u);
    EXPECT_EQ(sets.points()[0], PointRef::at(2));
    EXPECT_EQ(sets.points()[1], PointRef::at(0));
    EXPECT_EQ(sets.points()[2], PointRef::at(1));
    EXPECT_EQ(sets.position(PointRef::at(1)), 2u);
    EXPECT_EQ(sets.position(PointRef::at(7)), 3u);
    EXPECT_TRUE(sets.in_a(PointRef::at(0)));
    EXPECT_TRUE(sets.in_b(PointRef::at(0)));
    EXPECT_FALSE(sets.in_a(PointRef::at(1)));
}

TEST(SubsetPair, EmptySampleListsAreRejected)
{
    EXPECT_THROW(SubsetPair({}, {PointRef::at(0)}), DomainError);
}

TEST(SubsetPair, RegionsDecideOffGridMembership)
{
    Region unit{"[0,1]", [](const Coords& c, double tol) { return c[0] >= -tol && c[0] <= 1 + tol; }};
    Region far{"[2,3]", [](const Coords& c, double tol) { return c[0] >= 2 - tol && c[0] <= 3 + tol; }};
    SubsetPair sets =
        SubsetPair({PointRef::coords({0.0}), PointRef::coords({1.0})}, {PointRef::coords({2.0})})
            .with_regions(unit, far);
    EXPECT_TRUE(sets.in_a(PointRef::coords({0.37})));
    EXPECT_FALSE(sets.in_b(PointRef::coords({0.37})));

    SubsetPair only(unit, far);
    EXPECT_FALSE(only.has_samples());
    EXPECT_TRUE(only.in_b(PointRef::coords({2.5})));
}

TEST(ValidateSubsets, ForeignPointsAndCoverage)
{
    const auto s = line3();
    EXPECT_TRUE(validate_subsets(s, SubsetPair({PointRef::at(0)}, {PointRef::at(1), PointRef::at(2)})).ok());
    EXPECT_TRUE(has_kind(validate_subsets(s, SubsetPair({PointRef::at(0)}, {PointRef::at(5)})), "foreign_point"));
    EXPECT_TRUE(has_kind(validate_subsets(s, SubsetPair({PointRef::at(0)}, {PointRef::at(1)})), "coverage"));
}

TEST(PairDistance, MinimumOverSamples)
{
    const auto s = line3();
    EXPECT_DOUBLE_EQ(pair_distance(s, SubsetPair({PointRef::at(0)}, {PointRef::at(1), PointRef::at(2)})), 1.0);
    EXPECT_DOUBLE_EQ(pair_distance(s, SubsetPair({PointRef::at(1)}, {PointRef::at(1)})), 0.0);
}

TEST(SetDiameter, MaxPairwise)
{
    const auto s = line3();
    std::vector<PointRef> pts{PointRef::at(0), PointRef::at(2)};
    EXPECT_DOUBLE_EQ(set_diameter(s, pts), 2.0);
    std::vector<PointRef> one{PointRef::at(1)};
    EXPECT_DOUBLE_EQ(set_diameter(s, one), 0.0);
}

TEST(PointTable, MatchesSpaceDistances)
{
    const auto e = MetricSpace::euclidean(2);
    std::vector<PointRef> pts{PointRef::coords({0, 0}), PointRef::coords({1, 1}), PointRef::coords({-2, 0.5})};
    PointTable t(e, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            EXPECT_DOUBLE_EQ(t.distance(i, j), e.distance(pts[i], pts[j]));
}

TEST(Format, ExactRoundTripAndStableNumbers)
{
    for (double v : {0.1, 1.0 / 3.0, 2.0 / 7.0, 1e-300, 12345.678901234567}) {
        EXPECT_EQ(*parse_double(format_exact(v)), v);
    }
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(format_number(std::sqrt(2.0)), "1.41421356237");
    EXPECT_FALSE(parse_double("1.5x"));
    EXPECT_FALSE(parse_unsigned("-1"));
    EXPECT_EQ(*parse_double("+2.5"), 2.5);
}
