#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gprox/errors.hpp"

namespace gprox {

using Coords = std::vector<double>;
using Distance = double;

inline constexpr double kDefaultTolerance = 1e-9;

/// Absolute comparison slack used to realise "<=" checks numerically.
class Tolerance {
public:
    constexpr Tolerance() = default;
    explicit Tolerance(double value);

    constexpr double value() const noexcept { return value_; }

private:
    double value_ = kDefaultTolerance;
};

/// A point of A ∪ B: an index into a tabulated space, or a coordinate vector.
class PointRef {
public:
    static PointRef at(std::size_t index) { return PointRef(index); }
    static PointRef coords(Coords c) { return PointRef(std::move(c)); }

    bool is_index() const noexcept { return std::holds_alternative<std::size_t>(value_); }
    std::size_t index() const;
    const Coords& coords() const;

    std::string to_string() const;

    friend bool operator==(const PointRef&, const PointRef&) = default;
    friend bool operator<(const PointRef& a, const PointRef& b) { return a.value_ < b.value_; }

private:
    explicit PointRef(std::size_t index) : value_(index) {}
    explicit PointRef(Coords c) : value_(std::move(c)) {}

    std::variant<std::size_t, Coords> value_;
};

enum class SpaceKind { tabulated, coordinate };

/// Either an explicit n×n distance matrix or R^d with the Euclidean metric.
/// Copies share the underlying matrix.
class MetricSpace {
public:
    /// Throws StructuralError on non-square or non-finite input.
    static MetricSpace tabulated(const std::vector<std::vector<double>>& rows);
    static MetricSpace euclidean(std::size_t dimension);

    SpaceKind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return n_; }
    std::size_t dimension() const noexcept { return dim_; }

    double entry(std::size_t i, std::size_t j) const { return (*dist_)[i * n_ + j]; }

    /// Throws DomainError for an out-of-range index, a dimension mismatch or
    /// a point of the wrong kind.
    void check_point(const PointRef& p) const;
    Distance distance(const PointRef& x, const PointRef& y) const;

private:
    MetricSpace() = default;

    SpaceKind kind_ = SpaceKind::coordinate;
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::shared_ptr<const std::vector<double>> dist_;
};

/// Flat, index-addressed view of a list of points for tight scan loops.
class PointTable {
public:
    PointTable(const MetricSpace& space, std::span<const PointRef> points);

    std::size_t size() const noexcept { return size_; }
    Distance distance(std::size_t i, std::size_t j) const { return distance_to(*this, i, j); }
    /// d(this[i], other[j]); both tables must come from the same space.
    Distance distance_to(const PointTable& other, std::size_t i, std::size_t j) const;

private:
    const MetricSpace* space_;
    std::size_t size_;
    std::vector<std::size_t> indices_;
    std::vector<double> flat_;
};

struct Violation {
    std::string kind;
    std::string message;
    std::vector<std::size_t> witness;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    void add(std::string kind, std::string message, std::vector<std::size_t> witness = {});
    void merge(const ValidationReport& other);
};

/// Membership predicate for a continuous set such as [-3,-1] or an ellipse.
struct Region {
    std::string name;
    std::function<bool(const Coords&, double)> contains;
};

/// The sets A and B. Coordinate instances also carry the region predicates,
/// which decide membership for points off the sample grid.
class SubsetPair {
public:
    /// Throws DomainError if either list is empty.
    SubsetPair(std::vector<PointRef> a, std::vector<PointRef> b);
    /// Region-only sets with no samples (enumeration is unavailable).
    SubsetPair(Region a, Region b);

    SubsetPair with_regions(Region a, Region b, double membership_tol = kDefaultTolerance) const;

    const std::vector<PointRef>& a() const noexcept { return a_; }
    const std::vector<PointRef>& b() const noexcept { return b_; }
    bool has_samples() const noexcept { return !a_.empty() && !b_.empty(); }
    bool has_regions() const noexcept { return static_cast<bool>(region_a_.contains); }

    bool in_a(const PointRef& p) const;
    bool in_b(const PointRef& p) const;

    /// A followed by the members of B not already in A.
    const std::vector<PointRef>& points() const noexcept { return union_; }
    /// Position of p in points(), or points().size() if absent.
    std::size_t position(const PointRef& p) const;

private:
    std::vector<PointRef> a_;
    std::vector<PointRef> b_;
    std::vector<PointRef> sorted_a_;
    std::vector<PointRef> sorted_b_;
    std::vector<PointRef> union_;
    std::vector<std::pair<PointRef, std::size_t>> sorted_union_;
    Region region_a_;
    Region region_b_;
    double membership_tol_ = kDefaultTolerance;

    void index_samples();
};

ValidationReport validate_metric(const MetricSpace& space, Tolerance tol = {});

/// Checks that samples belong to the space and, for tabulated spaces, that
/// A ∪ B covers every index.
ValidationReport validate_subsets(const MetricSpace& space, const SubsetPair& sets);

/// d(A,B) = min over sampled a ∈ A, b ∈ B of d(a,b).
Distance pair_distance(const MetricSpace& space, const SubsetPair& sets);

Distance set_diameter(const MetricSpace& space, std::span<const PointRef> points);

} // namespace gprox
