#include "gprox/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gprox/format.hpp"

namespace gprox {

Tolerance::Tolerance(double value) : value_(value)
{
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw DomainError("tolerance must be a finite nonnegative number");
    }
}

std::size_t PointRef::index() const
{
    if (!is_index()) throw DomainError("point " + to_string() + " is not an index point");
    return std::get<std::size_t>(value_);
}

const Coords& PointRef::coords() const
{
    if (is_index()) throw DomainError("point " + to_string() + " is not a coordinate point");
    return std::get<Coords>(value_);
}

std::string PointRef::to_string() const
{
    if (is_index()) return std::to_string(std::get<std::size_t>(value_));
    std::string out = "(";
    const auto& c = std::get<Coords>(value_);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_number(c[i]);
    }
    return out + ")";
}

MetricSpace MetricSpace::tabulated(const std::vector<std::vector<double>>& rows)
{
    const std::size_t n = rows.size();
    if (n == 0) throw StructuralError("distance matrix is empty");
    auto flat = std::make_shared<std::vector<double>>(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw StructuralError("distance matrix is not square: row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) + " entries, expected " +
                                  std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(rows[i][j])) {
                throw StructuralError("non-finite distance at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
            }
            (*flat)[i * n + j] = rows[i][j];
        }
    }
    MetricSpace space;
    space.kind_ = SpaceKind::tabulated;
    space.n_ = n;
    space.dist_ = std::move(flat);
    return space;
}

MetricSpace MetricSpace::euclidean(std::size_t dimension)
{
    if (dimension == 0) throw StructuralError("coordinate space needs dimension >= 1");
    MetricSpace space;
    space.kind_ = SpaceKind::coordinate;
    space.dim_ = dimension;
    return space;
}

void MetricSpace::check_point(const PointRef& p) const
{
    if (kind_ == SpaceKind::tabulated) {
        if (!p.is_index()) throw DomainError("coordinate point " + p.to_string() + " in tabulated space");
        if (p.index() >= n_) {
            throw DomainError("point " + p.to_string() + " outside tabulated space of size " +
                              std::to_string(n_));
        }
        return;
    }
    if (p.is_index()) throw DomainError("index point " + p.to_string() + " in coordinate space");
    const auto& c = p.coords();
    if (c.size() != dim_) {
        throw DomainError("point " + p.to_string() + " has dimension " + std::to_string(c.size()) +
                          ", space has " + std::to_string(dim_));
    }
    for (double v : c) {
        if (!std::isfinite(v)) throw DomainError("point " + p.to_string() + " is not finite");
    }
}

Distance MetricSpace::distance(const PointRef& x, const PointRef& y) const
{
    check_point(x);
    check_point(y);
    if (kind_ == SpaceKind::tabulated) return entry(x.index(), y.index());
    const auto& a = x.coords();
    const auto& b = y.coords();
    double sum = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

PointTable::PointTable(const MetricSpace& space, std::span<const PointRef> points)
    : space_(&space), size_(points.size())
{
    if (space.kind() == SpaceKind::tabulated) {
        indices_.reserve(points.size());
        for (const auto& p : points) {
            space.check_point(p);
            indices_.push_back(p.index());
        }
    } else {
        flat_.reserve(points.size() * space.dimension());
        for (const auto& p : points) {
            space.check_point(p);
            flat_.insert(flat_.end(), p.coords().begin(), p.coords().end());
        }
    }
}

Distance PointTable::distance_to(const PointTable& other, std::size_t i, std::size_t j) const
{
    if (space_->kind() == SpaceKind::tabulated) return space_->entry(indices_[i], other.indices_[j]);
    const std::size_t dim = space_->dimension();
    const double* a = flat_.data() + i * dim;
    const double* b = other.flat_.data() + j * dim;
    double sum = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = a[k] - b[k];
        sum += d * d;
    }
    return std::sqrt(sum);
}

void ValidationReport::add(std::string kind, std::string message, std::vector<std::size_t> witness)
{
    violations.push_back({std::move(kind), std::move(message), std::move(witness)});
}

void ValidationReport::merge(const ValidationReport& other)
{
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

SubsetPair::SubsetPair(std::vector<PointRef> a, std::vector<PointRef> b)
    : a_(std::move(a)), b_(std::move(b))
{
    if (a_.empty() || b_.empty()) throw DomainError("subsets A and B must be nonempty");
    index_samples();
}

SubsetPair::SubsetPair(Region a, Region b) : region_a_(std::move(a)), region_b_(std::move(b))
{
    if (!region_a_.contains || !region_b_.contains) {
        throw DomainError("region-only subsets need membership predicates");
    }
}

SubsetPair SubsetPair::with_regions(Region a, Region b, double membership_tol) const
{
    SubsetPair copy = *this;
    copy.region_a_ = std::move(a);
    copy.region_b_ = std::move(b);
    copy.membership_tol_ = membership_tol;
    return copy;
}

void SubsetPair::index_samples()
{
    sorted_a_ = a_;
    std::sort(sorted_a_.begin(), sorted_a_.end());
    sorted_b_ = b_;
    std::sort(sorted_b_.begin(), sorted_b_.end());

    // First occurrence wins, A before B.
    std::vector<std::pair<PointRef, std::size_t>> all;
    all.reserve(a_.size() + b_.size());
    for (const auto& p : a_) all.emplace_back(p, all.size());
    for (const auto& p : b_) all.emplace_back(p, all.size());
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& l, const auto& r) { return l.first < r.first; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const auto& l, const auto& r) { return l.first == r.first; }),
              all.end());
    std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.second < r.second; });

    union_.clear();
    union_.reserve(all.size());
    sorted_union_.clear();
    sorted_union_.reserve(all.size());
    for (auto& [p, original] : all) {
        sorted_union_.emplace_back(p, union_.size());
        union_.push_back(std::move(p));
    }
    std::sort(sorted_union_.begin(), sorted_union_.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
}

bool SubsetPair::in_a(const PointRef& p) const
{
    if (region_a_.contains && !p.is_index()) return region_a_.contains(p.coords(), membership_tol_);
    return std::binary_search(sorted_a_.begin(), sorted_a_.end(), p);
}

bool SubsetPair::in_b(const PointRef& p) const
{
    if (region_b_.contains && !p.is_index()) return region_b_.contains(p.coords(), membership_tol_);
    return std::binary_search(sorted_b_.begin(), sorted_b_.end(), p);
}

std::size_t SubsetPair::position(const PointRef& p) const
{
    auto it = std::lower_bound(sorted_union_.begin(), sorted_union_.end(), p,
                               [](const auto& entry, const PointRef& key) { return entry.first < key; });
    if (it != sorted_union_.end() && it->first == p) return it->second;
    return union_.size();
}

ValidationReport validate_metric(const MetricSpace& space, Tolerance tol)
{
    ValidationReport report;
    if (space.kind() == SpaceKind::coordinate) return report;  // Euclidean by construction

    const std::size_t n = space.size();
    const double t = tol.value();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(space.entry(i, i)) > t) {
            report.add("zero_diagonal", "d(" + std::to_string(i) + "," + std::to_string(i) +
                                            ") = " + format_number(space.entry(i, i)) + " is not 0",
                       {i, i});
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (space.entry(i, j) < -t) {
                report.add("nonnegativity", "d(" + std::to_string(i) + "," + std::to_string(j) +
                                                ") = " + format_number(space.entry(i, j)) + " < 0",
                           {i, j});
            }
            if (j > i && std::abs(space.entry(i, j) - space.entry(j, i)) > t) {
                report.add("symmetry", "d(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                           format_number(space.entry(i, j)) + " but d(" +
                                           std::to_string(j) + "," + std::to_string(i) + ") = " +
                                           format_number(space.entry(j, i)),
                           {i, j});
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double direct = space.entry(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double detour = space.entry(i, k) + space.entry(k, j);
                if (direct > detour + t) {
                    std::vector<std::size_t> w{i, k, j};
                    std::sort(w.begin(), w.end());
                    report.add("triangle",
                               "d(" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                                   format_number(direct) + " > d(" + std::to_string(i) + "," +
                                   std::to_string(k) + ") + d(" + std::to_string(k) + "," +
                                   std::to_string(j) + ") = " + format_number(detour),
                               std::move(w));
                }
            }
        }
    }
    return report;
}

ValidationReport validate_subsets(const MetricSpace& space, const SubsetPair& sets)
{
    ValidationReport report;
    auto check = [&](const std::vector<PointRef>& pts, const char* name) {
        for (const auto& p : pts) {
            try {
                space.check_point(p);
            } catch (const DomainError& e) {
                report.add("foreign_point", std::string(name) + ": " + e.what());
            }
        }
    };
    check(sets.a(), "A");
    check(sets.b(), "B");
    if (space.kind() == SpaceKind::tabulated) {
        std::vector<bool> covered(space.size(), false);
        for (const auto& p : sets.points()) {
            if (p.is_index() && p.index() < space.size()) covered[p.index()] = true;
        }
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (!covered[i]) {
                report.add("coverage", "point " + std::to_string(i) + " is in neither A nor B", {i});
            }
        }
    }
    return report;
}

Distance pair_distance(const MetricSpace& space, const SubsetPair& sets)
{
    if (!sets.has_samples()) throw DomainError("d(A,B) needs nonempty sampled sets");
    const PointTable a(space, sets.a());
    const PointTable b(space, sets.b());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) best = std::min(best, a.distance_to(b, i, j));
    }
    return best;
}

Distance set_diameter(const MetricSpace& space, std::span<const PointRef> points)
{
    if (points.empty()) throw DomainError("diameter of an empty set");
    const PointTable table(space, points);
    double best = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = i + 1; j < table.size(); ++j) best = std::max(best, table.distance(i, j));
    }
    if (space.kind() == SpaceKind::tabulated) {
        // Tabulated matrices need not be symmetric before validation.
        for (std::size_t i = 0; i < table.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) best = std::max(best, table.distance(i, j));
        }
    }
    return best;
}

} // namespace gprox
