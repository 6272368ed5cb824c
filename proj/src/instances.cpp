#include "gprox/instances.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <random>
#include <set>

#include "gprox/format.hpp"

namespace gprox {

MapPair Instance::pair() const
{
    if (!second) throw DomainError("instance '" + name + "' has a single map");
    return MapPair{map, *second};
}

DirectedGraph named_graph(const std::string& rule, const SubsetPair& sets)
{
    if (rule == "complete") return DirectedGraph::complete();
    if (rule == "diagonal") return DirectedGraph::diagonal();
    if (rule == "same_set") {
        return DirectedGraph::custom("same_set", [sets](const PointRef& x, const PointRef& y) {
            return (sets.in_a(x) && sets.in_a(y)) || (sets.in_b(x) && sets.in_b(y));
        });
    }
    throw DomainError("unknown graph rule '" + rule + "'");
}

namespace {

constexpr double kMembershipTol = kDefaultTolerance;

// Number of grid cells when `step` divides `length`, else nothing.
std::optional<long long> cells(double length, double step)
{
    if (!(step > 0.0) || !std::isfinite(step)) return std::nullopt;
    const double q = length / step;
    const double r = std::round(q);
    if (r < 1.0 || std::abs(q - r) > 1e-9 * std::max(1.0, r)) return std::nullopt;
    return static_cast<long long>(r);
}

Region interval_region(std::string name, double lo, double hi)
{
    return Region{std::move(name), [lo, hi](const Coords& c, double tol) {
                      return c.size() == 1 && c[0] >= lo - tol && c[0] <= hi + tol;
                  }};
}

} // namespace

Instance interval_example(double grid_step, const std::string& graph_rule)
{
    const auto count = cells(2.0, grid_step);
    if (!count) throw DomainError("interval grid step must divide 2, got " + format_number(grid_step));

    std::vector<PointRef> a, b;
    for (long long i = 0; i <= *count; ++i) {
        const double offset = 2.0 * static_cast<double>(i) / static_cast<double>(*count);
        a.push_back(PointRef::coords({-3.0 + offset}));
    }
    for (long long i = 0; i <= *count; ++i) {
        const double offset = 2.0 * static_cast<double>(i) / static_cast<double>(*count);
        b.push_back(PointRef::coords({1.0 + offset}));
    }
    SubsetPair sets = SubsetPair(std::move(a), std::move(b))
                          .with_regions(interval_region("[-3,-1]", -3.0, -1.0),
                                        interval_region("[1,3]", 1.0, 3.0), kMembershipTol);

    auto rule = [](const Coords& c) -> Coords {
        if (c.size() != 1) throw DomainError("interval map takes 1-d points");
        const double x = c[0];
        if (x >= -3.0 - kMembershipTol && x <= -1.0 + kMembershipTol) return {(1.0 - x) / 2.0};
        if (x >= 1.0 - kMembershipTol && x <= 3.0 + kMembershipTol) return {(-1.0 - x) / 2.0};
        throw DomainError("interval map undefined at " + format_number(x));
    };
    DirectedGraph g = named_graph(graph_rule, sets);
    return Instance{
        .name = "interval",
        .kind = InstanceKind::single_map,
        .space = MetricSpace::euclidean(1),
        .sets = std::move(sets),
        .graph = std::move(g),
        .map = CyclicMap::rule("interval", {}, rule),
        .second = std::nullopt,
        .resolution = grid_step,
        .params = {{"grid_step", format_exact(grid_step)}, {"graph", graph_rule}},
    };
}

Instance ellipse_example(double grid_step, const std::string& graph_rule)
{
    if (!(grid_step > 0.0) || !std::isfinite(grid_step)) {
        throw DomainError("ellipse grid step must be positive");
    }
    auto in_a = [](double x, double y, double tol) { return (x - y) * (x - y) + y * y <= 1.0 + tol; };
    auto in_b = [](double x, double y, double tol) { return (x + y) * (x + y) + y * y <= 1.0 + tol; };

    // Both sets fit in [-2,2]×[-1,1]. Coordinates are k·step, so x ↦ -x maps
    // the grid onto itself exactly.
    const auto kx = static_cast<long long>(std::ceil(2.0 / grid_step));
    const auto ky = static_cast<long long>(std::ceil(1.0 / grid_step));
    std::vector<PointRef> a, b;
    for (long long i = -kx; i <= kx; ++i) {
        for (long long j = -ky; j <= ky; ++j) {
            const double x = static_cast<double>(i) * grid_step;
            const double y = static_cast<double>(j) * grid_step;
            if (in_a(x, y, 0.0)) a.push_back(PointRef::coords({x, y}));
            if (in_b(x, y, 0.0)) b.push_back(PointRef::coords({x, y}));
        }
    }
    Region ra{"(x-y)^2+y^2<=1", [in_a](const Coords& c, double tol) {
                  return c.size() == 2 && in_a(c[0], c[1], tol);
              }};
    Region rb{"(x+y)^2+y^2<=1", [in_b](const Coords& c, double tol) {
                  return c.size() == 2 && in_b(c[0], c[1], tol);
              }};
    SubsetPair sets = SubsetPair(std::move(a), std::move(b)).with_regions(ra, rb, kMembershipTol);
    auto rule = [](const Coords& c) -> Coords {
        if (c.size() != 2) throw DomainError("reflection takes 2-d points");
        return {-c[0], c[1]};
    };
    DirectedGraph g = named_graph(graph_rule, sets);
    return Instance{
        .name = "ellipse",
        .kind = InstanceKind::single_map,
        .space = MetricSpace::euclidean(2),
        .sets = std::move(sets),
        .graph = std::move(g),
        .map = CyclicMap::rule("reflect_x", {}, rule),
        .second = std::nullopt,
        .resolution = grid_step,
        .params = {{"grid_step", format_exact(grid_step)}, {"graph", graph_rule}},
    };
}

Instance segments_family(double grid_step, double center, double factor, const std::string& graph_rule)
{
    const auto count = cells(1.0, grid_step);
    if (!count) throw DomainError("segments grid step must divide 1, got " + format_number(grid_step));
    if (!(center >= 0.0 && center <= 1.0)) throw DomainError("segments centre must lie in [0,1]");
    if (!(factor >= 0.0 && factor <= 1.0)) throw DomainError("segments factor must lie in [0,1]");

    std::vector<PointRef> a, b;
    for (long long i = 0; i <= *count; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(*count);
        a.push_back(PointRef::coords({x, 0.0}));
        b.push_back(PointRef::coords({x, 1.0}));
    }
    auto segment = [](double level) {
        return [level](const Coords& c, double tol) {
            return c.size() == 2 && std::abs(c[1] - level) <= tol && c[0] >= -tol && c[0] <= 1.0 + tol;
        };
    };
    Region ra{"[0,1]x{0}", segment(0.0)};
    Region rb{"[0,1]x{1}", segment(1.0)};
    auto on_either = [ra, rb](const Coords& c) {
        return ra.contains(c, kMembershipTol) || rb.contains(c, kMembershipTol);
    };
    auto make = [=](double level, std::string name) {
        return CyclicMap::rule(std::move(name), {center, factor}, [=](const Coords& c) -> Coords {
            if (!on_either(c)) throw DomainError("segment map undefined off the two segments");
            return {center + factor * (c[0] - center), level};
        });
    };
    SubsetPair sets = SubsetPair(std::move(a), std::move(b)).with_regions(ra, rb, kMembershipTol);
    DirectedGraph g = named_graph(graph_rule, sets);
    return Instance{
        .name = "segments",
        .kind = InstanceKind::two_map,
        .space = MetricSpace::euclidean(2),
        .sets = std::move(sets),
        .graph = std::move(g),
        .map = make(1.0, "T"),
        .second = make(0.0, "S"),
        .resolution = grid_step,
        .params = {{"grid_step", format_exact(grid_step)},
                   {"center", format_exact(center)},
                   {"factor", format_exact(factor)},
                   {"graph", graph_rule}},
    };
}

Instance segments_example(double grid_step, const std::string& graph_rule)
{
    if (!cells(0.5, grid_step)) {
        throw DomainError("segments grid must contain x = 1/2; step " + format_number(grid_step) +
                          " does not divide 1/2");
    }
    return segments_family(grid_step, 0.5, 0.0, graph_rule);
}

Instance build_named_example(const std::string& name, double grid_step, const std::string& graph_rule,
                             double center, double factor)
{
    if (name == "interval") return interval_example(grid_step, graph_rule);
    if (name == "ellipse") return ellipse_example(grid_step, graph_rule);
    if (name == "segments") {
        if (center == 0.5 && factor == 0.0) return segments_example(grid_step, graph_rule);
        return segments_family(grid_step, center, factor, graph_rule);
    }
    throw DomainError("unknown example '" + name + "'");
}

std::string to_string(MapRule rule)
{
    switch (rule) {
    case MapRule::nearest: return "nearest";
    case MapRule::affine: return "affine";
    case MapRule::chain: return "chain";
    }
    return "unknown";
}

std::string to_string(RandomGraphRule rule)
{
    switch (rule) {
    case RandomGraphRule::complete: return "complete";
    case RandomGraphRule::diagonal: return "diagonal";
    case RandomGraphRule::random: return "random";
    case RandomGraphRule::random_closed: return "random_closed";
    }
    return "unknown";
}

std::optional<MapRule> parse_map_rule(const std::string& text)
{
    for (MapRule r : {MapRule::nearest, MapRule::affine, MapRule::chain})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

std::optional<RandomGraphRule> parse_graph_rule(const std::string& text)
{
    for (RandomGraphRule r : {RandomGraphRule::complete, RandomGraphRule::diagonal,
                              RandomGraphRule::random, RandomGraphRule::random_closed})
        if (to_string(r) == text) return r;
    return std::nullopt;
}

namespace {

// Uniform doubles in [0,1) from the top 53 bits of mt19937_64; the engine's
// output sequence is fixed by the standard, so instances are reproducible.
class Uniform {
public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * next(); }

private:
    std::mt19937_64 engine_;
};

struct Cloud {
    std::vector<std::array<double, 2>> xy;
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    std::vector<std::size_t> shared;
    std::vector<bool> in_a;
    std::vector<std::size_t> chain_next;  // chain geometry only

    bool in_b(std::size_t i) const { return !in_a[i] || std::find(shared.begin(), shared.end(), i) != shared.end(); }

    // A point in both sets must land in both sets to keep T(A) ⊆ B and T(B) ⊆ A.
    const std::vector<std::size_t>& targets(std::size_t i) const
    {
        if (in_a[i] && in_b(i)) return shared;
        return in_a[i] ? b : a;
    }
};

Cloud scatter(const RandomSpec& spec, Uniform& rng)
{
    Cloud cloud;
    auto draw = [&](const Box& box) {
        const double x = rng.in(box.x_min, box.x_max);
        const double y = rng.in(box.y_min, box.y_max);
        cloud.xy.push_back({x, y});
    };
    // Layout: [A only][shared][B only].
    for (std::size_t i = 0; i < spec.n_a; ++i) draw(spec.box_a);
    for (std::size_t i = 0; i < spec.n_shared; ++i) draw(spec.box_a);
    for (std::size_t i = 0; i < spec.n_b; ++i) draw(spec.box_b);
    const std::size_t n = cloud.xy.size();
    cloud.in_a.assign(n, false);
    for (std::size_t i = 0; i < spec.n_a + spec.n_shared; ++i) {
        cloud.a.push_back(i);
        cloud.in_a[i] = true;
    }
    for (std::size_t i = spec.n_a; i < n; ++i) cloud.b.push_back(i);
    for (std::size_t i = spec.n_a; i < spec.n_a + spec.n_shared; ++i) cloud.shared.push_back(i);
    return cloud;
}

Cloud chain(const RandomSpec& spec, Uniform& rng)
{
    Cloud cloud;
    const double cx = 0.5 * (spec.box_a.x_min + spec.box_a.x_max);
    const double cy = 0.5 * (spec.box_a.y_min + spec.box_a.y_max);
    const double radius =
        0.5 * std::min(spec.box_a.x_max - spec.box_a.x_min, spec.box_a.y_max - spec.box_a.y_min);
    cloud.xy.push_back({cx, cy});
    cloud.chain_next.push_back(0);
    std::vector<int> side{2};  // 0 = A, 1 = B, 2 = both
    const std::size_t seeds = spec.n_a + spec.n_b;
    for (std::size_t s = 0; s < seeds; ++s) {
        const double angle = 2.0 * std::numbers::pi * rng.next();
        const double r = radius * rng.in(0.8, 1.0);
        const int first = s < spec.n_a ? 0 : 1;
        double scale = 1.0;
        for (std::size_t level = 0; level <= spec.depth; ++level) {
            const std::size_t idx = cloud.xy.size();
            cloud.xy.push_back({cx + scale * r * std::cos(angle), cy + scale * r * std::sin(angle)});
            side.push_back((first + static_cast<int>(level)) % 2);
            cloud.chain_next.push_back(level < spec.depth ? idx + 1 : 0);
            scale *= spec.factor;
        }
    }
    cloud.in_a.assign(cloud.xy.size(), false);
    for (std::size_t i = 0; i < cloud.xy.size(); ++i) {
        if (side[i] != 1) {
            cloud.a.push_back(i);
            cloud.in_a[i] = true;
        }
        if (side[i] != 0) cloud.b.push_back(i);
        if (side[i] == 2) cloud.shared.push_back(i);
    }
    return cloud;
}

double dist2(const std::array<double, 2>& p, const std::array<double, 2>& q)
{
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    return dx * dx + dy * dy;
}

std::size_t nearest_to(const Cloud& cloud, const std::array<double, 2>& q,
                       const std::vector<std::size_t>& targets)
{
    std::size_t best = targets.front();
    double best_d = dist2(cloud.xy[best], q);
    for (std::size_t t : targets) {
        const double d = dist2(cloud.xy[t], q);
        if (d < best_d) {
            best = t;
            best_d = d;
        }
    }
    return best;
}

std::array<double, 2> centroid(const Cloud& cloud, const std::vector<std::size_t>& idx)
{
    std::array<double, 2> c{0.0, 0.0};
    for (std::size_t i : idx) {
        c[0] += cloud.xy[i][0];
        c[1] += cloud.xy[i][1];
    }
    c[0] /= static_cast<double>(idx.size());
    c[1] /= static_cast<double>(idx.size());
    return c;
}

std::vector<std::size_t> build_map(const Cloud& cloud, MapRule rule, double factor)
{
    const std::size_t n = cloud.xy.size();
    std::vector<std::size_t> image(n);
    switch (rule) {
    case MapRule::chain:
        if (cloud.chain_next.empty()) throw DomainError("chain map needs chain geometry");
        return cloud.chain_next;
    case MapRule::nearest:
        for (std::size_t i = 0; i < n; ++i) {
            image[i] = nearest_to(cloud, cloud.xy[i], cloud.targets(i));
        }
        return image;
    case MapRule::affine: {
        const auto ca = centroid(cloud, cloud.a);
        const auto cb = centroid(cloud, cloud.b);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& from = cloud.in_a[i] ? ca : cb;
            const auto& to = cloud.in_a[i] ? cb : ca;
            const std::array<double, 2> q{to[0] + factor * (cloud.xy[i][0] - from[0]),
                                          to[1] + factor * (cloud.xy[i][1] - from[1])};
            image[i] = nearest_to(cloud, q, cloud.targets(i));
        }
        return image;
    }
    }
    return image;
}

std::vector<Edge> build_edges(const RandomSpec& spec, std::size_t n, Uniform& rng,
                              const std::vector<std::vector<std::size_t>>& maps)
{
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.emplace(i, i);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (rng.next() < spec.edge_probability) edges.emplace(i, j);
        }
    }
    if (spec.graph_rule == RandomGraphRule::random_closed) {
        std::deque<std::pair<std::size_t, std::size_t>> work(edges.begin(), edges.end());
        while (!work.empty()) {
            const auto [i, j] = work.front();
            work.pop_front();
            for (const auto& m : maps) {
                if (edges.emplace(m[i], m[j]).second) work.emplace_back(m[i], m[j]);
            }
        }
    }
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& [i, j] : edges) out.emplace_back(PointRef::at(i), PointRef::at(j));
    return out;
}

std::vector<PointRef> as_points(const std::vector<std::size_t>& idx)
{
    std::vector<PointRef> out;
    out.reserve(idx.size());
    for (std::size_t i : idx) out.push_back(PointRef::at(i));
    return out;
}

} // namespace

Instance random_instance(const RandomSpec& spec)
{
    if (spec.n_a + spec.n_shared < 1 || spec.n_b + spec.n_shared < 1) {
        if (spec.map_rule != MapRule::chain) throw DomainError("random instance needs nonempty A and B");
    }
    if (spec.map_rule == MapRule::chain && spec.n_a + spec.n_b < 1) {
        throw DomainError("chain instance needs at least one seed");
    }
    if (!(spec.factor >= 0.0) || !std::isfinite(spec.factor)) throw DomainError("factor must be >= 0");
    if (!(spec.edge_probability >= 0.0 && spec.edge_probability <= 1.0)) {
        throw DomainError("edge probability must lie in [0,1]");
    }

    Uniform rng(spec.seed);
    const Cloud cloud = spec.map_rule == MapRule::chain ? chain(spec, rng) : scatter(spec, rng);
    const std::size_t n = cloud.xy.size();

    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            rows[i][j] = rows[j][i] = std::sqrt(dist2(cloud.xy[i], cloud.xy[j]));
        }
    }

    std::vector<std::vector<std::size_t>> maps{build_map(cloud, spec.map_rule, spec.factor)};
    if (spec.second_rule) maps.push_back(build_map(cloud, *spec.second_rule, spec.factor));

    SubsetPair sets(as_points(cloud.a), as_points(cloud.b));
    DirectedGraph graph = DirectedGraph::complete();
    switch (spec.graph_rule) {
    case RandomGraphRule::complete: break;
    case RandomGraphRule::diagonal: graph = DirectedGraph::diagonal(); break;
    case RandomGraphRule::random:
    case RandomGraphRule::random_closed: graph = DirectedGraph::from_edges(build_edges(spec, n, rng, maps)); break;
    }

    std::vector<std::pair<std::string, std::string>> params{
        {"seed", std::to_string(spec.seed)},
        {"n_a", std::to_string(spec.n_a)},
        {"n_b", std::to_string(spec.n_b)},
        {"n_shared", std::to_string(spec.n_shared)},
        {"map", to_string(spec.map_rule)},
        {"factor", format_exact(spec.factor)},
        {"depth", std::to_string(spec.depth)},
        {"graph", to_string(spec.graph_rule)},
        {"edge_probability", format_exact(spec.edge_probability)},
    };
    if (spec.second_rule) params.emplace_back("second_map", to_string(*spec.second_rule));

    std::optional<CyclicMap> second;
    if (spec.second_rule) second = CyclicMap::table(maps[1], "S");
    return Instance{
        .name = "random",
        .kind = spec.second_rule ? InstanceKind::two_map : InstanceKind::single_map,
        .space = MetricSpace::tabulated(rows),
        .sets = std::move(sets),
        .graph = std::move(graph),
        .map = CyclicMap::table(std::move(maps[0]), "T"),
        .second = std::move(second),
        .resolution = 0.0,
        .params = std::move(params),
    };
}

} // namespace gprox
