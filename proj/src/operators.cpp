#include "gprox/operators.hpp"

#include <cmath>
#include <limits>

#include "gprox/format.hpp"

namespace gprox {

CyclicMap CyclicMap::table(std::vector<std::size_t> images, std::string name)
{
    CyclicMap f;
    f.name_ = std::move(name);
    f.table_ = std::move(images);
    return f;
}

CyclicMap CyclicMap::rule(std::string name, std::vector<double> params, Rule rule)
{
    if (!rule) throw DomainError("map rule '" + name + "' has no function");
    CyclicMap f;
    f.name_ = std::move(name);
    f.params_ = std::move(params);
    f.rule_ = std::move(rule);
    return f;
}

PointRef CyclicMap::operator()(const PointRef& x) const
{
    if (rule_) return PointRef::coords(rule_(x.coords()));
    const std::size_t i = x.index();
    if (i >= table_.size()) {
        throw DomainError("map '" + name_ + "' is undefined at " + x.to_string());
    }
    return PointRef::at(table_[i]);
}

CrrParams::CrrParams(double alpha, double beta, double gamma) : alpha_(alpha), beta_(beta), gamma_(gamma)
{
    if (!(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0)) {
        throw DomainError("CRR constants must be nonnegative");
    }
    if (!(alpha + 2.0 * beta + gamma < 1.0)) {
        throw DomainError("CRR constants need alpha + 2 beta + gamma < 1, got " +
                          format_number(alpha + 2.0 * beta + gamma));
    }
}

namespace {

std::vector<PointRef> apply_all(const SubsetPair& sets, const CyclicMap& f)
{
    std::vector<PointRef> out;
    out.reserve(sets.points().size());
    for (const auto& p : sets.points()) out.push_back(f(p));
    return out;
}

std::vector<double> displacements(const PointTable& pts, const PointTable& imgs)
{
    std::vector<double> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = pts.distance_to(imgs, i, i);
    return out;
}

// Scan all edges (optionally filtered), tracking the maximal excess.
template <class Filter, class Excess>
void scan_excess(const DirectedGraph& g, const SubsetPair& sets, double tol, Filter&& filter,
                 Excess&& excess, EdgeCheck& out)
{
    const auto& pts = sets.points();
    bool have_worst = false;
    g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
        if (!filter(i, j)) return;
        ++out.edges_checked;
        const double e = excess(i, j);
        if (!have_worst || e > out.worst_excess) {
            have_worst = true;
            out.worst_excess = e;
            out.worst_edge = Edge{pts[i], pts[j]};
        }
        if (e > tol) out.holds = false;
    });
}

constexpr auto kAllEdges = [](std::size_t, std::size_t) { return true; };

struct Triple {
    double alpha;
    double beta;
    double gamma;
};

// Walks the (α, β, γ) grid in lexicographic order. `first_violation` returns
// an edge that fails the triple, or nothing if the triple is certified.
// Edges that failed earlier triples are re-tried first; most infeasible
// triples are rejected by one of them.
template <class Violation>
std::optional<CrrParams> grid_search(double step, Violation&& first_violation)
{
    if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("CRR grid step must be positive");
    const double inv = 1.0 / step;
    const bool integral = std::abs(inv - std::round(inv)) < 1e-9;
    const long long cells = static_cast<long long>(std::round(inv));
    auto inside = [&](long long i, long long j, long long l) {
        if (integral) return i + 2 * j + l < cells;
        return static_cast<double>(i) * step + 2.0 * static_cast<double>(j) * step +
                   static_cast<double>(l) * step < 1.0 - 1e-12;
    };

    std::vector<std::pair<std::size_t, std::size_t>> hard;
    for (long long i = 0; inside(i, 0, 0); ++i) {
        for (long long j = 0; inside(i, j, 0); ++j) {
            for (long long l = 0; inside(i, j, l); ++l) {
                const Triple t{static_cast<double>(i) * step, static_cast<double>(j) * step,
                               static_cast<double>(l) * step};
                if (auto bad = first_violation(t, hard)) {
                    hard.push_back(*bad);
                    continue;
                }
                return CrrParams(t.alpha, t.beta, t.gamma);
            }
        }
    }
    return std::nullopt;
}

} // namespace

EvaluatedMap::EvaluatedMap(const MetricSpace& space, const SubsetPair& sets, const CyclicMap& f)
    : images(apply_all(sets, f)),
      points(space, sets.points()),
      image_points(space, images),
      displacement(displacements(points, image_points))
{
}

ValidationReport validate_cyclic(const CyclicMap& f, const SubsetPair& sets)
{
    ValidationReport report;
    auto check = [&](const std::vector<PointRef>& from, bool to_b) {
        const char* target = to_b ? "B" : "A";
        for (std::size_t k = 0; k < from.size(); ++k) {
            const auto& x = from[k];
            try {
                const PointRef fx = f(x);
                if (!(to_b ? sets.in_b(fx) : sets.in_a(fx))) {
                    report.add("cyclicity", f.name() + "(" + x.to_string() + ") = " + fx.to_string() +
                                                " is not in " + target,
                               {sets.position(x)});
                }
            } catch (const DomainError& e) {
                report.add("undefined", f.name() + " undefined at " + x.to_string() + ": " + e.what(),
                           {sets.position(x)});
            }
        }
    };
    check(sets.a(), true);
    check(sets.b(), false);
    return report;
}

ValidationReport validate_pair(const MapPair& pair, const SubsetPair& sets)
{
    ValidationReport report;
    auto check = [&](const CyclicMap& f, const std::vector<PointRef>& from, bool to_b) {
        for (const auto& x : from) {
            try {
                const PointRef fx = f(x);
                if (!(to_b ? sets.in_b(fx) : sets.in_a(fx))) {
                    report.add("cyclicity", f.name() + "(" + x.to_string() + ") = " + fx.to_string() +
                                                " is not in " + (to_b ? "B" : "A"),
                               {sets.position(x)});
                }
            } catch (const DomainError& e) {
                report.add("undefined", f.name() + " undefined at " + x.to_string() + ": " + e.what(),
                           {sets.position(x)});
            }
        }
    };
    check(pair.t, sets.a(), true);
    check(pair.s, sets.b(), false);
    // Totality on the rest of A ∪ B.
    for (const auto& x : sets.points()) {
        for (const CyclicMap* f : {&pair.t, &pair.s}) {
            const bool covered = (f == &pair.t) ? sets.in_a(x) : sets.in_b(x);
            if (covered) continue;
            try {
                (*f)(x);
            } catch (const DomainError& e) {
                report.add("undefined", f->name() + " undefined at " + x.to_string() + ": " + e.what(),
                           {sets.position(x)});
            }
        }
    }
    return report;
}

ContractionFactor min_contraction_factor(const MetricSpace& space, const SubsetPair& sets,
                                         const DirectedGraph& g, const CyclicMap& f)
{
    const EvaluatedMap ev(space, sets, f);
    const auto kept = preserves_edges(g, sets, ev.images);
    if (!kept.holds) {
        throw ClassificationError("map '" + f.name() + "' does not preserve edge " +
                                  to_string(*kept.counterexample));
    }
    ContractionFactor out;
    const auto& pts = sets.points();
    g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
        const double d = ev.points.distance(i, j);
        const double dt = ev.image_points.distance(i, j);
        double ratio = 0.0;
        if (d > 0.0) {
            ratio = dt / d;
        } else if (dt > 0.0) {
            ratio = std::numeric_limits<double>::infinity();
        } else {
            return;
        }
        if (!out.worst_edge || ratio > out.alpha_min) {
            out.alpha_min = ratio;
            out.worst_edge = Edge{pts[i], pts[j]};
        }
    });
    out.contractive = out.alpha_min < 1.0;
    return out;
}

EdgeCheck is_g_contraction(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                           const CyclicMap& f, double alpha, Tolerance tol)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("contraction factor must lie in (0,1)");
    const EvaluatedMap ev(space, sets, f);
    EdgeCheck out;
    const auto kept = preserves_edges(g, sets, ev.images);
    if (!kept.holds) {
        out.holds = out.preserves = false;
        out.preservation_failure = kept.counterexample;
    }
    EdgeCheck scan;
    scan_excess(g, sets, tol.value(), kAllEdges,
                [&](std::size_t i, std::size_t j) {
                    return ev.image_points.distance(i, j) - alpha * ev.points.distance(i, j);
                },
                scan);
    out.holds = out.holds && scan.holds;
    out.worst_edge = scan.worst_edge;
    out.worst_excess = scan.worst_excess;
    out.edges_checked = scan.edges_checked;
    return out;
}

EdgeCheck is_crr_moh(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                     const CyclicMap& f, const CrrParams& params, Tolerance tol)
{
    const EvaluatedMap ev(space, sets, f);
    const double dab = pair_distance(space, sets);
    EdgeCheck out;
    const auto kept = preserves_edges(g, sets, ev.images);
    if (!kept.holds) {
        out.holds = out.preserves = false;
        out.preservation_failure = kept.counterexample;
    }
    EdgeCheck scan;
    scan_excess(g, sets, tol.value(), kAllEdges,
                [&](std::size_t i, std::size_t j) {
                    const double rhs = params.alpha() * ev.points.distance(i, j) +
                                       params.beta() * (ev.displacement[i] + ev.displacement[j]) +
                                       params.gamma() * dab;
                    return ev.image_points.distance(i, j) - rhs;
                },
                scan);
    out.holds = out.holds && scan.holds;
    out.worst_edge = scan.worst_edge;
    out.worst_excess = scan.worst_excess;
    out.edges_checked = scan.edges_checked;
    return out;
}

std::optional<CrrParams> crr_params_feasible(const MetricSpace& space, const SubsetPair& sets,
                                             const DirectedGraph& g, const CyclicMap& f,
                                             double grid_step, Tolerance tol)
{
    const EvaluatedMap ev(space, sets, f);
    if (!preserves_edges(g, sets, ev.images).holds) return std::nullopt;
    const double dab = pair_distance(space, sets);
    const double t = tol.value();
    auto excess = [&](const Triple& p, std::size_t i, std::size_t j) {
        const double rhs = p.alpha * ev.points.distance(i, j) +
                           p.beta * (ev.displacement[i] + ev.displacement[j]) + p.gamma * dab;
        return ev.image_points.distance(i, j) - rhs;
    };
    return grid_search(grid_step, [&](const Triple& p, const auto& hard)
                                      -> std::optional<std::pair<std::size_t, std::size_t>> {
        for (const auto& [i, j] : hard) {
            if (excess(p, i, j) > t) return std::pair{i, j};
        }
        std::optional<std::pair<std::size_t, std::size_t>> bad;
        g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
            if (excess(p, i, j) <= t) return true;
            bad = std::pair{i, j};
            return false;
        });
        return bad;
    });
}

namespace {

struct PairEvaluation {
    PairEvaluation(const MetricSpace& space, const SubsetPair& sets, const MapPair& pair)
        : t(space, sets, pair.t), s(space, sets, pair.s), dab(pair_distance(space, sets))
    {
        const auto& pts = sets.points();
        in_a.resize(pts.size());
        in_b.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            in_a[i] = sets.in_a(pts[i]);
            in_b[i] = sets.in_b(pts[i]);
        }
    }

    bool cross(std::size_t i, std::size_t j) const { return in_a[i] && in_b[j]; }

    // d(Tx,Sy) − α d(x,y) − β[d(x,Tx) + d(y,Sy)] − γ d(A,B)
    double excess(double alpha, double beta, double gamma, std::size_t i, std::size_t j) const
    {
        const double rhs = alpha * t.points.distance(i, j) +
                           beta * (t.displacement[i] + s.displacement[j]) + gamma * dab;
        return t.image_points.distance_to(s.image_points, i, j) - rhs;
    }

    EvaluatedMap t;
    EvaluatedMap s;
    double dab;
    std::vector<bool> in_a;
    std::vector<bool> in_b;
};

// Condition (i) of the two-map classes, restricted to edges in A×B.
std::optional<Edge> two_map_edge_failure(const DirectedGraph& g, const SubsetPair& sets,
                                         const PairEvaluation& ev)
{
    std::optional<Edge> failure;
    const auto& pts = sets.points();
    g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
        if (!ev.cross(i, j)) return true;
        if (g.contains(ev.t.images[i], ev.t.images[j]) && g.contains(ev.s.images[i], ev.s.images[j])) {
            return true;
        }
        failure = Edge{pts[i], pts[j]};
        return false;
    });
    return failure;
}

} // namespace

EdgeCheck is_crr_2map(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                      const MapPair& pair, const CrrParams& params, Tolerance tol)
{
    const PairEvaluation ev(space, sets, pair);
    EdgeCheck out;
    if (auto failure = two_map_edge_failure(g, sets, ev)) {
        out.holds = out.preserves = false;
        out.preservation_failure = failure;
    }
    EdgeCheck scan;
    scan_excess(g, sets, tol.value(), [&](std::size_t i, std::size_t j) { return ev.cross(i, j); },
                [&](std::size_t i, std::size_t j) {
                    return ev.excess(params.alpha(), params.beta(), params.gamma(), i, j);
                },
                scan);
    out.holds = out.holds && scan.holds;
    out.worst_edge = scan.worst_edge;
    out.worst_excess = scan.worst_excess;
    out.edges_checked = scan.edges_checked;
    return out;
}

std::optional<CrrParams> crr_2map_params_feasible(const MetricSpace& space, const SubsetPair& sets,
                                                  const DirectedGraph& g, const MapPair& pair,
                                                  double grid_step, Tolerance tol)
{
    const PairEvaluation ev(space, sets, pair);
    if (two_map_edge_failure(g, sets, ev)) return std::nullopt;
    const double t = tol.value();
    return grid_search(grid_step, [&](const Triple& p, const auto& hard)
                                      -> std::optional<std::pair<std::size_t, std::size_t>> {
        for (const auto& [i, j] : hard) {
            if (ev.excess(p.alpha, p.beta, p.gamma, i, j) > t) return std::pair{i, j};
        }
        std::optional<std::pair<std::size_t, std::size_t>> bad;
        g.for_each_edge(sets, [&](std::size_t i, std::size_t j) {
            if (!ev.cross(i, j) || ev.excess(p.alpha, p.beta, p.gamma, i, j) <= t) return true;
            bad = std::pair{i, j};
            return false;
        });
        return bad;
    });
}

EdgeCheck is_edge_nonexpansive(const MetricSpace& space, const SubsetPair& sets,
                               const DirectedGraph& g, const CyclicMap& f, Tolerance tol)
{
    const EvaluatedMap ev(space, sets, f);
    EdgeCheck out;
    scan_excess(g, sets, tol.value(), kAllEdges,
                [&](std::size_t i, std::size_t j) {
                    return ev.image_points.distance(i, j) - ev.points.distance(i, j);
                },
                out);
    return out;
}

} // namespace gprox
