#include "gprox/solver.hpp"

#include <cmath>

#include "gprox/format.hpp"

namespace gprox {

void SolveConfig::validate() const
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("epsilon must be positive");
    if (max_iter < 1) throw DomainError("max_iter must be at least 1");
}

std::string to_string(SolveStatus s)
{
    switch (s) {
    case SolveStatus::found: return "found";
    case SolveStatus::exhausted: return "exhausted";
    case SolveStatus::ineligible: return "ineligible";
    }
    return "unknown";
}

namespace {

PointRef step(const MetricSpace& space, const CyclicMap& f, const PointRef& x, std::size_t index)
{
    try {
        PointRef fx = f(x);
        space.check_point(fx);
        return fx;
    } catch (const OrbitError&) {
        throw;
    } catch (const DomainError& e) {
        throw OrbitError("orbit left the domain after index " + std::to_string(index) + ": " + e.what(),
                         index);
    }
}

} // namespace

IterationTrace picard_orbit(const MetricSpace& space, const SubsetPair& sets, const CyclicMap& f,
                            const PointRef& x0, std::size_t n)
{
    space.check_point(x0);
    const double dab = pair_distance(space, sets);
    IterationTrace trace;
    trace.points.reserve(n + 1);
    trace.points.push_back(x0);
    for (std::size_t k = 1; k <= n; ++k) {
        PointRef next = step(space, f, trace.points.back(), k - 1);
        trace.residuals.push_back(space.distance(trace.points.back(), next) - dab);
        trace.points.push_back(std::move(next));
    }
    return trace;
}

SolveResult find_proximity_point(const MetricSpace& space, const SubsetPair& sets,
                                 const DirectedGraph& g, const CyclicMap& f, const PointRef& x0,
                                 const SolveConfig& cfg)
{
    cfg.validate();
    SolveResult out;
    out.set_distance = pair_distance(space, sets);
    const double threshold = out.set_distance + cfg.epsilon + cfg.tol.value();

    PointRef x = x0;
    PointRef fx = step(space, f, x, 0);
    if (!contains_edge(g, space, x, fx)) {
        out.status = SolveStatus::ineligible;
        out.note = "(x0, f(x0)) is not an edge";
        return out;
    }
    for (std::size_t n = 0;; ++n) {
        const double d = space.distance(x, fx);
        out.trace.points.push_back(x);
        out.trace.residuals.push_back(d - out.set_distance);
        if (d <= threshold && g.contains(x, fx)) {
            out.status = SolveStatus::found;
            out.witness = x;
            out.iterations = n;
            return out;
        }
        if (n == cfg.max_iter) break;
        x = std::move(fx);
        fx = step(space, f, x, n + 1);
    }
    out.status = SolveStatus::exhausted;
    out.iterations = cfg.max_iter;
    return out;
}

std::size_t crr_iteration_bound(Distance d0, double k, Distance dab, double epsilon, Tolerance tol)
{
    if (!(k >= 0.0 && k < 1.0)) throw DomainError("decay rate k must lie in [0,1)");
    if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
    if (d0 < dab - tol.value()) {
        throw DomainError("d(x,Tx) = " + format_number(d0) + " is below d(A,B) = " + format_number(dab));
    }
    const double gap = d0 - dab;
    if (gap <= epsilon) return 0;
    if (k == 0.0) return 1;
    auto ok = [&](std::size_t n) { return std::pow(k, static_cast<double>(n)) * gap <= epsilon; };
    auto n = static_cast<std::size_t>(std::max(0.0, std::ceil(std::log(epsilon / gap) / std::log(k))));
    while (n > 0 && ok(n - 1)) --n;
    while (!ok(n)) ++n;
    return n;
}

GtMinimizing is_gt_minimizing(const MetricSpace& space, const SubsetPair& sets,
                              const DirectedGraph& g, const CyclicMap& f,
                              const IterationTrace& trace, std::size_t window, double delta)
{
    if (window == 0) throw DomainError("window must be at least 1");
    if (trace.points.size() < window) {
        throw DomainError("trace has " + std::to_string(trace.points.size()) +
                          " points, window needs " + std::to_string(window));
    }
    const double dab = pair_distance(space, sets);
    GtMinimizing out;
    out.residuals.reserve(trace.points.size());
    for (std::size_t n = 0; n < trace.points.size(); ++n) {
        const PointRef& z = trace.points[n];
        const PointRef fz = step(space, f, z, n);
        if (!contains_edge(g, space, z, fz)) {
            out.off_graph_index = n;
            return out;
        }
        out.residuals.push_back(space.distance(z, fz) - dab);
    }
    out.holds = true;
    for (std::size_t n = out.residuals.size() - window; n < out.residuals.size(); ++n) {
        if (!(out.residuals[n] <= delta)) out.holds = false;
    }
    return out;
}

SolveResult epsilon_fixed_point(const MetricSpace& space, const CyclicMap& f, const PointRef& x0,
                                std::size_t power, const SolveConfig& cfg)
{
    cfg.validate();
    if (power < 1) throw DomainError("power must be at least 1");
    space.check_point(x0);
    SolveResult out;
    PointRef z = x0;
    std::size_t applied = 0;
    for (std::size_t m = 0;; ++m) {
        PointRef w = z;
        for (std::size_t p = 0; p < power; ++p) w = step(space, f, w, applied++);
        const double d = space.distance(z, w);
        out.trace.points.push_back(z);
        out.trace.residuals.push_back(d);
        if (d < cfg.epsilon) {
            out.status = SolveStatus::found;
            out.witness = z;
            out.iterations = m;
            return out;
        }
        if (m == cfg.max_iter) break;
        z = std::move(w);
    }
    out.status = SolveStatus::exhausted;
    out.iterations = cfg.max_iter;
    return out;
}

SolveResult two_map_parallel(const MetricSpace& space, const SubsetPair& sets, const DirectedGraph& g,
                             const MapPair& pair, const PointRef& x0, const PointRef& y0,
                             const SolveConfig& cfg)
{
    cfg.validate();
    SolveResult out;
    out.set_distance = pair_distance(space, sets);
    space.check_point(x0);
    space.check_point(y0);
    if (!sets.in_a(x0) || !sets.in_b(y0)) {
        out.status = SolveStatus::ineligible;
        out.note = "start pair is not in A x B";
        return out;
    }
    if (!contains_edge(g, space, x0, y0)) {
        out.status = SolveStatus::ineligible;
        out.note = "(x0, y0) is not an edge";
        return out;
    }
    const double threshold = out.set_distance + cfg.epsilon + cfg.tol.value();
    PointRef x = x0;
    PointRef y = y0;
    for (std::size_t n = 0;; ++n) {
        PointRef tx = step(space, pair.t, x, n);
        PointRef sy = step(space, pair.s, y, n);
        const double d = space.distance(tx, sy);
        out.trace.points.push_back(x);
        out.trace.partners.push_back(y);
        out.trace.residuals.push_back(d - out.set_distance);
        if (d <= threshold && sets.in_a(x) && sets.in_b(y) && g.contains(x, y)) {
            out.status = SolveStatus::found;
            out.witness = x;
            out.witness_partner = y;
            out.iterations = n;
            return out;
        }
        if (n == cfg.max_iter) break;
        x = std::move(tx);
        y = std::move(sy);
    }
    out.status = SolveStatus::exhausted;
    out.iterations = cfg.max_iter;
    return out;
}

AlternatingResult two_map_alternating(const MetricSpace& space, const SubsetPair& sets,
                                      const DirectedGraph& g, const MapPair& pair,
                                      const PointRef& x1, const PointRef& y1, double alpha,
                                      double gamma, const SolveConfig& cfg)
{
    cfg.validate();
    const double t = cfg.tol.value();
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0,1)");
    if (!(gamma >= 0.0)) throw DomainError("gamma must be nonnegative");
    if (std::abs(alpha + gamma - 1.0) > t) throw DomainError("alternating scheme needs alpha + gamma = 1");

    AlternatingResult out;
    SolveResult& res = out.result;
    res.set_distance = pair_distance(space, sets);
    const double dab = res.set_distance;
    space.check_point(x1);
    space.check_point(y1);
    if (!sets.in_a(x1) || !sets.in_b(y1)) {
        res.status = SolveStatus::ineligible;
        res.note = "start pair is not in A x B";
        return out;
    }
    if (!contains_edge(g, space, x1, y1)) {
        res.status = SolveStatus::ineligible;
        res.note = "(x1, y1) is not an edge";
        return out;
    }

    const double d_start = space.distance(x1, y1);
    PointRef x = x1;
    PointRef y = y1;
    for (std::size_t n = 0;; ++n) {
        const double dn = space.distance(x, y);
        const double am = std::pow(alpha, static_cast<double>(n));
        out.bounds.push_back(am * d_start + (1.0 - am) * dab);
        if (dn > out.bounds.back() + t) ++out.bound_violations;
        res.trace.points.push_back(x);
        res.trace.partners.push_back(y);
        res.trace.residuals.push_back(dn - dab);
        if (dn <= dab + cfg.epsilon + t) {
            res.status = SolveStatus::found;
            res.witness = x;
            res.witness_partner = y;
            res.iterations = n;
            return out;
        }
        if (n == cfg.max_iter) break;
        PointRef tx = step(space, pair.t, x, n);
        PointRef sy = step(space, pair.s, y, n);
        const double dt = space.distance(tx, sy);
        if (dt > alpha * dn + gamma * dab + t) {
            throw HypothesisError("d(Tx,Sy) = " + format_number(dt) + " exceeds alpha d(x,y) + gamma d(A,B) = " +
                                      format_number(alpha * dn + gamma * dab) + " at step " +
                                      std::to_string(n),
                                  n);
        }
        x = std::move(sy);
        y = std::move(tx);
    }
    res.status = SolveStatus::exhausted;
    res.iterations = cfg.max_iter;
    return out;
}

} // namespace gprox
