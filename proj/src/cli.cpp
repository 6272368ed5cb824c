#include "gprox/cli.hpp"

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gprox/analysis.hpp"
#include "gprox/format.hpp"
#include "gprox/instance_io.hpp"
#include "gprox/instances.hpp"
#include "gprox/solver.hpp"

namespace gprox::cli {

namespace {

// Bad flag values discovered after CLI11 has accepted the syntax.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    double tol = kDefaultTolerance;
    bool timing = false;

    std::string path;
    std::optional<double> alpha;
    std::optional<double> gamma;
    double crr_grid = 0.05;

    std::optional<std::string> start;
    std::optional<std::string> partner;
    double epsilon = 0.1;
    std::size_t max_iter = 100;
    std::string mode = "single";

    std::string set_mode = "strict";
    bool require_nonempty = false;
    std::size_t limit = 100;

    std::string demo;
    std::optional<double> grid_step;

    std::string bound_kind;
    double d0 = 0.0;
    double k = 0.0;
    double dab = 0.0;

    std::uint64_t seed = 1;
    std::size_t n_a = 10;
    std::size_t n_b = 10;
    std::size_t n_shared = 0;
    std::string map_rule = "nearest";
    std::optional<std::string> second_rule;
    double factor = 0.5;
    std::size_t depth = 3;
    std::string graph_rule = "complete";
    double edge_probability = 0.1;
    std::optional<std::string> output;
};

void line(std::ostream& out, std::string_view key, std::string_view value)
{
    out << key << ": " << value << '\n';
}

std::string num(double v) { return format_number(v); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string crr_text(const CrrParams& p)
{
    return num(p.alpha()) + " " + num(p.beta()) + " " + num(p.gamma()) + " (k " + num(p.k()) + ")";
}

std::string edge_text(const std::optional<Edge>& e) { return e ? to_string(*e) : "none"; }

PointRef parse_point(const std::string& text, const Instance& inst, const char* flag)
{
    if (inst.space.kind() == SpaceKind::tabulated) {
        const auto v = parse_unsigned(text);
        if (!v || *v >= inst.space.size()) {
            throw UsageError(std::string(flag) + " '" + text + "' is not a point index below " +
                             std::to_string(inst.space.size()));
        }
        return PointRef::at(static_cast<std::size_t>(*v));
    }
    Coords c;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, ',')) {
        const auto v = parse_double(part);
        if (!v) throw UsageError(std::string(flag) + " '" + text + "' is not a comma-separated point");
        c.push_back(*v);
    }
    if (c.size() != inst.space.dimension()) {
        throw UsageError(std::string(flag) + " '" + text + "' needs " + std::to_string(inst.space.dimension()) +
                         " coordinates");
    }
    PointRef p = PointRef::coords(std::move(c));
    if (!inst.sets.in_a(p) && !inst.sets.in_b(p)) {
        throw UsageError(std::string(flag) + " " + p.to_string() + " is not in A or B");
    }
    return p;
}

void describe(const Instance& inst, const Options& opt, std::ostream& out)
{
    out << "[instance]\n";
    line(out, "name", inst.name);
    if (inst.space.kind() == SpaceKind::tabulated) {
        line(out, "space", "tabulated, " + std::to_string(inst.space.size()) + " points");
    } else {
        line(out, "space", "euclidean, dimension " + std::to_string(inst.space.dimension()));
        line(out, "grid_step", num(inst.resolution));
    }
    line(out, "maps", inst.kind == InstanceKind::two_map ? "two-map" : "single-map");
    for (const auto& [key, value] : inst.params) line(out, "param." + key, value);
    line(out, "size_a", std::to_string(inst.sets.a().size()));
    line(out, "size_b", std::to_string(inst.sets.b().size()));
    line(out, "size_union", std::to_string(inst.sets.points().size()));
    std::string graph = inst.graph.name();
    if (inst.graph.rule() == GraphRule::explicit_list) {
        graph += ", " + std::to_string(inst.graph.edges().size()) + " edges";
    }
    line(out, "graph", graph);
    line(out, "tolerance", num(opt.tol));
    line(out, "set_distance", num(pair_distance(inst.space, inst.sets)));
}

int section_validate(const Instance& inst, std::ostream& out)
{
    out << "[validate]\n";
    auto report = [&out](const char* name, const ValidationReport& r) {
        line(out, name, r.ok() ? "ok" : "fail (" + std::to_string(r.violations.size()) + " violations)");
        for (const auto& v : r.violations) {
            std::string w;
            for (std::size_t i : v.witness) w += " " + std::to_string(i);
            line(out, "  violation", v.kind + ": " + v.message + (w.empty() ? "" : " | witness" + w));
        }
        return r.ok();
    };
    bool ok = report("metric", validate_metric(inst.space));
    ok = report("subsets", validate_subsets(inst.space, inst.sets)) && ok;
    ok = report("graph", validate_graph(inst.graph, inst.space, inst.sets)) && ok;
    if (inst.kind == InstanceKind::two_map) {
        ok = report("maps", validate_pair(inst.pair(), inst.sets)) && ok;
    } else {
        ok = report("map", validate_cyclic(inst.map, inst.sets)) && ok;
    }
    line(out, "result", ok ? "pass" : "fail");
    return ok ? kExitOk : kExitNegative;
}

std::optional<CrrParams> single_crr(const Instance& inst, const Options& opt)
{
    return crr_params_feasible(inst.space, inst.sets, inst.graph, inst.map, opt.crr_grid, Tolerance(opt.tol));
}

int classify_single(const Instance& inst, const Options& opt, std::ostream& out)
{
    const Tolerance tol(opt.tol);
    const EvaluatedMap ev(inst.space, inst.sets, inst.map);
    const auto pres = preserves_edges(inst.graph, inst.sets, ev.images);
    line(out, "preserves_edges", pres.holds ? "yes" : "no, counterexample " + edge_text(pres.counterexample));
    if (!pres.holds) {
        line(out, "classification", "map does not preserve the edges of G");
        return kExitNegative;
    }
    const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
    if (cf.contractive) {
        line(out, "alpha_min", num(cf.alpha_min));
    } else {
        line(out, "alpha_min", "NotContractive (sup ratio " + num(cf.alpha_min) + ")");
    }
    line(out, "alpha_min_edge", edge_text(cf.worst_edge));
    if (opt.alpha) {
        const auto c = is_g_contraction(inst.space, inst.sets, inst.graph, inst.map, *opt.alpha, tol);
        line(out, "g_contraction(" + num(*opt.alpha) + ")",
             c.holds ? "yes" : "no, worst edge " + edge_text(c.worst_edge) + ", excess " + num(c.worst_excess));
    }
    line(out, "crr_grid_step", num(opt.crr_grid));
    const auto crr = single_crr(inst, opt);
    line(out, "crr_params", crr ? crr_text(*crr) : "none");
    const auto ne = is_edge_nonexpansive(inst.space, inst.sets, inst.graph, inst.map, tol);
    line(out, "nonexpansive", ne.holds ? "yes" : "no, worst edge " + edge_text(ne.worst_edge));
    return kExitOk;
}

int classify_pair(const Instance& inst, const Options& opt, std::ostream& out)
{
    const Tolerance tol(opt.tol);
    const MapPair pair = inst.pair();
    if (opt.alpha) {
        const double beta = 0.0;
        const double gamma = opt.gamma.value_or(0.0);
        const auto c = is_crr_2map(inst.space, inst.sets, inst.graph, pair, CrrParams(*opt.alpha, beta, gamma), tol);
        line(out, "crr_2map(" + num(*opt.alpha) + " 0 " + num(gamma) + ")",
             c.holds ? "yes" : "no, worst edge " + edge_text(c.worst_edge));
    }
    line(out, "crr_grid_step", num(opt.crr_grid));
    const auto crr = crr_2map_params_feasible(inst.space, inst.sets, inst.graph, pair, opt.crr_grid, tol);
    line(out, "crr_2map_params", crr ? crr_text(*crr) : "none");
    line(out, "nonexpansive_t", yes_no(is_edge_nonexpansive(inst.space, inst.sets, inst.graph, pair.t, tol).holds));
    line(out, "nonexpansive_s", yes_no(is_edge_nonexpansive(inst.space, inst.sets, inst.graph, pair.s, tol).holds));
    return kExitOk;
}

void section_minimizer(const Instance& inst, const Options& opt, std::ostream& out)
{
    out << "[minimizer]\n";
    try {
        const auto m = minimizer_report(inst.space, inst.sets, inst.graph, inst.map, Tolerance(opt.tol));
        line(out, "minimizer", m.minimizer.to_string());
        line(out, "displacement", num(m.displacement));
        line(out, "residual", num(m.residual));
        line(out, "nonexpansive", yes_no(m.nonexpansive));
        if (m.set_size) line(out, "set_size_at_residual", std::to_string(*m.set_size));
    } catch (const DomainError& e) {
        line(out, "minimizer", std::string("none (") + e.what() + ")");
    }
}

int section_classify(const Instance& inst, const Options& opt, std::ostream& out)
{
    out << "[classify]\n";
    line(out, "tolerance", num(opt.tol));
    if (inst.kind == InstanceKind::two_map) return classify_pair(inst, opt, out);
    const int code = classify_single(inst, opt, out);
    if (code == kExitOk) section_minimizer(inst, opt, out);
    return code;
}

SolveConfig solve_config(const Options& opt)
{
    SolveConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.max_iter = opt.max_iter;
    cfg.tol = Tolerance(opt.tol);
    try {
        cfg.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

void print_trace(const SolveResult& r, std::ostream& out, const std::vector<double>* bounds = nullptr)
{
    const bool pairs = !r.trace.partners.empty();
    out << "trace: n " << (pairs ? "x y residual" : "point residual") << (bounds ? " bound" : "") << '\n';
    for (std::size_t n = 0; n < r.trace.points.size(); ++n) {
        out << "  " << n << ' ' << r.trace.points[n].to_string();
        if (pairs) out << ' ' << r.trace.partners[n].to_string();
        out << ' ' << num(r.trace.residuals[n]);
        if (bounds) out << ' ' << num((*bounds)[n]);
        out << '\n';
    }
}

void print_result(const SolveResult& r, std::ostream& out)
{
    line(out, "status", to_string(r.status));
    if (!r.note.empty()) line(out, "note", r.note);
    if (r.witness) line(out, "witness", r.witness->to_string());
    if (r.witness_partner) line(out, "witness_partner", r.witness_partner->to_string());
    line(out, "iterations", std::to_string(r.iterations));
}

int solve_single(const Instance& inst, const Options& opt, std::ostream& out)
{
    const SolveConfig cfg = solve_config(opt);
    const PointRef x0 = opt.start ? parse_point(*opt.start, inst, "--start") : inst.sets.a().front();
    line(out, "start", x0.to_string());
    const auto r = find_proximity_point(inst.space, inst.sets, inst.graph, inst.map, x0, cfg);
    print_result(r, out);
    if (r.status == SolveStatus::found) line(out, "witness_residual", num(r.trace.residuals.back()));

    // The a-priori count needs CRR constants; without a certificate there is no bound.
    std::optional<CrrParams> crr;
    const EvaluatedMap ev(inst.space, inst.sets, inst.map);
    if (r.status != SolveStatus::ineligible && preserves_edges(inst.graph, inst.sets, ev.images).holds) {
        crr = single_crr(inst, opt);
    }
    line(out, "crr_params", crr ? crr_text(*crr) : "none (grid step " + num(opt.crr_grid) + ")");
    if (crr) {
        const double d0 = inst.space.distance(x0, inst.map(x0));
        const std::size_t bound = crr_iteration_bound(d0, crr->k(), r.set_distance, cfg.epsilon, cfg.tol);
        line(out, "a_priori_bound", std::to_string(bound));
        if (r.status == SolveStatus::found) line(out, "within_bound", yes_no(r.iterations <= bound));
    } else {
        line(out, "a_priori_bound", "none");
    }
    print_trace(r, out);
    return r.status == SolveStatus::found ? kExitOk : kExitNegative;
}

int solve_parallel(const Instance& inst, const Options& opt, std::ostream& out)
{
    const SolveConfig cfg = solve_config(opt);
    const PointRef x0 = opt.start ? parse_point(*opt.start, inst, "--start") : inst.sets.a().front();
    const PointRef y0 = opt.partner ? parse_point(*opt.partner, inst, "--partner") : inst.sets.b().front();
    line(out, "start", x0.to_string());
    line(out, "partner", y0.to_string());
    const auto r = two_map_parallel(inst.space, inst.sets, inst.graph, inst.pair(), x0, y0, cfg);
    print_result(r, out);
    print_trace(r, out);
    return r.status == SolveStatus::found ? kExitOk : kExitNegative;
}

int solve_alternating(const Instance& inst, const Options& opt, std::ostream& out)
{
    const SolveConfig cfg = solve_config(opt);
    if (!opt.alpha) throw UsageError("--mode alternating needs --alpha");
    const double alpha = *opt.alpha;
    const double gamma = opt.gamma.value_or(1.0 - alpha);
    const PointRef x1 = opt.start ? parse_point(*opt.start, inst, "--start") : inst.sets.a().front();
    const PointRef y1 = opt.partner ? parse_point(*opt.partner, inst, "--partner") : inst.sets.b().front();
    line(out, "start", x1.to_string());
    line(out, "partner", y1.to_string());
    line(out, "alpha", num(alpha));
    line(out, "gamma", num(gamma));
    AlternatingResult ar;
    try {
        ar = two_map_alternating(inst.space, inst.sets, inst.graph, inst.pair(), x1, y1, alpha, gamma, cfg);
    } catch (const HypothesisError& e) {
        line(out, "status", "hypothesis_violation");
        line(out, "step", std::to_string(e.step()));
        line(out, "note", e.what());
        return kExitNegative;
    } catch (const DomainError& e) {
        if (dynamic_cast<const OrbitError*>(&e)) throw;
        throw UsageError(e.what());
    }
    print_result(ar.result, out);
    line(out, "bound_violations", std::to_string(ar.bound_violations));
    print_trace(ar.result, out, &ar.bounds);
    return ar.result.status == SolveStatus::found ? kExitOk : kExitNegative;
}

int section_solve(const Instance& inst, const Options& opt, std::ostream& out)
{
    out << "[solve]\n";
    line(out, "mode", opt.mode);
    line(out, "epsilon", num(opt.epsilon));
    line(out, "max_iter", std::to_string(opt.max_iter));
    line(out, "tolerance", num(opt.tol));
    line(out, "set_distance", num(pair_distance(inst.space, inst.sets)));
    if (opt.mode == "single") {
        if (inst.kind == InstanceKind::two_map) line(out, "note", "solving with T only");
        return solve_single(inst, opt, out);
    }
    if (inst.kind != InstanceKind::two_map) throw UsageError("--mode " + opt.mode + " needs a two-map instance");
    if (opt.mode == "parallel") return solve_parallel(inst, opt, out);
    return solve_alternating(inst, opt, out);
}

void print_members(const std::vector<std::string>& members, std::size_t limit, std::ostream& out)
{
    const std::size_t shown = limit == 0 ? members.size() : std::min(limit, members.size());
    for (std::size_t i = 0; i < shown; ++i) line(out, "  member", members[i]);
    if (shown < members.size()) line(out, "  members_omitted", std::to_string(members.size() - shown));
}

int enumerate_single(const Instance& inst, const Options& opt, std::ostream& out)
{
    const Tolerance tol(opt.tol);
    const MembershipMode mode = opt.set_mode == "vacuous" ? MembershipMode::vacuous : MembershipMode::strict;
    const auto ps = enumerate_proximity_set(inst.space, inst.sets, inst.graph, inst.map, opt.epsilon, mode, tol);
    const double dab = pair_distance(inst.space, inst.sets);
    line(out, "size", std::to_string(ps.members.size()));
    std::vector<std::string> text;
    for (const auto& m : ps.members) text.push_back(m.to_string());
    print_members(text, opt.limit, out);
    if (ps.members.empty()) {
        line(out, "diameter", "undefined (empty set)");
        return opt.require_nonempty ? kExitNegative : kExitOk;
    }
    const double diam = proximity_diameter(inst.space, ps);
    line(out, "diameter", num(diam));

    const EvaluatedMap ev(inst.space, inst.sets, inst.map);
    if (!preserves_edges(inst.graph, inst.sets, ev.images).holds) {
        line(out, "bound", "not applicable (map does not preserve edges)");
        return kExitOk;
    }
    const auto cf = min_contraction_factor(inst.space, inst.sets, inst.graph, inst.map);
    if (!cf.contractive) {
        line(out, "bound", "not applicable (not a G-contraction)");
        return kExitOk;
    }
    const double bound = contraction_diam_bound(cf.alpha_min, opt.epsilon, dab);
    line(out, "bound", num(bound) + " (alpha " + num(cf.alpha_min) + ", epsilon " + num(opt.epsilon) +
                           ", d(A,B) " + num(dab) + ")");
    line(out, "within_bound", yes_no(diam <= bound + opt.tol));
    return kExitOk;
}

int enumerate_pairs(const Instance& inst, const Options& opt, std::ostream& out)
{
    const Tolerance tol(opt.tol);
    const MapPair pair = inst.pair();
    const auto pps = enumerate_pair_set(inst.space, inst.sets, inst.graph, pair, opt.epsilon, tol);
    const double dab = pair_distance(inst.space, inst.sets);
    line(out, "size", std::to_string(pps.members.size()));
    std::vector<std::string> text;
    for (const auto& [x, y] : pps.members) text.push_back(x.to_string() + " " + y.to_string());
    print_members(text, opt.limit, out);
    if (pps.members.empty()) {
        line(out, "pair_diameter", "undefined (empty set)");
        return opt.require_nonempty ? kExitNegative : kExitOk;
    }
    const double diam = pair_diameter(inst.space, pps);
    line(out, "pair_diameter", num(diam));
    const auto k = two_map_displacement_ratio(inst.space, pair, pps);
    if (!k || *k >= 1.0) {
        line(out, "displacement_ratio", k ? num(*k) : "unbounded");
        line(out, "bound", "not applicable (ratio k is not below 1)");
        return kExitOk;
    }
    const double bound = two_map_diam_bound(*k, opt.epsilon, dab);
    line(out, "displacement_ratio", num(*k));
    line(out, "bound", num(bound) + " (k " + num(*k) + ", epsilon " + num(opt.epsilon) + ", d(A,B) " + num(dab) + ")");
    line(out, "within_bound", yes_no(diam <= bound + opt.tol));
    return kExitOk;
}

int section_enumerate(const Instance& inst, const Options& opt, std::ostream& out)
{
    out << "[enumerate]\n";
    if (!(opt.epsilon >= 0.0) || !std::isfinite(opt.epsilon)) throw UsageError("--epsilon must be >= 0");
    const bool pairs = inst.kind == InstanceKind::two_map && opt.set_mode != "single";
    line(out, "set", pairs ? "pairs" : opt.set_mode);
    line(out, "epsilon", num(opt.epsilon));
    line(out, "tolerance", num(opt.tol));
    line(out, "set_distance", num(pair_distance(inst.space, inst.sets)));
    return pairs ? enumerate_pairs(inst, opt, out) : enumerate_single(inst, opt, out);
}

Instance load(const Options& opt) { return load_instance(opt.path); }

int cmd_validate(const Options& opt, std::ostream& out)
{
    const Instance inst = load(opt);
    describe(inst, opt, out);
    return section_validate(inst, out);
}

int cmd_classify(const Options& opt, std::ostream& out)
{
    const Instance inst = load(opt);
    describe(inst, opt, out);
    return section_classify(inst, opt, out);
}

int cmd_solve(const Options& opt, std::ostream& out)
{
    const Instance inst = load(opt);
    describe(inst, opt, out);
    return section_solve(inst, opt, out);
}

int cmd_enumerate(const Options& opt, std::ostream& out)
{
    const Instance inst = load(opt);
    describe(inst, opt, out);
    return section_enumerate(inst, opt, out);
}

double default_grid_step(const std::string& name)
{
    if (name == "interval") return 1e-3;
    if (name == "ellipse") return 0.05;
    return 1e-2;
}

int cmd_demo(const Options& opt, std::ostream& out)
{
    const double step = opt.grid_step.value_or(default_grid_step(opt.demo));
    Instance inst = [&] {
        try {
            return build_named_example(opt.demo, step, "complete");
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }();
    describe(inst, opt, out);
    section_validate(inst, out);
    section_classify(inst, opt, out);

    Options o = opt;
    o.max_iter = 100;
    if (opt.demo == "interval") {
        // On the complete graph the cross pair (-1, 1) keeps its length, so
        // the within-set factor is reported separately.
        const auto same = named_graph("same_set", inst.sets);
        const auto cf = min_contraction_factor(inst.space, inst.sets, same, inst.map);
        out << "[classify_same_set_graph]\n";
        line(out, "alpha_min", num(cf.alpha_min));
        line(out, "alpha_min_edge", edge_text(cf.worst_edge));
        o.start = "-3";
        o.epsilon = 0.3;
        section_solve(inst, o, out);
        for (double eps : {0.0, 0.3}) {
            o.epsilon = eps;
            o.limit = 6;
            section_enumerate(inst, o, out);
        }
    } else if (opt.demo == "ellipse") {
        o.max_iter = 4;
        o.epsilon = 0.01;
        section_solve(inst, o, out);
        o.limit = 10;
        section_enumerate(inst, o, out);
    } else {
        o.epsilon = 0.01;
        o.mode = "parallel";
        section_solve(inst, o, out);
        o.mode = "alternating";
        o.alpha = 0.0;
        o.gamma = 1.0;
        o.partner = "1,1";
        section_solve(inst, o, out);
        o.limit = 4;
        section_enumerate(inst, o, out);
    }
    return kExitOk;
}

int cmd_bound(const Options& opt, std::ostream& out)
{
    out << "[bound]\n";
    line(out, "kind", opt.bound_kind);
    line(out, "epsilon", num(opt.epsilon));
    line(out, "d_ab", num(opt.dab));
    try {
        if (opt.bound_kind == "crr") {
            line(out, "d0", num(opt.d0));
            line(out, "k", num(opt.k));
            line(out, "iterations", std::to_string(crr_iteration_bound(opt.d0, opt.k, opt.dab, opt.epsilon,
                                                                       Tolerance(opt.tol))));
        } else if (opt.bound_kind == "contraction") {
            const double a = opt.alpha.value_or(0.0);
            line(out, "alpha", num(a));
            line(out, "diameter_bound", num(contraction_diam_bound(a, opt.epsilon, opt.dab)));
        } else {
            line(out, "k", num(opt.k));
            line(out, "diameter_bound", num(two_map_diam_bound(opt.k, opt.epsilon, opt.dab)));
        }
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return kExitOk;
}

int cmd_generate(const Options& opt, std::ostream& out)
{
    RandomSpec spec;
    spec.seed = opt.seed;
    spec.n_a = opt.n_a;
    spec.n_b = opt.n_b;
    spec.n_shared = opt.n_shared;
    spec.map_rule = *parse_map_rule(opt.map_rule);
    if (opt.second_rule) spec.second_rule = *parse_map_rule(*opt.second_rule);
    spec.factor = opt.factor;
    spec.depth = opt.depth;
    spec.graph_rule = *parse_graph_rule(opt.graph_rule);
    spec.edge_probability = opt.edge_probability;
    Instance inst = [&] {
        try {
            return random_instance(spec);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }();
    if (!opt.output) {
        write_instance(inst, out);
        return kExitOk;
    }
    save_instance(inst, *opt.output);
    describe(inst, opt, out);
    line(out, "written", *opt.output);
    return kExitOk;
}

std::string join(const std::vector<std::string>& args)
{
    std::string s = "gprox";
    for (const auto& a : args) s += " " + a;
    return s;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Approximate best proximity points on graph-endowed metric spaces", "gprox"};
    app.option_defaults()->always_capture_default();
    app.add_option("--tol", opt.tol, "Absolute slack for every <= comparison")->check(CLI::PositiveNumber);
    app.add_flag("--timing", opt.timing, "Append wall-clock time (breaks byte-identical output)");
    app.require_subcommand(1);

    const auto rules = CLI::IsMember({"nearest", "affine", "chain"});

    auto* validate = app.add_subcommand("validate", "Check metric axioms, sets, graph and map cyclicity");
    validate->add_option("instance", opt.path, "Instance file")->required();

    auto* classify = app.add_subcommand("classify", "Contraction factor, CRR constants, nonexpansiveness");
    classify->add_option("instance", opt.path, "Instance file")->required();
    classify->add_option("--alpha", opt.alpha, "Test the G-contraction (or two-map CRR) inequality at alpha");
    classify->add_option("--gamma", opt.gamma, "gamma for the two-map test with --alpha");
    classify->add_option("--crr-grid", opt.crr_grid, "Grid step of the CRR constant search")
        ->check(CLI::Range(1e-6, 1.0));

    auto* solve = app.add_subcommand("solve", "Run an iteration scheme to an approximate proximity point");
    solve->add_option("instance", opt.path, "Instance file")->required();
    solve->add_option("--start", opt.start, "Start point: index, or comma-separated coordinates");
    solve->add_option("--partner", opt.partner, "Second start point for two-map schemes");
    solve->add_option("--epsilon", opt.epsilon, "Approximation slack (> 0)");
    solve->add_option("--max-iter", opt.max_iter, "Iteration cap (>= 1)");
    solve->add_option("--mode", opt.mode, "single, parallel or alternating")
        ->check(CLI::IsMember({"single", "parallel", "alternating"}));
    solve->add_option("--alpha", opt.alpha, "alpha of the alternating scheme");
    solve->add_option("--gamma", opt.gamma, "gamma of the alternating scheme (default 1 - alpha)");
    solve->add_option("--crr-grid", opt.crr_grid, "Grid step of the CRR constant search")
        ->check(CLI::Range(1e-6, 1.0));

    auto* enumerate = app.add_subcommand("enumerate", "Brute-force approximate proximity set and its diameter");
    enumerate->add_option("instance", opt.path, "Instance file")->required();
    enumerate->add_option("--epsilon", opt.epsilon, "Approximation slack (>= 0)");
    enumerate->add_option("--mode", opt.set_mode, "strict or vacuous; 'single' forces T-only sets on two-map files")
        ->check(CLI::IsMember({"strict", "vacuous", "single"}));
    enumerate->add_flag("--require-nonempty", opt.require_nonempty, "Exit 1 when the set is empty");
    enumerate->add_option("--limit", opt.limit, "Members to print (0 = all)");

    auto* demo = app.add_subcommand("demo", "Reproduce a worked example: interval, ellipse or segments");
    demo->add_option("name", opt.demo, "Example name")->required()->check(
        CLI::IsMember({"interval", "ellipse", "segments"}));
    demo->add_option("--grid-step", opt.grid_step, "Sample grid step");
    demo->add_option("--crr-grid", opt.crr_grid, "Grid step of the CRR constant search")
        ->check(CLI::Range(1e-6, 1.0));

    auto* bound = app.add_subcommand("bound", "Evaluate a closed-form bound");
    bound->add_option("kind", opt.bound_kind, "crr, contraction or two-map")
        ->required()
        ->check(CLI::IsMember({"crr", "contraction", "two-map"}));
    bound->add_option("--d0", opt.d0, "d(x0, T x0)");
    bound->add_option("--k", opt.k, "Decay rate or displacement ratio");
    bound->add_option("--alpha", opt.alpha, "Contraction factor");
    bound->add_option("--dab", opt.dab, "d(A,B)");
    bound->add_option("--epsilon", opt.epsilon, "Approximation slack");

    auto* generate = app.add_subcommand("generate", "Write a seeded random tabulated instance");
    generate->add_option("--seed", opt.seed, "RNG seed");
    generate->add_option("--n-a", opt.n_a, "Points only in A (chain: seeds starting in A)");
    generate->add_option("--n-b", opt.n_b, "Points only in B (chain: seeds starting in B)");
    generate->add_option("--n-shared", opt.n_shared, "Points in both sets");
    generate->add_option("--map", opt.map_rule, "Map rule")->check(rules);
    generate->add_option("--second-map", opt.second_rule, "Rule for S (makes a two-map instance)")->check(rules);
    generate->add_option("--factor", opt.factor, "Affine / chain factor")->check(CLI::NonNegativeNumber);
    generate->add_option("--depth", opt.depth, "Chain length per seed");
    generate->add_option("--graph", opt.graph_rule, "Graph rule")
        ->check(CLI::IsMember({"complete", "diagonal", "random", "random_closed"}));
    generate->add_option("--edge-probability", opt.edge_probability, "Edge probability of random graphs")
        ->check(CLI::Range(0.0, 1.0));
    generate->add_option("--output,-o", opt.output, "Output path (default: standard output)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const auto started = std::chrono::steady_clock::now();
    std::ostringstream report;
    int code = kExitOk;
    try {
        report << "command: " << join(args) << '\n';
        if (validate->parsed()) code = cmd_validate(opt, report);
        else if (classify->parsed()) code = cmd_classify(opt, report);
        else if (solve->parsed()) code = cmd_solve(opt, report);
        else if (enumerate->parsed()) code = cmd_enumerate(opt, report);
        else if (demo->parsed()) code = cmd_demo(opt, report);
        else if (bound->parsed()) code = cmd_bound(opt, report);
        else code = cmd_generate(opt, report);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ClassificationError& e) {
        out << report.str();
        err << "classification error: " << e.what() << '\n';
        return kExitNegative;
    } catch (const std::exception& e) {
        out << report.str();
        err << "error: " << e.what() << '\n';
        return kExitNegative;
    }
    if (generate->parsed() && !opt.output) {
        // The instance text itself is the output; no report framing.
        const std::string text = report.str();
        out << text.substr(text.find('\n') + 1);
        return code;
    }
    if (opt.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
        line(report, "elapsed_ms", num(ms.count()));
    }
    line(report, "exit_status", std::to_string(code));
    out << report.str();
    return code;
}

} // namespace gprox::cli
