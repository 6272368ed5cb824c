#include "gprox/instance_io.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "gprox/format.hpp"

namespace gprox {

namespace {

constexpr const char* kMagic = "gprox-instance";

void write_indices(std::ostream& out, const std::vector<PointRef>& pts)
{
    for (const auto& p : pts) out << ' ' << p.index();
}

std::string graph_rule_name(const DirectedGraph& g)
{
    switch (g.rule()) {
    case GraphRule::complete: return "complete";
    case GraphRule::diagonal: return "diagonal";
    case GraphRule::explicit_list: return "explicit";
    case GraphRule::custom:
        if (g.name() == "same_set") return "same_set";
        throw DomainError("graph '" + g.name() + "' has no textual form");
    }
    return "complete";
}

std::string row_text(const MetricSpace& space, std::size_t i, std::size_t count)
{
    std::string s = "row:";
    for (std::size_t j = 0; j < count; ++j) {
        s += ' ';
        s += format_exact(space.entry(i, j));
    }
    return s;
}

} // namespace

void write_instance(const Instance& inst, std::ostream& out)
{
    out << kMagic << ": 1\n";
    out << "kind: " << (inst.space.kind() == SpaceKind::tabulated ? "tabulated" : "coordinate") << '\n';
    out << "instance: " << (inst.kind == InstanceKind::two_map ? "two-map" : "single-map") << '\n';
    out << "name: " << inst.name << '\n';

    if (inst.space.kind() == SpaceKind::coordinate) {
        out << "example: " << inst.name << '\n';
        for (const auto& [key, value] : inst.params) out << key << ": " << value << '\n';
        out << "end\n";
        return;
    }

    for (const auto& [key, value] : inst.params) out << "param: " << key << ' ' << value << '\n';
    const std::size_t n = inst.space.size();
    bool symmetric = true;
    for (std::size_t i = 0; i < n && symmetric; ++i)
        for (std::size_t j = 0; j < i && symmetric; ++j)
            symmetric = inst.space.entry(i, j) == inst.space.entry(j, i);
    out << "n: " << n << '\n';
    out << "dist: " << (symmetric ? "lower" : "full") << '\n';
    for (std::size_t i = 0; i < n; ++i) out << row_text(inst.space, i, symmetric ? i + 1 : n) << '\n';

    out << "A:";
    write_indices(out, inst.sets.a());
    out << "\nB:";
    write_indices(out, inst.sets.b());
    out << '\n';

    auto write_map = [&out](const char* key, const CyclicMap& f) {
        if (!f.is_table()) throw DomainError("map '" + f.name() + "' is not a table");
        out << key << ": table";
        for (std::size_t v : f.images()) out << ' ' << v;
        out << '\n';
    };
    write_map("map", inst.map);
    if (inst.second) write_map("map_s", *inst.second);

    out << "graph: " << graph_rule_name(inst.graph) << '\n';
    if (inst.graph.rule() == GraphRule::explicit_list) {
        for (const auto& [x, y] : inst.graph.edges()) out << "edge: " << x.index() << ' ' << y.index() << '\n';
        for (const auto& [x, y] : inst.graph.parallel_edges())
            out << "edge: " << x.index() << ' ' << y.index() << '\n';
    }
    out << "end\n";
}

namespace {

struct Line {
    std::size_t number;
    std::string key;
    std::string value;
};

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s)
{
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

class Reader {
public:
    explicit Reader(std::istream& in)
    {
        std::string raw;
        std::size_t number = 0;
        while (std::getline(in, raw)) {
            ++number;
            const std::string text = trim(raw);
            if (text.empty() || text.front() == '#') continue;
            if (text == "end") {
                end_line_ = number;
                break;
            }
            const auto colon = text.find(':');
            if (colon == std::string::npos) throw ParseError("expected 'key: value'", number, "line");
            lines_.push_back({number, trim(text.substr(0, colon)), trim(text.substr(colon + 1))});
        }
        if (!end_line_) throw ParseError("missing 'end' marker (file truncated?)", number + 1, "end");
        while (std::getline(in, raw)) {
            ++number;
            const std::string text = trim(raw);
            if (!text.empty() && text.front() != '#') throw ParseError("content after 'end'", number, "end");
        }
    }

    /// The single line with this key, or nothing; repeated keys are errors.
    const Line* single(const std::string& key) const
    {
        const Line* found = nullptr;
        for (const auto& l : lines_) {
            if (l.key != key) continue;
            if (found) throw ParseError("duplicate field", l.number, key);
            found = &l;
        }
        return found;
    }

    const Line& require(const std::string& key) const
    {
        if (const Line* l = single(key)) return *l;
        throw ParseError("missing field", end_line_, key);
    }

    std::vector<const Line*> all(const std::string& key) const
    {
        std::vector<const Line*> out;
        for (const auto& l : lines_)
            if (l.key == key) out.push_back(&l);
        return out;
    }

    void reject_unknown(std::initializer_list<const char*> known) const
    {
        for (const auto& l : lines_) {
            bool ok = false;
            for (const char* k : known) ok = ok || l.key == k;
            if (!ok) throw ParseError("unknown field", l.number, l.key);
        }
    }

private:
    std::vector<Line> lines_;
    std::size_t end_line_ = 0;
};

double number(const Line& l, const std::string& text)
{
    const auto v = parse_double(text);
    if (!v) throw ParseError("not a number: '" + text + "'", l.number, l.key);
    return *v;
}

std::size_t index(const Line& l, const std::string& text)
{
    const auto v = parse_unsigned(text);
    if (!v) throw ParseError("not an index: '" + text + "'", l.number, l.key);
    return static_cast<std::size_t>(*v);
}

std::vector<PointRef> index_list(const Line& l)
{
    std::vector<PointRef> out;
    for (const auto& w : words(l.value)) out.push_back(PointRef::at(index(l, w)));
    if (out.empty()) throw ParseError("empty index list", l.number, l.key);
    return out;
}

Instance read_coordinate(const Reader& r, InstanceKind kind)
{
    r.reject_unknown({kMagic, "kind", "instance", "name", "example", "grid_step", "center", "factor", "graph"});
    const Line& ex = r.require("example");
    const Line& step = r.require("grid_step");
    const double grid_step = number(step, step.value);
    double center = 0.5;
    double factor = 0.0;
    const Line* c = r.single("center");
    const Line* f = r.single("factor");
    if (c) center = number(*c, c->value);
    if (f) factor = number(*f, f->value);
    if ((c || f) && ex.value != "segments") {
        throw ParseError("only the segments example takes center/factor", (c ? c : f)->number,
                         c ? "center" : "factor");
    }
    const Line* g = r.single("graph");
    const std::string graph = g ? g->value : "complete";
    if (graph != "complete" && graph != "diagonal" && graph != "same_set") {
        throw ParseError("unknown graph rule '" + graph + "'", g->number, "graph");
    }
    if (ex.value != "interval" && ex.value != "ellipse" && ex.value != "segments") {
        throw ParseError("unknown example '" + ex.value + "'", ex.number, "example");
    }
    Instance inst = [&] {
        try {
            return build_named_example(ex.value, grid_step, graph, center, factor);
        } catch (const DomainError& e) {
            throw ParseError(e.what(), step.number, "grid_step");
        }
    }();
    const InstanceKind actual = inst.kind;
    if (actual != kind) {
        const Line& l = r.require("instance");
        throw ParseError("example '" + ex.value + "' is not a " +
                             (kind == InstanceKind::two_map ? "two-map" : "single-map") + " instance",
                         l.number, "instance");
    }
    return inst;
}

CyclicMap read_table(const Line& l, std::size_t n, std::string name)
{
    const auto w = words(l.value);
    if (w.empty() || w.front() != "table") {
        throw ParseError("tabulated maps must be 'table i0 i1 ...'", l.number, l.key);
    }
    std::vector<std::size_t> images;
    for (std::size_t i = 1; i < w.size(); ++i) images.push_back(index(l, w[i]));
    if (images.size() != n) {
        throw ParseError("map has " + std::to_string(images.size()) + " images for " + std::to_string(n) +
                             " points",
                         l.number, l.key);
    }
    return CyclicMap::table(std::move(images), std::move(name));
}

Instance read_tabulated(const Reader& r, InstanceKind kind)
{
    r.reject_unknown({kMagic, "kind", "instance", "name", "param", "n", "dist", "row", "A", "B", "map",
                      "map_s", "graph", "edge"});
    const Line& nl = r.require("n");
    const std::size_t n = index(nl, nl.value);
    if (n == 0) throw ParseError("n must be positive", nl.number, "n");

    const Line& dl = r.require("dist");
    if (dl.value != "lower" && dl.value != "full") {
        throw ParseError("dist must be 'lower' or 'full'", dl.number, "dist");
    }
    const bool lower = dl.value == "lower";
    const auto rows = r.all("row");
    if (rows.size() != n) {
        const std::size_t at = rows.size() > n ? rows[n]->number : (rows.empty() ? dl.number : rows.back()->number);
        throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows.size()), at,
                         "row");
    }
    std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto w = words(rows[i]->value);
        const std::size_t want = lower ? i + 1 : n;
        if (w.size() != want) {
            throw ParseError("row " + std::to_string(i) + " needs " + std::to_string(want) + " entries, has " +
                                 std::to_string(w.size()),
                             rows[i]->number, "row");
        }
        for (std::size_t j = 0; j < want; ++j) {
            matrix[i][j] = number(*rows[i], w[j]);
            if (lower) matrix[j][i] = matrix[i][j];
        }
    }
    MetricSpace space = [&] {
        try {
            return MetricSpace::tabulated(matrix);
        } catch (const StructuralError& e) {
            throw ParseError(e.what(), dl.number, "dist");
        }
    }();

    SubsetPair sets(index_list(r.require("A")), index_list(r.require("B")));

    CyclicMap t = read_table(r.require("map"), n, "T");
    std::optional<CyclicMap> s;
    const Line* sl = r.single("map_s");
    if (kind == InstanceKind::two_map) {
        if (!sl) throw ParseError("two-map instance needs map_s", r.require("map").number, "map_s");
        s = read_table(*sl, n, "S");
    } else if (sl) {
        throw ParseError("map_s given for a single-map instance", sl->number, "map_s");
    }

    const Line* gl = r.single("graph");
    const std::string rule = gl ? gl->value : "complete";
    const auto edges = r.all("edge");
    DirectedGraph graph;
    if (rule == "explicit") {
        std::vector<Edge> list;
        for (const Line* e : edges) {
            const auto w = words(e->value);
            if (w.size() != 2) throw ParseError("edge needs two indices", e->number, "edge");
            list.emplace_back(PointRef::at(index(*e, w[0])), PointRef::at(index(*e, w[1])));
        }
        graph = DirectedGraph::from_edges(std::move(list));
    } else {
        if (!edges.empty()) throw ParseError("edges given for a named graph rule", edges.front()->number, "edge");
        if (rule != "complete" && rule != "diagonal" && rule != "same_set") {
            throw ParseError("unknown graph rule '" + rule + "'", gl->number, "graph");
        }
        graph = named_graph(rule, sets);
    }

    std::vector<std::pair<std::string, std::string>> params;
    for (const Line* p : r.all("param")) {
        const auto w = words(p->value);
        if (w.size() != 2) throw ParseError("param needs 'key value'", p->number, "param");
        params.emplace_back(w[0], w[1]);
    }
    const Line* name = r.single("name");
    return Instance{
        .name = name ? name->value : "tabulated",
        .kind = kind,
        .space = std::move(space),
        .sets = std::move(sets),
        .graph = std::move(graph),
        .map = std::move(t),
        .second = std::move(s),
        .resolution = 0.0,
        .params = std::move(params),
    };
}

} // namespace

Instance read_instance(std::istream& in)
{
    const Reader r(in);
    const Line& magic = r.require(kMagic);
    if (magic.value != "1") throw ParseError("unsupported format version '" + magic.value + "'", magic.number, kMagic);
    const Line& kind = r.require("kind");
    const Line* il = r.single("instance");
    InstanceKind ik = InstanceKind::single_map;
    if (il) {
        if (il->value == "two-map") ik = InstanceKind::two_map;
        else if (il->value != "single-map") throw ParseError("instance must be single-map or two-map", il->number, "instance");
    }
    if (kind.value == "tabulated") return read_tabulated(r, ik);
    if (kind.value == "coordinate") return read_coordinate(r, ik);
    throw ParseError("kind must be 'tabulated' or 'coordinate'", kind.number, "kind");
}

void save_instance(const Instance& inst, const std::string& path)
{
    std::ostringstream text;
    write_instance(inst, text);
    std::ofstream out(path, std::ios::binary);
    out << text.str();
    if (!out) throw DomainError("cannot write '" + path + "'");
}

Instance load_instance(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, "file");
    return read_instance(in);
}

} // namespace gprox
