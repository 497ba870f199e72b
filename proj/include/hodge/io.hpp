#pragma once

#include "hodge/bloch.hpp"
#include "hodge/bounds.hpp"
#include "hodge/coloring.hpp"

#include <chrono>
#include <fstream>
#include <iterator>
#include <memory>

#include <json.hpp>

namespace hodge {

inline constexpr const char* version = "0.1.0";

using Json = nlohmann::ordered_json;

// ================================================================
// Line-aware JSON parsing
// ================================================================

namespace detail {

/// Char iterator that counts newlines as the parser consumes them.
class LineCountingIterator {
public:
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    LineCountingIterator() = default;
    LineCountingIterator(std::string::const_iterator it, std::shared_ptr<int> line) : it_(it), line_(std::move(line)) {}

    reference operator*() const { return *it_; }
    LineCountingIterator& operator++()
    {
        if (*it_ == '\n') ++*line_;
        ++it_;
        return *this;
    }
    LineCountingIterator operator++(int)
    {
        auto copy = *this;
        ++*this;
        return copy;
    }
    bool operator==(const LineCountingIterator& o) const { return it_ == o.it_; }
    bool operator!=(const LineCountingIterator& o) const { return it_ != o.it_; }

private:
    std::string::const_iterator it_;
    std::shared_ptr<int> line_;
};

} // namespace detail

/// Parsed document plus the starting line of every element of its top-level arrays and objects.
struct LocatedJson {
    Json doc;
    std::string source;
    std::map<std::string, std::vector<int>> lines; ///< top-level key -> line of each entry

    int line_of(const std::string& key, std::size_t i) const
    {
        auto it = lines.find(key);
        return it != lines.end() && i < it->second.size() ? it->second[i] : 0;
    }

    [[noreturn]] void fail(const std::string& key, std::size_t i, const std::string& what) const
    {
        const int line = line_of(key, i);
        throw InputError(source + (line ? ":" + std::to_string(line) : "") + ": " + what);
    }
};

inline LocatedJson parse_located(const std::string& text, const std::string& source)
{
    LocatedJson out;
    out.source = source;
    auto line = std::make_shared<int>(1);
    std::string top_key;
    bool in_array = false;
    auto track = [&](int depth, Json::parse_event_t event, Json& parsed) {
        using E = Json::parse_event_t;
        if (depth == 1 && event == E::key) top_key = parsed.get<std::string>();
        if (depth == 1 && (event == E::array_start || event == E::object_start)) in_array = event == E::array_start;
        const bool entry = in_array ? (event == E::object_start || event == E::array_start || event == E::value)
                                    : event == E::key;
        if (depth == 2 && entry) out.lines[top_key].push_back(*line);
        return true;
    };
    try {
        out.doc = Json::parse(detail::LineCountingIterator(text.begin(), line),
                              detail::LineCountingIterator(text.end(), line), track);
    } catch (const Json::parse_error& e) {
        throw InputError(source + ": " + e.what());
    }
    if (!out.doc.is_object()) throw InputError(source + ": top level must be an object");
    return out;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// ================================================================
// Complex documents
// ================================================================

/**
 * @brief Graph, dimension, higher weights and optional coloring read from one document.
 *
 * { "dimension": n,
 *   "vertices": [{"id": 0, "m0": 1.0}, ...],
 *   "edges": [{"u": 0, "v": 1, "m1": 1.0}, ...],
 *   "higher_weights": [{"simplex": [0, 1, 2], "m": 2.0}, ...],
 *   "coloring": {"0": 1, "1": 2, ...} }
 *
 * m0, m1 and m default to 1.
 */
struct ComplexDocument {
    WeightedGraph graph;
    int dimension = 1;
    std::map<Simplex, double> higher_weights;
    std::optional<Coloring> coloring;
    std::string source;
};

namespace detail {

inline double positive_number(const LocatedJson& lj, const Json& obj, const char* field, const std::string& key,
                              std::size_t i, const std::string& what, bool allow_zero = false)
{
    if (!obj.contains(field)) return 1.0;
    const Json& v = obj[field];
    if (!v.is_number()) lj.fail(key, i, what + ": field '" + field + "' must be a number");
    const double x = v.get<double>();
    if (!(allow_zero ? x >= 0.0 : x > 0.0) || !std::isfinite(x))
        lj.fail(key, i, what + ": field '" + field + "' must be " + (allow_zero ? "nonnegative" : "positive"));
    return x;
}

inline Vertex integer_field(const LocatedJson& lj, const Json& obj, const char* field, const std::string& key,
                            std::size_t i, const std::string& what)
{
    if (!obj.contains(field)) lj.fail(key, i, what + ": missing field '" + field + "'");
    const Json& v = obj[field];
    if (!v.is_number_integer()) lj.fail(key, i, what + ": field '" + field + "' must be an integer");
    return v.get<Vertex>();
}

inline Coloring parse_coloring_object(const LocatedJson& lj, const Json& obj, const std::string& key)
{
    if (!obj.is_object()) lj.fail(key, 0, "coloring must be an object mapping vertex ids to colors");
    Coloring c;
    std::size_t i = 0;
    for (auto it = obj.begin(); it != obj.end(); ++it, ++i) {
        Vertex v = 0;
        try {
            std::size_t used = 0;
            v = std::stoll(it.key(), &used);
            if (used != it.key().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            lj.fail(key, i, "coloring key '" + it.key() + "' is not a vertex id");
        }
        if (!it.value().is_number_integer()) lj.fail(key, i, "color of vertex " + it.key() + " must be an integer");
        c.colors[v] = it.value().get<int>();
        c.p = std::max(c.p, c.colors[v]);
    }
    return c;
}

} // namespace detail

inline ComplexDocument parse_complex_document(const std::string& text, const std::string& source = "<input>")
{
    const LocatedJson lj = parse_located(text, source);
    const Json& doc = lj.doc;
    ComplexDocument out;
    out.source = source;

    if (doc.contains("dimension")) {
        if (!doc["dimension"].is_number_integer() || doc["dimension"].get<int>() < 0)
            throw InputError(source + ": 'dimension' must be a nonnegative integer");
        out.dimension = doc["dimension"].get<int>();
    }
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw InputError(source + ": missing 'vertices' array");
    const Json& vs = doc["vertices"];
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string what = "vertex " + std::to_string(i);
        if (!vs[i].is_object()) lj.fail("vertices", i, what + ": expected an object");
        const Vertex id = detail::integer_field(lj, vs[i], "id", "vertices", i, what);
        const double m0 = detail::positive_number(lj, vs[i], "m0", "vertices", i, what);
        if (out.graph.has_vertex(id)) lj.fail("vertices", i, "duplicate vertex id " + std::to_string(id));
        out.graph.add_vertex(id, m0);
    }
    if (doc.contains("edges")) {
        const Json& es = doc["edges"];
        if (!es.is_array()) throw InputError(source + ": 'edges' must be an array");
        std::set<std::pair<Vertex, Vertex>> seen;
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string what = "edge " + std::to_string(i);
            if (!es[i].is_object()) lj.fail("edges", i, what + ": expected an object");
            const Vertex u = detail::integer_field(lj, es[i], "u", "edges", i, what);
            const Vertex v = detail::integer_field(lj, es[i], "v", "edges", i, what);
            const double m1 = detail::positive_number(lj, es[i], "m1", "edges", i, what);
            if (u == v) lj.fail("edges", i, what + ": self-loop at vertex " + std::to_string(u));
            for (Vertex x : {u, v})
                if (!out.graph.has_vertex(x)) lj.fail("edges", i, what + ": undeclared vertex " + std::to_string(x));
            if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
                lj.fail("edges", i, what + ": duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
            out.graph.set_edge(u, v, m1);
        }
    }
    if (doc.contains("higher_weights")) {
        const Json& hw = doc["higher_weights"];
        if (!hw.is_array()) throw InputError(source + ": 'higher_weights' must be an array");
        for (std::size_t i = 0; i < hw.size(); ++i) {
            const std::string what = "higher weight " + std::to_string(i);
            if (!hw[i].is_object() || !hw[i].contains("simplex") || !hw[i]["simplex"].is_array())
                lj.fail("higher_weights", i, what + ": expected {\"simplex\": [...], \"m\": ...}");
            Simplex s;
            for (const auto& x : hw[i]["simplex"]) {
                if (!x.is_number_integer()) lj.fail("higher_weights", i, what + ": simplex ids must be integers");
                s.push_back(x.get<Vertex>());
            }
            if (s.size() < 3) lj.fail("higher_weights", i, what + ": simplex needs at least 3 vertices");
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end())
                lj.fail("higher_weights", i, what + ": repeated vertex");
            if (out.higher_weights.count(s)) lj.fail("higher_weights", i, what + ": duplicate simplex " + format_simplex(s));
            out.higher_weights[s] = detail::positive_number(lj, hw[i], "m", "higher_weights", i, what);
        }
    }
    if (doc.contains("coloring")) out.coloring = detail::parse_coloring_object(lj, doc["coloring"], "coloring");
    return out;
}

inline ComplexDocument load_complex_document(const std::string& path)
{
    return parse_complex_document(read_file(path), path);
}

/// Colors from a standalone file: either {"coloring": {...}} or the bare map; "p" optional.
inline Coloring load_coloring(const std::string& path)
{
    const LocatedJson lj = parse_located(read_file(path), path);
    const bool wrapped = lj.doc.contains("coloring");
    Coloring c = detail::parse_coloring_object(lj, wrapped ? lj.doc["coloring"] : lj.doc, wrapped ? "coloring" : "");
    if (lj.doc.contains("p")) {
        if (!lj.doc["p"].is_number_integer()) throw InputError(path + ": 'p' must be an integer");
        c.p = lj.doc["p"].get<int>();
    }
    return c;
}

/// Higher-weight rule by name: "file" (document table, 1 elsewhere), "unit", or "constant:<c>".
inline WeightRule weight_rule(const std::string& rule, const ComplexDocument& doc)
{
    if (rule == "file") return explicit_weights(doc.higher_weights);
    if (rule == "unit") return constant_weight(1.0);
    if (rule.rfind("constant:", 0) == 0) {
        const double c = to_double(parse_decimal(rule.substr(9)));
        if (!(c > 0.0)) throw InputError("weight rule '" + rule + "': constant must be positive");
        return constant_weight(c);
    }
    throw InputError("unknown weight rule '" + rule + "' (expected file, unit or constant:<c>)");
}

inline WeightedComplex build(const ComplexDocument& doc, std::optional<int> dimension = std::nullopt,
                             const std::string& rule = "file")
{
    const int n = dimension.value_or(doc.dimension);
    if (n < 0) throw InputError("dimension must be nonnegative");
    auto cx = build_complex(doc.graph, n, weight_rule(rule, doc));
    if (rule == "file")
        for (const auto& [s, m] : doc.higher_weights) {
            const int k = static_cast<int>(s.size()) - 1;
            if (k <= n && !cx.find(k, s))
                throw InputError(doc.source + ": higher weight given for " + format_simplex(s) + ", which is not a clique");
        }
    return cx;
}

// ================================================================
// Cell documents
// ================================================================

/**
 * { "name": "...", "dim": 2,
 *   "vertices": [{"m0": 1.0}, ...]            or "vertex_orbits": 1,
 *   "edges": [{"tail": 0, "head": 0, "shift": [1, 0], "m1": 1.0}, ...],
 *   "triangles": [{"vertices": [[0, [0, 0]], [0, [1, 0]], [0, [0, 1]]], "m2": 1.0}, ...] }
 *
 * Without "triangles" the orbits are derived from the graph.
 */
inline PeriodicCell parse_cell_document(const std::string& text, const std::string& source = "<cell>")
{
    const LocatedJson lj = parse_located(text, source);
    const Json& doc = lj.doc;
    PeriodicCell c;
    c.name = doc.value("name", source);
    if (!doc.contains("dim") || !doc["dim"].is_number_integer()) throw InputError(source + ": missing integer 'dim'");
    c.dim = doc["dim"].get<int>();
    if (doc.contains("vertices")) {
        const Json& vs = doc["vertices"];
        if (!vs.is_array()) throw InputError(source + ": 'vertices' must be an array");
        for (std::size_t i = 0; i < vs.size(); ++i)
            c.m0.push_back(vs[i].is_object() ? detail::positive_number(lj, vs[i], "m0", "vertices", i,
                                                                        "vertex orbit " + std::to_string(i))
                                             : 1.0);
    } else if (doc.contains("vertex_orbits") && doc["vertex_orbits"].is_number_integer()) {
        c.m0.assign(static_cast<std::size_t>(std::max(0, doc["vertex_orbits"].get<int>())), 1.0);
    } else {
        throw InputError(source + ": give 'vertices' or 'vertex_orbits'");
    }
    auto shift_of = [&](const Json& s, const std::string& key, std::size_t i, const std::string& what) {
        if (!s.is_array() || static_cast<int>(s.size()) != c.dim)
            lj.fail(key, i, what + ": shift must be an array of " + std::to_string(c.dim) + " integers");
        Shift out;
        for (const auto& x : s) {
            if (!x.is_number_integer()) lj.fail(key, i, what + ": shift entries must be integers");
            out.push_back(x.get<int>());
        }
        return out;
    };
    if (!doc.contains("edges") || !doc["edges"].is_array()) throw InputError(source + ": missing 'edges' array");
    const Json& es = doc["edges"];
    for (std::size_t i = 0; i < es.size(); ++i) {
        const std::string what = "edge orbit " + std::to_string(i);
        if (!es[i].is_object()) lj.fail("edges", i, what + ": expected an object");
        EdgeOrbit e;
        e.tail = static_cast<int>(detail::integer_field(lj, es[i], "tail", "edges", i, what));
        e.head = static_cast<int>(detail::integer_field(lj, es[i], "head", "edges", i, what));
        if (!es[i].contains("shift")) lj.fail("edges", i, what + ": missing field 'shift'");
        e.shift = shift_of(es[i]["shift"], "edges", i, what);
        e.m1 = detail::positive_number(lj, es[i], "m1", "edges", i, what);
        c.edges.push_back(std::move(e));
    }
    if (doc.contains("triangles")) {
        const Json& ts = doc["triangles"];
        if (!ts.is_array()) throw InputError(source + ": 'triangles' must be an array");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const std::string what = "triangle orbit " + std::to_string(i);
            if (!ts[i].is_object() || !ts[i].contains("vertices") || !ts[i]["vertices"].is_array() ||
                ts[i]["vertices"].size() != 3)
                lj.fail("triangles", i, what + ": expected {\"vertices\": [[orbit, shift] x3]}");
            TriangleOrbit t;
            for (std::size_t j = 0; j < 3; ++j) {
                const Json& v = ts[i]["vertices"][j];
                if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer())
                    lj.fail("triangles", i, what + ": vertex must be [orbit, shift]");
                t.vertices[j] = {v[0].get<int>(), shift_of(v[1], "triangles", i, what)};
            }
            t.m2 = detail::positive_number(lj, ts[i], "m2", "triangles", i, what);
            c.triangles.push_back(std::move(t));
        }
        c.validate();
    } else {
        c.validate();
        c.triangles = derive_triangle_orbits(c);
    }
    return c;
}

inline PeriodicCell load_cell(const std::string& path) { return parse_cell_document(read_file(path), path); }

// ================================================================
// Reports
// ================================================================

struct RunMetadata {
    std::string command;
    std::uint64_t seed = 0;
    Json tolerances = Json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Json to_json() const
    {
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return Json{{"tool", "hodge"}, {"version", version}, {"command", command},
                    {"seed", seed},    {"tolerances", tolerances}, {"wall_time_s", wall}};
    }
};

inline Json to_json(const Certificate& c, double tolerance = 0.0)
{
    return Json{{"name", c.name},       {"value", c.value},   {"formula", c.formula},
                {"binding", c.binding}, {"margin", c.margin}, {"status", c.margin >= -tolerance ? "PASS" : "FAIL"}};
}

inline Json to_json(const BoundReport& r)
{
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c, r.tolerance));
    return Json{{"degree", r.degree},
                {"flavor", std::string(to_string(r.flavor))},
                {"normalized", r.normalized},
                {"computed_norm", r.computed_norm},
                {"norm_method", r.norm_method},
                {"iterations", r.iterations},
                {"certificates", certs},
                {"status", r.passed() ? "PASS" : "FAIL"},
                {"advisories", r.advisories_hold() ? "hold" : "violated"}};
}

inline Json to_json(const LatticeRow& row)
{
    Json variants = Json::object();
    for (const auto& v : row.variants) variants[variant_name(v.options)] = v.value;
    return Json{{"lattice", row.lattice},         {"degree", row.degree},   {"line_degree", row.line_degree},
                {"universal_bound", row.universal}, {"bloch", row.bloch},   {"ratio", row.ratio},
                {"argmax", row.argmax},           {"variants", variants}};
}

inline Json to_json(const IntertwineRecord& r)
{
    return Json{{"degree", r.degree},
                {"d_residual", r.d_residual},
                {"delta_residual", r.delta_residual},
                {"laplacian_residual", r.laplacian_residual},
                {"normalized_residual", r.normalized_residual},
                {"spectrum_gap", r.spectrum_gap},
                {"kernel_skew", r.kernel_skew},
                {"kernel_sym", r.kernel_sym}};
}

} // namespace hodge
