#pragma once

#include "hodge/types.hpp"

#include <functional>
#include <map>
#include <optional>
#include <utility>

namespace hodge {

// ================================================================
// Weighted graph
// ================================================================

/**
 * @brief Vertex-weighted graph with symmetric edge weights.
 *
 * Edges are the unordered pairs with m1 > 0. Vertex ids are arbitrary
 * integers; iteration order is ascending id.
 */
class WeightedGraph {
public:
    void add_vertex(Vertex v, double m0)
    {
        if (!(m0 > 0.0))
            throw InputError("vertex " + std::to_string(v) + ": weight m0 must be positive, got " + std::to_string(m0));
        if (!vertices_.emplace(v, VertexData{m0, {}}).second)
            throw InputError("duplicate vertex id " + std::to_string(v));
    }

    /// Sets m1(u,v) = m1(v,u). A zero weight removes the edge.
    void set_edge(Vertex u, Vertex v, double m1)
    {
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (!(m1 >= 0.0))
            throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) + "}: weight m1 must be nonnegative");
        auto iu = vertices_.find(u);
        auto iv = vertices_.find(v);
        if (iu == vertices_.end() || iv == vertices_.end())
            throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} references an undeclared vertex");
        if (m1 == 0.0) {
            iu->second.nbrs.erase(v);
            iv->second.nbrs.erase(u);
            return;
        }
        iu->second.nbrs[v] = m1;
        iv->second.nbrs[u] = m1;
    }

    bool has_vertex(Vertex v) const { return vertices_.count(v) != 0; }
    std::size_t num_vertices() const { return vertices_.size(); }

    std::size_t num_edges() const
    {
        std::size_t twice = 0;
        for (const auto& [v, data] : vertices_) twice += data.nbrs.size();
        return twice / 2;
    }

    std::vector<Vertex> vertices() const
    {
        std::vector<Vertex> out;
        out.reserve(vertices_.size());
        for (const auto& [v, data] : vertices_) out.push_back(v);
        return out;
    }

    double m0(Vertex v) const { return data(v).m0; }

    double m1(Vertex u, Vertex v) const
    {
        const auto& nb = data(u).nbrs;
        auto it = nb.find(v);
        return it == nb.end() ? 0.0 : it->second;
    }

    bool adjacent(Vertex u, Vertex v) const { return m1(u, v) > 0.0; }

    /// Neighbor ids in ascending order.
    std::vector<Vertex> neighbors(Vertex v) const
    {
        std::vector<Vertex> out;
        for (const auto& [u, w] : data(v).nbrs) out.push_back(u);
        return out;
    }

    std::size_t degree(Vertex v) const { return data(v).nbrs.size(); }

    std::size_t max_degree() const
    {
        std::size_t out = 0;
        for (const auto& [v, d] : vertices_) out = std::max(out, d.nbrs.size());
        return out;
    }

    /// d_V(x) = (1/m0(x)) sum_y m1(x,y)
    double weighted_degree(Vertex v) const
    {
        const auto& d = data(v);
        double s = 0.0;
        for (const auto& [u, w] : d.nbrs) s += w;
        return s / d.m0;
    }

    /// Undirected edges as (u, v) with u < v, lexicographic.
    std::vector<std::pair<Vertex, Vertex>> edges() const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (const auto& [v, d] : vertices_)
            for (const auto& [u, w] : d.nbrs)
                if (v < u) out.emplace_back(v, u);
        return out;
    }

private:
    struct VertexData {
        double m0;
        std::map<Vertex, double> nbrs;
    };

    const VertexData& data(Vertex v) const
    {
        auto it = vertices_.find(v);
        if (it == vertices_.end()) throw InputError("unknown vertex " + std::to_string(v));
        return it->second;
    }

    std::map<Vertex, VertexData> vertices_;
};

/// Max line-graph degree: two edges are adjacent when they share an endpoint.
inline std::size_t line_graph_max_degree(const WeightedGraph& g)
{
    std::size_t out = 0;
    for (auto [u, v] : g.edges()) out = std::max(out, g.degree(u) + g.degree(v) - 2);
    return out;
}

// ================================================================
// Weight rules for simplices of dimension >= 2
// ================================================================

using WeightRule = std::function<double(std::span<const Vertex>)>;

inline WeightRule constant_weight(double c)
{
    return [c](std::span<const Vertex>) { return c; };
}

/// Explicit per-simplex weights (keys sorted ascending); other simplices use `fallback`.
inline WeightRule explicit_weights(std::map<Simplex, double> table, WeightRule fallback = constant_weight(1.0))
{
    return [table = std::move(table), fallback = std::move(fallback)](std::span<const Vertex> s) {
        auto it = table.find(Simplex(s.begin(), s.end()));
        return it == table.end() ? fallback(s) : it->second;
    };
}

// ================================================================
// Weighted clique complex
// ================================================================

class WeightedComplex;
WeightedComplex build_complex(const WeightedGraph& graph, int n, const WeightRule& higher_weights = constant_weight(1.0));

/**
 * @brief Clique complex of a weighted graph, truncated at dimension n.
 *
 * Level k holds the (k+1)-cliques as ascending vertex tuples in
 * lexicographic order. The ascending tuple is the positively oriented
 * representative; other orderings pick up the sign of their sort parity.
 *
 * For a k-simplex, facet j is the simplex with its j-th vertex removed.
 * Cofaces of a (k-1)-face are recorded as (extension vertex, index) pairs
 * sorted by vertex, so they enumerate F_face exactly.
 */
class WeightedComplex {
public:
    struct Coface {
        Vertex vertex;
        Index index;
    };

    int dimension() const { return static_cast<int>(levels_.size()) - 1; }
    const WeightedGraph& graph() const { return graph_; }

    std::size_t size(int k) const { return in_range(k) ? levels_[k].simplices.size() : 0; }

    const Simplex& simplex(int k, Index i) const { return levels_.at(k).simplices.at(i); }
    const std::vector<Simplex>& simplices(int k) const { return levels_.at(k).simplices; }

    double weight(int k, Index i) const { return levels_.at(k).weights.at(i); }
    const std::vector<double>& weights(int k) const { return levels_.at(k).weights; }

    /// Looks up a vertex set given in any order.
    std::optional<Index> find(int k, std::span<const Vertex> vertices) const
    {
        if (!in_range(k) || vertices.size() != static_cast<std::size_t>(k + 1)) return std::nullopt;
        Simplex key(vertices.begin(), vertices.end());
        std::sort(key.begin(), key.end());
        const auto& idx = levels_[k].index;
        auto it = idx.find(key);
        if (it == idx.end()) return std::nullopt;
        return it->second;
    }

    Index index_of(int k, std::span<const Vertex> vertices) const
    {
        auto i = find(k, vertices);
        if (!i) throw InputError("simplex " + format_simplex(vertices) + " is not registered at level " + std::to_string(k));
        return *i;
    }

    /// Level-(k-1) indices of the facets of simplex (k, i); facet j omits vertex j.
    const std::vector<Index>& facets(int k, Index i) const { return levels_.at(k).facets.at(i); }

    /// Level-(k+1) cofaces of simplex (k, i).
    const std::vector<Coface>& cofaces(int k, Index i) const { return levels_.at(k).cofaces.at(i); }

    friend WeightedComplex build_complex(const WeightedGraph& graph, int n, const WeightRule& higher_weights);

private:
    struct Level {
        std::vector<Simplex> simplices;
        std::vector<double> weights;
        std::map<Simplex, Index> index;
        std::vector<std::vector<Index>> facets;
        std::vector<std::vector<Coface>> cofaces;
    };

    bool in_range(int k) const { return k >= 0 && k < static_cast<int>(levels_.size()); }

    WeightedGraph graph_;
    std::vector<Level> levels_;
};

/**
 * @brief Builds the n-dimensional weighted clique complex of `graph`.
 *
 * m0 and m1 come from the graph; `higher_weights` assigns m_k for k >= 2 and
 * must return a positive value on every registered simplex.
 */
inline WeightedComplex build_complex(const WeightedGraph& graph, int n, const WeightRule& higher_weights)
{
    if (n < 1) throw InputError("complex dimension must be at least 1, got " + std::to_string(n));

    WeightedComplex cx;
    cx.graph_ = graph;
    cx.levels_.resize(static_cast<std::size_t>(n) + 1);

    auto register_simplex = [&](int k, Simplex s, double w) {
        if (!(w > 0.0))
            throw InputError("non-positive weight " + std::to_string(w) + " on simplex " + format_simplex(s));
        auto& L = cx.levels_[k];
        L.index.emplace(s, L.simplices.size());
        L.simplices.push_back(std::move(s));
        L.weights.push_back(w);
    };

    for (Vertex v : graph.vertices()) register_simplex(0, Simplex{v}, graph.m0(v));

    // Incremental extension: (k+1)-cliques are k-cliques extended by a common
    // neighbor larger than their last vertex, which keeps lexicographic order.
    for (int k = 1; k <= n; ++k) {
        const auto& prev = cx.levels_[k - 1].simplices;
        for (const Simplex& s : prev) {
            for (Vertex z : graph.neighbors(s.back())) {
                if (z <= s.back()) continue;
                bool clique = true;
                for (std::size_t j = 0; j + 1 < s.size() && clique; ++j) clique = graph.adjacent(s[j], z);
                if (!clique) continue;
                Simplex ext = s;
                ext.push_back(z);
                double w = k == 1 ? graph.m1(s[0], z) : higher_weights(ext);
                register_simplex(k, std::move(ext), w);
            }
        }
    }

    for (int k = 0; k <= n; ++k) {
        auto& L = cx.levels_[k];
        L.facets.assign(L.simplices.size(), {});
        L.cofaces.assign(L.simplices.size(), {});
    }
    for (int k = 1; k <= n; ++k) {
        auto& L = cx.levels_[k];
        auto& below = cx.levels_[k - 1];
        for (Index i = 0; i < L.simplices.size(); ++i) {
            const Simplex& s = L.simplices[i];
            auto& fl = L.facets[i];
            fl.reserve(s.size());
            for (std::size_t j = 0; j < s.size(); ++j) {
                Simplex f;
                f.reserve(s.size() - 1);
                for (std::size_t m = 0; m < s.size(); ++m)
                    if (m != j) f.push_back(s[m]);
                Index fi = below.index.at(f);
                fl.push_back(fi);
                below.cofaces[fi].push_back({s[j], i});
            }
        }
        for (auto& cf : below.cofaces)
            std::sort(cf.begin(), cf.end(), [](const auto& a, const auto& b) { return a.vertex < b.vertex; });
    }
    return cx;
}

// ================================================================
// Degrees
// ================================================================

/**
 * Face degree d_{k-1}: for a face with k vertices (registered at level k-1),
 * (1/m_{k-1}(face)) * sum over extension vertices z of m_k(face, z).
 * With unit weights this is the number of extensions.
 */
inline double face_degree(const WeightedComplex& cx, int k, std::span<const Vertex> face)
{
    if (k < 1 || k > cx.dimension() + 1 || face.size() != static_cast<std::size_t>(k))
        throw InputError("face " + format_simplex(face) + " does not have " + std::to_string(k) + " vertices within the complex");
    auto fi = cx.find(k - 1, face);
    if (!fi) throw InputError("face " + format_simplex(face) + " is not registered");
    if (k > cx.dimension()) return 0.0;
    double s = 0.0;
    for (const auto& c : cx.cofaces(k - 1, *fi)) s += cx.weight(k, c.index);
    return s / cx.weight(k - 1, *fi);
}

struct UpDownDegrees {
    double down = 0.0;
    double up = 0.0;
};

/// Down/up degrees D_k^down, D_k^up (maxima over the finite complex; empty levels give 0).
inline UpDownDegrees up_down_degrees(const WeightedComplex& cx, int k)
{
    if (k < 0 || k > cx.dimension()) throw InputError("degree " + std::to_string(k) + " outside 0.." + std::to_string(cx.dimension()));
    UpDownDegrees out;
    if (k >= 1) {
        for (Index t = 0; t < cx.size(k - 1); ++t) {
            double s = 0.0;
            for (const auto& c : cx.cofaces(k - 1, t)) s += cx.weight(k, c.index);
            out.down = std::max(out.down, s / cx.weight(k - 1, t));
        }
    }
    if (k < cx.dimension()) {
        for (Index i = 0; i < cx.size(k); ++i) {
            double s = 0.0;
            for (const auto& c : cx.cofaces(k, i)) s += cx.weight(k + 1, c.index);
            out.up = std::max(out.up, s / cx.weight(k, i));
        }
    }
    return out;
}

// ================================================================
// Line complex of the top level
// ================================================================

/**
 * @brief Top simplices as nodes, adjacent when they share an (n-1)-face.
 *
 *   w(s,s') = sqrt(m_n(s) m_n(s')) / m_{n-1}(s ∩ s')
 *   a(s,s') = m_n(s') / m_{n-1}(s ∩ s')
 *   q(s)    = sum over facets t of m_n(s) / m_{n-1}(t)
 *   D(s)    = sum over neighbors of w(s,s')
 */
struct LineComplex {
    struct Neighbor {
        Index node;
        Index shared_face; ///< level n-1 index
        double w;
        double a;
    };

    int n = 0;
    std::vector<std::vector<Neighbor>> adjacency;
    std::vector<double> q;
    std::vector<double> degree;

    std::size_t size() const { return adjacency.size(); }

    double max_degree() const { return degree.empty() ? 0.0 : *std::max_element(degree.begin(), degree.end()); }
    double max_potential() const { return q.empty() ? 0.0 : *std::max_element(q.begin(), q.end()); }

    std::size_t max_neighbors() const
    {
        std::size_t out = 0;
        for (const auto& nb : adjacency) out = std::max(out, nb.size());
        return out;
    }

    /// Symmetric nonnegative kernel w as a sparse matrix.
    RealSparseMatrix kernel() const
    {
        std::vector<Eigen::Triplet<double>> trips;
        for (Index s = 0; s < adjacency.size(); ++s)
            for (const auto& nb : adjacency[s]) trips.emplace_back(static_cast<int>(s), static_cast<int>(nb.node), nb.w);
        RealSparseMatrix k(static_cast<int>(size()), static_cast<int>(size()));
        k.setFromTriplets(trips.begin(), trips.end());
        return k;
    }
};

inline LineComplex line_complex(const WeightedComplex& cx)
{
    const int n = cx.dimension();
    if (cx.size(n) == 0) throw InputError("line complex needs at least one top simplex");

    LineComplex lc;
    lc.n = n;
    const std::size_t N = cx.size(n);
    lc.adjacency.resize(N);
    lc.q.assign(N, 0.0);
    lc.degree.assign(N, 0.0);
    for (Index s = 0; s < N; ++s) {
        const double ms = cx.weight(n, s);
        for (Index t : cx.facets(n, s)) {
            const double mt = cx.weight(n - 1, t);
            lc.q[s] += ms / mt;
            for (const auto& c : cx.cofaces(n - 1, t)) {
                if (c.index == s) continue;
                const double mo = cx.weight(n, c.index);
                LineComplex::Neighbor nb{c.index, t, std::sqrt(ms * mo) / mt, mo / mt};
                lc.degree[s] += nb.w;
                lc.adjacency[s].push_back(nb);
            }
        }
        std::sort(lc.adjacency[s].begin(), lc.adjacency[s].end(),
                  [](const auto& x, const auto& y) { return x.node < y.node; });
    }
    return lc;
}

} // namespace hodge
