#pragma once

#include "hodge/spectral.hpp"

#include <array>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>
#include <thread>

namespace hodge {

// ================================================================
// Periodic cells
// ================================================================

using Shift = std::vector<int>;

struct EdgeOrbit {
    int tail = 0;
    int head = 0;
    Shift shift; ///< head sits in the cell translated by `shift`
    double m1 = 1.0;
};

/// Vertex orbit plus the translation of the cell it sits in.
struct CellVertex {
    int orbit = 0;
    Shift shift;
    auto operator<=>(const CellVertex&) const = default;
};

struct TriangleOrbit {
    std::array<CellVertex, 3> vertices;
    double m2 = 1.0;
};

/**
 * @brief Fundamental cell of a Z^d-periodic graph.
 *
 * Edge orbits are listed once per undirected orbit. Geometry is purely
 * combinatorial: integer translations, no coordinates.
 */
struct PeriodicCell {
    std::string name;
    int dim = 0;
    std::vector<double> m0; ///< one weight per vertex orbit
    std::vector<EdgeOrbit> edges;
    std::vector<TriangleOrbit> triangles;

    int num_vertices() const { return static_cast<int>(m0.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    /// Throws InputError on bad orbit references, wrong shift lengths or nonpositive weights.
    void validate() const
    {
        if (dim < 1) throw InputError("cell '" + name + "': dimension must be at least 1");
        if (m0.empty()) throw InputError("cell '" + name + "': no vertex orbits");
        for (double m : m0)
            if (!(m > 0.0)) throw InputError("cell '" + name + "': vertex weights must be positive");
        std::set<std::tuple<int, int, Shift>> seen;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            const std::string where = "cell '" + name + "' edge orbit " + std::to_string(i);
            if (e.tail < 0 || e.tail >= num_vertices() || e.head < 0 || e.head >= num_vertices())
                throw InputError(where + ": vertex orbit out of range");
            if (static_cast<int>(e.shift.size()) != dim) throw InputError(where + ": shift has wrong length");
            if (e.tail == e.head && std::all_of(e.shift.begin(), e.shift.end(), [](int s) { return s == 0; }))
                throw InputError(where + ": self-loop");
            if (!(e.m1 > 0.0)) throw InputError(where + ": weight must be positive");
            Shift neg(e.shift);
            for (int& s : neg) s = -s;
            if (seen.count({e.tail, e.head, e.shift}) || seen.count({e.head, e.tail, neg}))
                throw InputError(where + ": orbit listed twice");
            seen.insert({e.tail, e.head, e.shift});
        }
        for (std::size_t i = 0; i < triangles.size(); ++i)
            for (const auto& v : triangles[i].vertices)
                if (v.orbit < 0 || v.orbit >= num_vertices() || static_cast<int>(v.shift.size()) != dim)
                    throw InputError("cell '" + name + "' triangle orbit " + std::to_string(i) + ": bad vertex");
    }

    /// Coordination number of each vertex orbit.
    std::vector<int> degrees() const
    {
        std::vector<int> d(m0.size(), 0);
        for (const auto& e : edges) {
            ++d[static_cast<std::size_t>(e.tail)];
            ++d[static_cast<std::size_t>(e.head)];
        }
        return d;
    }

    /// Common degree, or -1 if the lattice is not regular.
    int degree() const
    {
        auto d = degrees();
        return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end() ? d.front() : -1;
    }
};

namespace detail {

inline Shift add(const Shift& a, const Shift& b)
{
    Shift out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

inline Shift sub(const Shift& a, const Shift& b)
{
    Shift out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

/// Neighbors of orbit v placed in cell 0, as (orbit, shift, edge orbit index).
inline std::vector<std::pair<CellVertex, int>> cell_neighbors(const PeriodicCell& cell, int v)
{
    std::vector<std::pair<CellVertex, int>> out;
    const Shift zero(static_cast<std::size_t>(cell.dim), 0);
    for (int i = 0; i < cell.num_edges(); ++i) {
        const auto& e = cell.edges[static_cast<std::size_t>(i)];
        if (e.tail == v) out.push_back({{e.head, e.shift}, i});
        if (e.head == v) out.push_back({{e.tail, sub(zero, e.shift)}, i});
    }
    return out;
}

/// Edge orbit joining a to b, with +1 if a is the tail and the head offset `shift` relative to a.
struct EdgeMatch {
    int orbit;
    double orientation;
};

inline std::optional<EdgeMatch> match_edge(const PeriodicCell& cell, const CellVertex& a, const CellVertex& b)
{
    const Shift rel = sub(b.shift, a.shift);
    const Shift neg = sub(a.shift, b.shift);
    for (int i = 0; i < cell.num_edges(); ++i) {
        const auto& e = cell.edges[static_cast<std::size_t>(i)];
        if (e.tail == a.orbit && e.head == b.orbit && e.shift == rel) return EdgeMatch{i, 1.0};
        if (e.tail == b.orbit && e.head == a.orbit && e.shift == neg) return EdgeMatch{i, -1.0};
    }
    return std::nullopt;
}

/// Translate so the smallest vertex sits in cell 0, then sort; a translation-invariant key.
inline std::array<CellVertex, 3> canonical_triangle(std::array<CellVertex, 3> t)
{
    std::optional<std::array<CellVertex, 3>> best;
    for (int pivot = 0; pivot < 3; ++pivot) {
        std::array<CellVertex, 3> c = t;
        const Shift base = t[static_cast<std::size_t>(pivot)].shift;
        for (auto& v : c) v.shift = sub(v.shift, base);
        std::sort(c.begin(), c.end());
        if (!best || c < *best) best = c;
    }
    return *best;
}

} // namespace detail

/// All 3-clique orbits of the periodic graph, each listed once, unit m2.
inline std::vector<TriangleOrbit> derive_triangle_orbits(const PeriodicCell& cell)
{
    std::set<std::array<CellVertex, 3>> found;
    const Shift zero(static_cast<std::size_t>(cell.dim), 0);
    for (int v = 0; v < cell.num_vertices(); ++v) {
        auto nb = detail::cell_neighbors(cell, v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (detail::match_edge(cell, nb[i].first, nb[j].first))
                    found.insert(detail::canonical_triangle({CellVertex{v, zero}, nb[i].first, nb[j].first}));
    }
    std::vector<TriangleOrbit> out;
    for (const auto& t : found) out.push_back({t, 1.0});
    return out;
}

inline const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names{"line",  "square", "triangular", "cubic",      "bcc",
                                                "fcc",   "kagome", "hypercubic4", "diamond"};
    return names;
}

/// Catalog lattice with unit weights; triangle orbits are filled in wherever 3-cliques exist.
inline PeriodicCell catalog(std::string_view name)
{
    PeriodicCell c;
    c.name = std::string(name);
    auto unit_vectors = [&](int d) {
        c.dim = d;
        c.m0 = {1.0};
        for (int i = 0; i < d; ++i) {
            Shift s(static_cast<std::size_t>(d), 0);
            s[static_cast<std::size_t>(i)] = 1;
            c.edges.push_back({0, 0, s});
        }
    };
    if (name == "line") {
        unit_vectors(1);
    } else if (name == "square") {
        unit_vectors(2);
    } else if (name == "cubic") {
        unit_vectors(3);
    } else if (name == "hypercubic4") {
        unit_vectors(4);
    } else if (name == "triangular") {
        unit_vectors(2);
        c.edges.push_back({0, 0, {-1, 1}});
    } else if (name == "bcc") {
        // primitive cell: the eight neighbors are ±a1, ±a2, ±a3, ±(a1+a2+a3)
        unit_vectors(3);
        c.edges.push_back({0, 0, {1, 1, 1}});
    } else if (name == "fcc") {
        // primitive cell: ±a_i and ±(a_i - a_j)
        unit_vectors(3);
        c.edges.push_back({0, 0, {1, -1, 0}});
        c.edges.push_back({0, 0, {0, 1, -1}});
        c.edges.push_back({0, 0, {1, 0, -1}});
    } else if (name == "kagome") {
        c.dim = 2;
        c.m0 = {1.0, 1.0, 1.0};
        c.edges = {{0, 1, {0, 0}}, {0, 2, {0, 0}}, {1, 2, {0, 0}},
                   {1, 0, {1, 0}}, {2, 0, {0, 1}}, {1, 2, {1, -1}}};
    } else if (name == "diamond") {
        c.dim = 3;
        c.m0 = {1.0, 1.0};
        c.edges = {{0, 1, {0, 0, 0}}, {0, 1, {-1, 0, 0}}, {0, 1, {0, -1, 0}}, {0, 1, {0, 0, -1}}};
    } else {
        std::string known;
        for (const auto& n : catalog_names()) known += (known.empty() ? "" : ", ") + n;
        throw InputError("unknown lattice '" + std::string(name) + "' (known: " + known + ")");
    }
    c.triangles = derive_triangle_orbits(c);
    return c;
}

/// Bipartite test on the infinite graph: a side per orbit and a character Z^d -> Z/2 with every edge crossing.
inline bool is_bipartite(const PeriodicCell& cell)
{
    for (unsigned mask = 0; mask < (1u << cell.dim); ++mask) {
        auto chi = [&](const Shift& s) {
            int p = 0;
            for (int a = 0; a < cell.dim; ++a) p += (mask >> a & 1u) ? s[static_cast<std::size_t>(a)] : 0;
            return p & 1;
        };
        std::vector<int> side(static_cast<std::size_t>(cell.num_vertices()), -1);
        bool ok = true;
        for (int root = 0; root < cell.num_vertices() && ok; ++root) {
            if (side[static_cast<std::size_t>(root)] >= 0) continue;
            side[static_cast<std::size_t>(root)] = 0;
            std::vector<int> stack{root};
            while (!stack.empty() && ok) {
                const int v = stack.back();
                stack.pop_back();
                for (const auto& [w, e] : detail::cell_neighbors(cell, v)) {
                    const int want = (side[static_cast<std::size_t>(v)] + 1 + chi(w.shift)) & 1;
                    int& sw = side[static_cast<std::size_t>(w.orbit)];
                    if (sw < 0) {
                        sw = want;
                        stack.push_back(w.orbit);
                    } else if (sw != want) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (ok) return true;
    }
    return false;
}

// ================================================================
// Bloch symbols
// ================================================================

struct BlochOptions {
    Flavor flavor = Flavor::sym;
    bool include_up = false; ///< add the triangle term b1^H b1
};

struct BlochSymbol {
    std::vector<double> theta;
    HermitianMatrix matrix;
};

namespace detail {

inline Scalar phase(std::span<const double> theta, const Shift& g)
{
    double a = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) a += theta[i] * g[i];
    return std::polar(1.0, a);
}

} // namespace detail

/// Twisted vertex-to-edge incidence of the normalized d^0, N1 x N0.
inline DenseMatrix incidence0(const PeriodicCell& cell, std::span<const double> theta, Flavor flavor)
{
    DenseMatrix b = DenseMatrix::Zero(cell.num_edges(), cell.num_vertices());
    const double tail_sign = flavor == Flavor::skew ? -1.0 : 1.0;
    for (int i = 0; i < cell.num_edges(); ++i) {
        const auto& e = cell.edges[static_cast<std::size_t>(i)];
        const double s = std::sqrt(e.m1);
        b(i, e.head) += s * detail::phase(theta, e.shift) / std::sqrt(cell.m0[static_cast<std::size_t>(e.head)]);
        b(i, e.tail) += s * tail_sign / std::sqrt(cell.m0[static_cast<std::size_t>(e.tail)]);
    }
    return b;
}

/// Twisted edge-to-triangle incidence of the normalized d^1, N2 x N1.
inline DenseMatrix incidence1(const PeriodicCell& cell, std::span<const double> theta, Flavor flavor)
{
    DenseMatrix b = DenseMatrix::Zero(static_cast<Eigen::Index>(cell.triangles.size()), cell.num_edges());
    for (std::size_t t = 0; t < cell.triangles.size(); ++t) {
        const auto& tri = cell.triangles[t];
        for (int omit = 0; omit < 3; ++omit) {
            const auto& a = tri.vertices[static_cast<std::size_t>(omit == 0 ? 1 : 0)];
            const auto& c = tri.vertices[static_cast<std::size_t>(omit == 2 ? 1 : 2)];
            auto m = detail::match_edge(cell, a, c);
            if (!m)
                throw InputError("cell '" + cell.name + "': triangle orbit " + std::to_string(t) +
                                 " uses a pair that is not an edge");
            const auto& e = cell.edges[static_cast<std::size_t>(m->orbit)];
            // the matched edge starts in the cell of its tail
            const Shift& start = m->orientation > 0 ? a.shift : c.shift;
            double sign = 1.0;
            if (flavor == Flavor::skew) sign = (omit % 2 ? -1.0 : 1.0) * m->orientation;
            b(static_cast<Eigen::Index>(t), m->orbit) += sign * std::sqrt(tri.m2 / e.m1) * detail::phase(theta, start);
        }
    }
    return b;
}

/// σ(θ) = b0 b0^H + b1^H b1 on the edge orbits.
inline BlochSymbol symbol(const PeriodicCell& cell, std::span<const double> theta, BlochOptions opt = {})
{
    if (static_cast<int>(theta.size()) != cell.dim)
        throw std::invalid_argument("symbol: theta has " + std::to_string(theta.size()) + " components, lattice rank is " +
                                    std::to_string(cell.dim));
    DenseMatrix b0 = incidence0(cell, theta, opt.flavor);
    DenseMatrix s = b0 * b0.adjoint();
    if (opt.include_up && !cell.triangles.empty()) {
        DenseMatrix b1 = incidence1(cell, theta, opt.flavor);
        s += b1.adjoint() * b1;
    }
    return {std::vector<double>(theta.begin(), theta.end()), HermitianMatrix(s)};
}

// ================================================================
// Brillouin-zone scan
// ================================================================

struct ScanOptions {
    int grid = 0;            ///< points per axis; 0 picks 64 for d <= 2 and 32 otherwise
    double refine_tol = 1e-9;
    int max_refinements = 60;
    unsigned threads = 0;    ///< 0 reads HODGE_THREADS, else hardware concurrency
    BlochOptions bloch{};
};

struct ScanResult {
    double sup_norm = 0.0;
    double coarse_max = 0.0;
    std::vector<double> argmax;
    double min_eigenvalue = 0.0; ///< over the coarse grid
    int grid = 0;
    int refinements = 0;
    std::size_t evaluations = 0;
};

inline int default_grid(int dim) { return dim <= 2 ? 64 : 32; }

inline unsigned worker_count(unsigned requested)
{
    if (requested) return requested;
    if (const char* env = std::getenv("HODGE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

struct PointValue {
    double top = -std::numeric_limits<double>::infinity();
    double bottom = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
};

/// Evaluates points [0, count) given by `at`, merged by max with ties to the smaller index.
template <class At>
PointValue scan_points(const PeriodicCell& cell, std::size_t count, const At& at, const BlochOptions& opt,
                       unsigned threads)
{
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, count / 64)));
    std::vector<PointValue> partial(std::max(1u, threads));
    auto work = [&](unsigned w) {
        PointValue& pv = partial[w];
        std::vector<double> theta(static_cast<std::size_t>(cell.dim));
        for (std::size_t i = w; i < count; i += partial.size()) {
            at(i, theta);
            auto ev = eig_hermitian(symbol(cell, theta, opt).matrix).eigenvalues;
            if (ev.back() > pv.top) {
                pv.top = ev.back();
                pv.index = i;
            }
            pv.bottom = std::min(pv.bottom, ev.front());
        }
    };
    if (partial.size() == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < partial.size(); ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    PointValue out;
    for (const auto& pv : partial) {
        if (pv.top > out.top || (pv.top == out.top && pv.index < out.index)) {
            out.top = pv.top;
            out.index = pv.index;
        }
        out.bottom = std::min(out.bottom, pv.bottom);
    }
    return out;
}

} // namespace detail

/**
 * @brief sup over the Brillouin zone of the top eigenvalue of σ(θ).
 *
 * Coarse scan of grid^d points 2πj/grid, then nested 5^d grids around the
 * current argmax, halving the box each pass until the estimate moves by
 * less than refine_tol. The result never drops below the coarse maximum.
 */
inline ScanResult sup_norm(const PeriodicCell& cell, ScanOptions opt = {})
{
    cell.validate();
    const int d = cell.dim;
    const int grid = opt.grid ? opt.grid : default_grid(d);
    if (grid < 8) throw InputError("Brillouin grid must have at least 8 points per axis, got " + std::to_string(grid));
    const unsigned threads = worker_count(opt.threads);
    const double two_pi = 2.0 * std::numbers::pi;

    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= static_cast<std::size_t>(grid);
    auto coarse_at = [&](std::size_t idx, std::vector<double>& theta) {
        for (int a = 0; a < d; ++a) {
            theta[static_cast<std::size_t>(a)] = two_pi * static_cast<double>(idx % static_cast<std::size_t>(grid)) / grid;
            idx /= static_cast<std::size_t>(grid);
        }
    };
    auto coarse = detail::scan_points(cell, count, coarse_at, opt.bloch, threads);

    ScanResult r;
    r.grid = grid;
    r.coarse_max = r.sup_norm = coarse.top;
    r.min_eigenvalue = coarse.bottom;
    r.evaluations = count;
    r.argmax.assign(static_cast<std::size_t>(d), 0.0);
    coarse_at(coarse.index, r.argmax);

    constexpr int sub = 5;
    std::size_t sub_count = 1;
    for (int i = 0; i < d; ++i) sub_count *= sub;
    double half = two_pi / grid;
    for (int pass = 0; pass < opt.max_refinements; ++pass) {
        const std::vector<double> center = r.argmax;
        auto local_at = [&](std::size_t idx, std::vector<double>& theta) {
            for (int a = 0; a < d; ++a) {
                const int j = static_cast<int>(idx % sub) - sub / 2;
                theta[static_cast<std::size_t>(a)] = center[static_cast<std::size_t>(a)] + half * j / (sub / 2);
                idx /= sub;
            }
        };
        auto local = detail::scan_points(cell, sub_count, local_at, opt.bloch, 1);
        r.evaluations += sub_count;
        ++r.refinements;
        const double gain = local.top - r.sup_norm;
        if (gain > 0) {
            r.sup_norm = local.top;
            local_at(local.index, r.argmax);
        }
        half *= 0.5;
        if (gain < opt.refine_tol && half < 1e-6) break;
    }
    return r;
}

// ================================================================
// Table rows
// ================================================================

struct VariantValue {
    BlochOptions options;
    double value = 0.0;
};

struct LatticeRow {
    std::string lattice;
    int degree = 0;
    int universal = 0; ///< 4(d-1)
    int line_degree = 0; ///< 2(d-1)
    double bloch = 0.0; ///< sym flavor, edge skeleton
    double ratio = 0.0; ///< universal / bloch
    std::vector<double> argmax;
    std::vector<VariantValue> variants; ///< every flavor / up-part combination
};

inline std::string variant_name(const BlochOptions& o)
{
    return std::string(to_string(o.flavor)) + (o.include_up ? "+triangles" : "");
}

/// One row per lattice; `bloch` uses the sym flavor without the triangle term, the other variants are recorded.
inline std::vector<LatticeRow> compare_table(const std::vector<std::string>& lattices, ScanOptions opt = {})
{
    std::vector<LatticeRow> rows;
    for (const auto& name : lattices) {
        auto cell = catalog(name);
        LatticeRow row;
        row.lattice = name;
        row.degree = cell.degree();
        row.universal = 4 * (row.degree - 1);
        row.line_degree = 2 * (row.degree - 1);
        for (Flavor f : {Flavor::sym, Flavor::skew})
            for (bool up : {false, true}) {
                if (up && cell.triangles.empty()) continue;
                ScanOptions o = opt;
                o.bloch = {f, up};
                auto s = sup_norm(cell, o);
                row.variants.push_back({o.bloch, s.sup_norm});
                if (f == Flavor::sym && !up) {
                    row.bloch = s.sup_norm;
                    row.argmax = s.argmax;
                }
            }
        row.ratio = row.universal / row.bloch;
        rows.push_back(std::move(row));
    }
    return rows;
}

// ================================================================
// Finite tori
// ================================================================

/// Vertex id of orbit v in cell R of the N^d torus.
inline Vertex torus_vertex(const PeriodicCell& cell, int N, int v, const Shift& R)
{
    Vertex id = 0;
    for (int a = cell.dim - 1; a >= 0; --a) id = id * N + ((R[static_cast<std::size_t>(a)] % N) + N) % N;
    return id * cell.num_vertices() + v;
}

/**
 * @brief Weighted complex of the N^d torus quotient.
 *
 * n = 1 gives the graph; n = 2 adds the triangle orbits with their m2.
 * N must be large enough that no orbit wraps onto itself.
 */
inline WeightedComplex torus_complex(const PeriodicCell& cell, int N, int n = 1)
{
    cell.validate();
    if (N < 3) throw InputError("torus size must be at least 3");
    WeightedGraph g;
    std::size_t cells = 1;
    for (int a = 0; a < cell.dim; ++a) cells *= static_cast<std::size_t>(N);
    std::vector<Shift> R_all;
    for (std::size_t idx = 0; idx < cells; ++idx) {
        Shift R(static_cast<std::size_t>(cell.dim));
        std::size_t t = idx;
        for (int a = 0; a < cell.dim; ++a) {
            R[static_cast<std::size_t>(a)] = static_cast<int>(t % static_cast<std::size_t>(N));
            t /= static_cast<std::size_t>(N);
        }
        R_all.push_back(R);
        for (int v = 0; v < cell.num_vertices(); ++v) g.add_vertex(torus_vertex(cell, N, v, R), cell.m0[static_cast<std::size_t>(v)]);
    }
    std::size_t expected_edges = 0;
    for (const auto& R : R_all)
        for (const auto& e : cell.edges) {
            g.set_edge(torus_vertex(cell, N, e.tail, R), torus_vertex(cell, N, e.head, detail::add(R, e.shift)), e.m1);
            ++expected_edges;
        }
    if (g.num_edges() != expected_edges) throw InputError("torus of size " + std::to_string(N) + " is too small for cell '" + cell.name + "'");
    std::map<Simplex, double> table;
    for (const auto& R : R_all)
        for (const auto& t : cell.triangles) {
            Simplex s;
            for (const auto& v : t.vertices) s.push_back(torus_vertex(cell, N, v.orbit, detail::add(R, v.shift)));
            std::sort(s.begin(), s.end());
            table[s] = t.m2;
        }
    auto cx = build_complex(g, n, explicit_weights(table));
    if (n >= 2 && cx.size(2) != table.size())
        throw InputError("torus of size " + std::to_string(N) + " has " + std::to_string(cx.size(2)) +
                         " triangles, expected " + std::to_string(table.size()));
    return cx;
}

/// Union of the spectra of σ(2πk/N) over k in Z_N^d, ascending.
inline std::vector<double> torus_symbol_spectrum(const PeriodicCell& cell, int N, BlochOptions opt = {})
{
    std::size_t cells = 1;
    for (int a = 0; a < cell.dim; ++a) cells *= static_cast<std::size_t>(N);
    std::vector<double> out;
    std::vector<double> theta(static_cast<std::size_t>(cell.dim));
    for (std::size_t idx = 0; idx < cells; ++idx) {
        std::size_t t = idx;
        for (int a = 0; a < cell.dim; ++a) {
            theta[static_cast<std::size_t>(a)] = 2.0 * std::numbers::pi * static_cast<double>(t % static_cast<std::size_t>(N)) / N;
            t /= static_cast<std::size_t>(N);
        }
        auto ev = eig_hermitian(symbol(cell, theta, opt).matrix).eigenvalues;
        out.insert(out.end(), ev.begin(), ev.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hodge
