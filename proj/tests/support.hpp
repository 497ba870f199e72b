#pragma once

#include "hodge/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace testsupport {

using namespace hodge;

// ---------------------------------------------------------------------------
// Seeded generators

inline std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), 0x5eedu};
    return std::mt19937_64(seq);
}

struct GraphSpec {
    int max_vertices = 12;
    double min_p = 0.3;
    double max_p = 0.8;
    bool unit_weights = false;
};

inline WeightedGraph random_graph(std::uint64_t seed, GraphSpec spec = {})
{
    auto rng = rng_for(seed, 1);
    std::uniform_int_distribution<int> nv(3, spec.max_vertices);
    std::uniform_real_distribution<double> p(spec.min_p, spec.max_p);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    WeightedGraph g;
    const int n = nv(rng);
    const double prob = p(rng);
    for (int v = 0; v < n; ++v) g.add_vertex(v, spec.unit_weights ? 1.0 : w(rng));
    std::bernoulli_distribution coin(prob);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.set_edge(u, v, spec.unit_weights ? 1.0 : w(rng));
    return g;
}

/// Deterministic positive weight per simplex, independent of enumeration order.
inline WeightRule hashed_weights(std::uint64_t seed, double lo = 0.5, double hi = 2.0)
{
    return [seed, lo, hi](std::span<const Vertex> s) {
        std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL;
        for (Vertex v : s) h = (h ^ static_cast<std::uint64_t>(v + 1)) * 0x100000001B3ULL;
        std::mt19937_64 r(h);
        return std::uniform_real_distribution<double>(lo, hi)(r);
    };
}

struct RandomInstance {
    std::uint64_t seed;
    WeightedComplex cx;
};

inline RandomInstance random_complex(std::uint64_t seed, GraphSpec spec = {})
{
    auto rng = rng_for(seed, 2);
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    auto g = random_graph(seed, spec);
    return {seed, build_complex(g, n, spec.unit_weights ? constant_weight(1.0) : hashed_weights(seed))};
}

inline WeightedGraph complete_graph(int n, double m0 = 1.0, double m1 = 1.0)
{
    WeightedGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v, m0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_edge(u, v, m1);
    return g;
}

inline WeightedGraph cycle_graph(int n)
{
    WeightedGraph g;
    for (int v = 0; v < n; ++v) g.add_vertex(v, 1.0);
    for (int v = 0; v < n; ++v) g.set_edge(v, (v + 1) % n, 1.0);
    return g;
}

/// N x M periodic square grid; vertex (i, j) has id i*M + j.
inline WeightedGraph torus_grid(int N, int M)
{
    WeightedGraph g;
    auto id = [M](int i, int j) { return static_cast<Vertex>(i * M + j); };
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < M; ++j) g.add_vertex(id(i, j), 1.0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < M; ++j) {
            g.set_edge(id(i, j), id((i + 1) % N, j), 1.0);
            g.set_edge(id(i, j), id(i, (j + 1) % M), 1.0);
        }
    return g;
}

/// Random complex Hermitian matrix with entries of order 1.
inline DenseMatrix random_hermitian(std::uint64_t seed, int n)
{
    auto rng = rng_for(seed, 3);
    std::normal_distribution<double> g;
    DenseMatrix a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = Scalar(g(rng), g(rng));
    return 0.5 * (a + a.adjoint());
}

inline Vector random_vector(std::uint64_t seed, Eigen::Index n, std::uint64_t stream = 4)
{
    auto rng = rng_for(seed, stream);
    std::normal_distribution<double> g;
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = Scalar(g(rng), g(rng));
    return v;
}

// ---------------------------------------------------------------------------
// Oracles

/// All (k+1)-cliques by exhaustive subset search.
inline std::set<Simplex> brute_force_cliques(const WeightedGraph& g, int k)
{
    std::set<Simplex> out;
    auto vs = g.vertices();
    const std::size_t n = vs.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) != k + 1) continue;
        Simplex s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(vs[i]);
        bool clique = true;
        for (std::size_t a = 0; a < s.size() && clique; ++a)
            for (std::size_t b = a + 1; b < s.size() && clique; ++b) clique = g.adjacent(s[a], s[b]);
        if (clique) out.insert(s);
    }
    return out;
}

/// (1/(k+1)!) sum over all ordered tuples of m_k f conj(g), evaluating each ordering.
inline Scalar ordered_inner_product(const WeightedComplex& cx, const Cochain& f, const Cochain& g)
{
    const int k = f.degree;
    Scalar s = 0.0;
    double fact = 1.0;
    for (int i = 2; i <= k + 1; ++i) fact *= i;
    for (Index i = 0; i < cx.size(k); ++i) {
        Simplex t = cx.simplex(k, i);
        do {
            s += cx.weight(k, i) * evaluate(cx, f, t) * std::conj(evaluate(cx, g, t));
        } while (std::next_permutation(t.begin(), t.end()));
    }
    return s / fact;
}

/// M_dom^{-1} A^H M_cod assembled densely.
inline DenseMatrix dense_adjoint(const MetricOperator& op)
{
    DenseMatrix a = op.dense();
    DenseMatrix mdom = op.domain_metric.diag.cast<Scalar>().asDiagonal();
    DenseMatrix mcod = op.codomain_metric.diag.cast<Scalar>().asDiagonal();
    return mdom.inverse() * a.adjoint() * mcod;
}

/// Eigenvalues (ascending) of a matrix similar to a Hermitian one via M^{1/2}.
inline std::vector<double> eigen_oracle(const DenseMatrix& h)
{
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

inline std::vector<double> block_spectrum_oracle(const MetricOperator& op)
{
    return eigen_oracle(DenseMatrix(op.orthonormal_matrix()));
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double out = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) out = std::max(out, std::abs(a[i] - b[i]));
    return out;
}

inline double max_abs_dense(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/**
 * Central tetrahedron {0,1,2,3} with apex 4+j glued across facet j (the facet
 * omitting vertex j). Weights: m3(center) = m_center, m3(apex) = 1, m2(facet j)
 * = face_weights[j], all other weights 1.
 */
inline WeightedComplex tetra_star(double m_center = 1.0, std::array<double, 4> face_weights = {1, 1, 1, 1})
{
    WeightedGraph g;
    for (int v = 0; v < 8; ++v) g.add_vertex(v, 1.0);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.set_edge(u, v, 1.0);
    std::map<Simplex, double> table{{{0, 1, 2, 3}, m_center}};
    for (int j = 0; j < 4; ++j) {
        Simplex face;
        for (int v = 0; v < 4; ++v)
            if (v != j) {
                face.push_back(v);
                g.set_edge(v, 4 + j, 1.0);
            }
        table[face] = face_weights[static_cast<std::size_t>(j)];
    }
    return build_complex(g, 3, explicit_weights(table));
}

} // namespace testsupport
