#pragma once

#include "hodge/spectral.hpp"

#include <deque>
#include <map>
#include <optional>

#include <Eigen/LU>

namespace hodge {

/// Vertex colors in 1..p.
struct Coloring {
    std::map<Vertex, int> colors;
    int p = 0;

    int color(Vertex v) const
    {
        auto it = colors.find(v);
        if (it == colors.end()) throw InputError("vertex " + std::to_string(v) + " has no color");
        return it->second;
    }

    /// Throws InputError naming the first monochromatic edge or missing/out-of-range color.
    void validate(const WeightedGraph& g) const
    {
        for (Vertex v : g.vertices()) {
            int c = color(v);
            if (c < 1 || c > p)
                throw InputError("vertex " + std::to_string(v) + " has color " + std::to_string(c) + " outside 1.." +
                                 std::to_string(p));
        }
        for (auto [u, v] : g.edges())
            if (color(u) == color(v))
                throw InputError("improper coloring: edge {" + std::to_string(u) + "," + std::to_string(v) +
                                 "} has both endpoints colored " + std::to_string(color(u)));
    }
};

struct GreedyColoring {
    std::optional<Coloring> coloring;
    std::string message; ///< why greedy stopped, when it failed
};

/// BFS order from the smallest uncolored id, smallest free color. Failure is not a proof of non-colorability.
inline GreedyColoring greedy_coloring(const WeightedGraph& g, int p)
{
    Coloring c;
    c.p = p;
    for (Vertex root : g.vertices()) {
        if (c.colors.count(root)) continue;
        std::deque<Vertex> queue{root};
        std::map<Vertex, bool> seen{{root, true}};
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            std::vector<bool> used(static_cast<std::size_t>(p) + 2, false);
            for (Vertex u : g.neighbors(v)) {
                auto it = c.colors.find(u);
                if (it != c.colors.end() && it->second <= p) used[static_cast<std::size_t>(it->second)] = true;
                if (!seen[u]) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
            int col = 1;
            while (col <= p && used[static_cast<std::size_t>(col)]) ++col;
            if (col > p)
                return {std::nullopt, "greedy coloring needs more than " + std::to_string(p) + " colors at vertex " +
                                          std::to_string(v)};
            c.colors[v] = col;
        }
    }
    return {c, ""};
}

/// S(σ) = (-1)^{ε(π_c)} where π_c sorts the colors of the tuple ascending.
inline double color_sign(std::span<const Vertex> tuple, const Coloring& c)
{
    std::vector<int> cols;
    cols.reserve(tuple.size());
    for (Vertex v : tuple) cols.push_back(c.color(v));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t j = i + 1; j < cols.size(); ++j)
            if (cols[i] == cols[j])
                throw InputError("improper coloring: " + std::to_string(tuple[i]) + " and " + std::to_string(tuple[j]) +
                                 " share color " + std::to_string(cols[i]));
    return parity_sign(sort_parity(std::span<const int>(cols)));
}

/// Diagonal of U_k on canonical k-simplices.
inline RealVector unitary_diagonal(const WeightedComplex& cx, int k, const Coloring& c)
{
    RealVector s(static_cast<Eigen::Index>(cx.size(k)));
    for (Index i = 0; i < cx.size(k); ++i) s[static_cast<Eigen::Index>(i)] = color_sign(cx.simplex(k, i), c);
    return s;
}

/// (U_k f)(σ) = S(σ) f(σ)
inline Cochain unitary_apply(const WeightedComplex& cx, const Cochain& f, const Coloring& c)
{
    Cochain out = f;
    out.values = unitary_diagonal(cx, f.degree, c).cast<Scalar>().asDiagonal() * f.values;
    return out;
}

/**
 * Face parity: with π_c the color sort of σ and π_{c,i} that of σ with
 * vertex i removed, returns whether ε(π_{c,i}) ≡ ε(π_c) + i (mod 2).
 */
inline bool parity_check(std::span<const Vertex> simplex, std::size_t i, const Coloring& c)
{
    if (i >= simplex.size()) throw std::out_of_range("parity_check: omitted index out of range");
    Simplex face;
    for (std::size_t j = 0; j < simplex.size(); ++j)
        if (j != i) face.push_back(simplex[j]);
    const int full = color_sign(simplex, c) < 0;
    const int part = color_sign(face, c) < 0;
    return ((part - full - static_cast<int>(i)) & 1) == 0;
}

/// Number of vertices of the simplex whose color is below that of vertex i.
inline int color_rank(std::span<const Vertex> simplex, std::size_t i, const Coloring& c)
{
    int r = 0;
    const int ci = c.color(simplex[i]);
    for (Vertex v : simplex) r += c.color(v) < ci;
    return r;
}

/// ε(π_{c,i}) ≡ ε(π_c) + i + rank_i (mod 2), which holds for every proper coloring.
inline bool parity_with_rank(std::span<const Vertex> simplex, std::size_t i, const Coloring& c)
{
    Simplex face;
    for (std::size_t j = 0; j < simplex.size(); ++j)
        if (j != i) face.push_back(simplex[j]);
    const int full = color_sign(simplex, c) < 0;
    const int part = color_sign(face, c) < 0;
    return ((part - full - static_cast<int>(i) - color_rank(simplex, i, c)) & 1) == 0;
}

struct ParitySummary {
    std::size_t checked = 0;
    std::size_t failed = 0;           ///< faces where the plain relation fails
    std::size_t rank_relation_failed = 0;
};

inline ParitySummary parity_check_all(const WeightedComplex& cx, const Coloring& c)
{
    ParitySummary s;
    for (int k = 1; k <= cx.dimension(); ++k)
        for (const auto& sigma : cx.simplices(k))
            for (std::size_t i = 0; i < sigma.size(); ++i) {
                ++s.checked;
                s.failed += !parity_check(sigma, i, c);
                s.rank_relation_failed += !parity_with_rank(sigma, i, c);
            }
    return s;
}

// ================================================================
// Intertwining residuals
// ================================================================

struct IntertwineRecord {
    int degree = 0;
    double d_residual = 0.0;          ///< max|U_k d_skew - d_sym U_{k-1}|, k >= 1
    double delta_residual = 0.0;      ///< max|U_{k-1} δ_skew - δ_sym U_k|, k >= 1
    double laplacian_residual = 0.0;  ///< max|U_k Δ_skew U_k^{-1} - Δ_sym|
    double normalized_residual = 0.0; ///< same for the normalized blocks
    double spectrum_gap = 0.0;        ///< max |λ_i(Δ_skew) - λ_i(Δ_sym)|, sorted
    std::size_t kernel_skew = 0;
    std::size_t kernel_sym = 0;
    std::vector<double> spectrum_skew;
    std::vector<double> spectrum_sym;
};

namespace detail {

inline double max_abs_dense(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline std::size_t kernel_dim(const std::vector<double>& ev, double scale)
{
    std::size_t n = 0;
    for (double v : ev) n += std::abs(v) <= 1e-9 * std::max(1.0, scale);
    return n;
}

} // namespace detail

/**
 * Per-degree residuals of the skew/sym conjugation by U. Spectra use the
 * Jacobi solver on the normalized blocks.
 */
inline std::vector<IntertwineRecord> intertwine_residuals(const WeightedComplex& cx, const Coloring& c)
{
    c.validate(cx.graph());
    std::vector<IntertwineRecord> out;
    std::vector<DenseMatrix> U;
    for (int k = 0; k <= cx.dimension(); ++k) U.push_back(unitary_diagonal(cx, k, c).cast<Scalar>().asDiagonal());

    for (int k = 0; k <= cx.dimension(); ++k) {
        IntertwineRecord r;
        r.degree = k;
        if (k >= 1) {
            DenseMatrix ds = coboundary(cx, k, Flavor::skew).dense();
            DenseMatrix dy = coboundary(cx, k, Flavor::sym).dense();
            r.d_residual = detail::max_abs_dense(U[k] * ds - dy * U[k - 1]);
            DenseMatrix es = adjoint(coboundary(cx, k, Flavor::skew)).dense();
            DenseMatrix ey = adjoint(coboundary(cx, k, Flavor::sym)).dense();
            r.delta_residual = detail::max_abs_dense(U[k - 1] * es - ey * U[k]);
        }
        DenseMatrix ls = laplacian_block(cx, k, Flavor::skew).dense();
        DenseMatrix ly = laplacian_block(cx, k, Flavor::sym).dense();
        r.laplacian_residual = detail::max_abs_dense(U[k] * ls * U[k] - ly); // U_k is its own inverse
        DenseMatrix ns = normalized_block(cx, k, Flavor::skew).dense();
        DenseMatrix ny = normalized_block(cx, k, Flavor::sym).dense();
        r.normalized_residual = detail::max_abs_dense(U[k] * ns * U[k] - ny);
        if (cx.size(k) > 0) {
            r.spectrum_skew = eig_hermitian(HermitianMatrix(ns)).eigenvalues;
            r.spectrum_sym = eig_hermitian(HermitianMatrix(ny)).eigenvalues;
            for (std::size_t i = 0; i < r.spectrum_skew.size(); ++i)
                r.spectrum_gap = std::max(r.spectrum_gap, std::abs(r.spectrum_skew[i] - r.spectrum_sym[i]));
            const double scale = std::max(std::abs(r.spectrum_skew.back()), std::abs(r.spectrum_sym.back()));
            r.kernel_skew = detail::kernel_dim(r.spectrum_skew, scale);
            r.kernel_sym = detail::kernel_dim(r.spectrum_sym, scale);
        }
        out.push_back(std::move(r));
    }
    return out;
}

inline double max_intertwine_residual(const std::vector<IntertwineRecord>& recs)
{
    double m = 0.0;
    for (const auto& r : recs)
        m = std::max({m, r.d_residual, r.delta_residual, r.laplacian_residual, r.normalized_residual});
    return m;
}

} // namespace hodge
