#pragma once

#include "hodge/spectral.hpp"

#include <boost/rational.hpp>

#include <cctype>
#include <limits>
#include <optional>

namespace hodge {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r)
{
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Exact value of a decimal literal such as "0.9", "-1.25" or "2.5e-1".
inline Rational parse_decimal(std::string_view text)
{
    auto fail = [&] { return InputError("not a decimal number: '" + std::string(text) + "'"); };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    std::int64_t mant = 0;
    int scale = 0, digits = 0;
    bool dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' && !dot) {
            dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) break;
        if (mant > (std::numeric_limits<std::int64_t>::max() - 9) / 10) throw fail();
        mant = mant * 10 + (c - '0');
        ++digits;
        if (dot) ++scale;
    }
    if (digits == 0) throw fail();
    int exp10 = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::string rest(text.substr(i + 1));
        std::size_t used = 0;
        try {
            exp10 = std::stoi(rest, &used);
        } catch (const std::exception&) {
            throw fail();
        }
        if (used != rest.size()) throw fail();
        i = text.size();
    }
    if (i != text.size()) throw fail();
    exp10 -= scale;
    if (exp10 < -18 || exp10 > 18) throw fail();
    std::int64_t pow10 = 1;
    for (int e = 0; e < std::abs(exp10); ++e) pow10 *= 10;
    Rational r = exp10 >= 0 ? Rational(mant) * pow10 : Rational(mant, pow10);
    return neg ? -r : r;
}

// ================================================================
// Comparability constants
// ================================================================

/// c0 <= m0 <= C0 and c1 <= m1 <= C1, kept exact.
struct ComparabilityConstants {
    Rational c0{1}, C0{1}, c1{1}, C1{1};

    void validate() const
    {
        if (!(c0 > 0 && c0 <= C0 && c1 > 0 && c1 <= C1))
            throw InputError("comparability constants need 0 < c0 <= C0 and 0 < c1 <= C1");
    }

    static ComparabilityConstants parse(std::string_view c0, std::string_view C0, std::string_view c1, std::string_view C1)
    {
        ComparabilityConstants out{parse_decimal(c0), parse_decimal(C0), parse_decimal(c1), parse_decimal(C1)};
        out.validate();
        return out;
    }
};

/// C_w = 2 (C1/c1) max{1, C0/c0}
inline Rational weighted_constant(const ComparabilityConstants& c)
{
    c.validate();
    return Rational(2) * (c.C1 / c.c1) * std::max(Rational(1), c.C0 / c.c0);
}

/// Adjacency prefactor C' = C1/c1.
inline Rational adjacency_constant(const ComparabilityConstants& c)
{
    c.validate();
    return c.C1 / c.c1;
}

/// Weighted line-graph bound C_w * Δ(L) for a d-regular graph, where Δ(L) = 2(d-1).
inline Rational weighted_regular_bound(const ComparabilityConstants& c, int d)
{
    if (d < 1) throw InputError("regular degree must be positive");
    return weighted_constant(c) * Rational(2 * (d - 1));
}

/// Extremes of m0 and m1 over a graph as double-valued constants.
struct ObservedComparability {
    double c0 = 0, C0 = 0, c1 = 0, C1 = 0;

    double weighted_constant() const { return 2.0 * (C1 / c1) * std::max(1.0, C0 / c0); }
};

inline ObservedComparability observed_comparability(const WeightedGraph& g)
{
    ObservedComparability o;
    o.c0 = o.c1 = std::numeric_limits<double>::infinity();
    for (Vertex v : g.vertices()) {
        o.c0 = std::min(o.c0, g.m0(v));
        o.C0 = std::max(o.C0, g.m0(v));
    }
    for (auto [u, v] : g.edges()) {
        o.c1 = std::min(o.c1, g.m1(u, v));
        o.C1 = std::max(o.C1, g.m1(u, v));
    }
    return o;
}

// ================================================================
// Elementary bounds
// ================================================================

/**
 * Schur row-sum bound ||D||_inf for a symmetric nonnegative kernel.
 * Throws InputError on a negative or asymmetric entry.
 */
inline double schur_bound(const RealSparseMatrix& kernel)
{
    if (kernel.rows() != kernel.cols()) throw InputError("Schur kernel must be square");
    RealSparseMatrix t = kernel.transpose();
    const double scale = std::max(1.0, max_abs(kernel));
    if (max_abs(RealSparseMatrix(kernel - t)) > 1e-12 * scale) throw InputError("Schur kernel is not symmetric");
    RealVector rows = RealVector::Zero(kernel.rows());
    for (int c = 0; c < kernel.outerSize(); ++c)
        for (RealSparseMatrix::InnerIterator it(kernel, c); it; ++it) {
            if (it.value() < 0.0)
                throw InputError("Schur kernel has a negative entry at (" + std::to_string(it.row()) + "," +
                                 std::to_string(it.col()) + ")");
            rows[it.row()] += it.value();
        }
    return rows.size() ? rows.maxCoeff() : 0.0;
}

/// D_k^down + D_k^up.
inline double form_bound(const WeightedComplex& cx, int k)
{
    auto d = up_down_degrees(cx, k);
    return d.down + d.up;
}

/// (k+1) D_k^down + (k+2) D_k^up; each k-simplex has k+1 facets and each coface k+2.
inline double facet_counted_form_bound(const WeightedComplex& cx, int k)
{
    auto d = up_down_degrees(cx, k);
    return (k + 1) * d.down + (k + 2) * d.up;
}

struct TopBound {
    double adjacency = 0.0;  ///< ||D||_inf on the line complex
    double potential = 0.0;  ///< ||V||_inf
    double total = 0.0;
    std::size_t max_neighbors = 0; ///< L
    double m_plus = 0.0;           ///< sup m_n
    double m_minus = 0.0;          ///< inf m_{n-1} over faces of top simplices
    double coarse = 0.0;           ///< L m+/m- + (n+1) m+/m-
};

inline TopBound top_bound(const WeightedComplex& cx)
{
    const int n = cx.dimension();
    auto lc = line_complex(cx);
    TopBound b;
    b.adjacency = schur_bound(lc.kernel());
    b.potential = lc.max_potential();
    b.total = b.adjacency + b.potential;
    b.max_neighbors = lc.max_neighbors();
    b.m_minus = std::numeric_limits<double>::infinity();
    for (Index s = 0; s < cx.size(n); ++s) {
        b.m_plus = std::max(b.m_plus, cx.weight(n, s));
        for (Index t : cx.facets(n, s)) b.m_minus = std::min(b.m_minus, cx.weight(n - 1, t));
    }
    const double ratio = b.m_plus / b.m_minus;
    b.coarse = static_cast<double>(b.max_neighbors) * ratio + (n + 1) * ratio;
    return b;
}

/// Corollary form with caller-supplied weight bounds: L m+/m- + (n+1) m+/m-.
inline double coarse_top_bound(std::size_t L, int n, double m_plus, double m_minus)
{
    if (!(m_minus > 0.0) || m_plus < m_minus) throw InputError("need 0 < m- <= m+");
    return (static_cast<double>(L) + n + 1) * m_plus / m_minus;
}

struct EdgeBlockBounds {
    std::size_t line_degree = 0;  ///< Δ(L(G))
    std::size_t graph_degree = 0; ///< Δ(G)
    double unnormalized = 0.0;    ///< 2Δ(L) + 2
    double normalized = 0.0;      ///< 2Δ(L)
    double unnormalized_by_degree = 0.0; ///< 4(Δ-1) + 2
    double normalized_by_degree = 0.0;   ///< 4(Δ-1)
};

inline EdgeBlockBounds edge_block_bounds(const WeightedGraph& g)
{
    EdgeBlockBounds b;
    b.line_degree = line_graph_max_degree(g);
    b.graph_degree = g.max_degree();
    b.unnormalized = 2.0 * static_cast<double>(b.line_degree) + 2.0;
    b.normalized = 2.0 * static_cast<double>(b.line_degree);
    const double dm1 = b.graph_degree ? static_cast<double>(b.graph_degree) - 1.0 : 0.0;
    b.unnormalized_by_degree = 4.0 * dm1 + 2.0;
    b.normalized_by_degree = 4.0 * dm1;
    return b;
}

/// Universal normalized edge bound 4(d-1) for a d-regular graph.
inline int universal_edge_bound(int d) { return 4 * (d - 1); }

// ================================================================
// Certification
// ================================================================

struct Certificate {
    std::string name;
    double value = 0.0;
    std::string formula;
    /// Binding certificates decide the verdict; advisory ones are reported with their margin only.
    bool binding = true;
    double margin = 0.0; ///< value - computed norm
};

struct BoundReport {
    int degree = 0;
    Flavor flavor = Flavor::skew;
    bool normalized = false;
    double computed_norm = 0.0;
    std::string norm_method;
    std::vector<Certificate> certificates;
    double tolerance = 1e-8;
    std::uint64_t seed = 0;
    int iterations = 0;

    bool passed() const
    {
        for (const auto& c : certificates)
            if (c.binding && c.margin < -tolerance) return false;
        return true;
    }

    bool advisories_hold() const
    {
        for (const auto& c : certificates)
            if (!c.binding && c.margin < -tolerance) return false;
        return true;
    }

    const Certificate* find(std::string_view name) const
    {
        for (const auto& c : certificates)
            if (c.name == name) return &c;
        return nullptr;
    }
};

struct CertifyOptions {
    bool normalized = false;
    PowerOptions power{};
    double margin_tolerance = 1e-8;
};

inline bool has_unit_weights(const WeightedComplex& cx)
{
    for (int k = 0; k <= cx.dimension(); ++k)
        for (double w : cx.weights(k))
            if (w != 1.0) return false;
    return true;
}

/**
 * @brief Computes ||Δ_k|| (or the normalized block) and every applicable bound.
 *
 * The verdict uses bounds that hold on every finite complex. The plain
 * D_down + D_up sum, the weighted C_w Δ(L) product and the normalized
 * 2Δ(L) / 4(Δ-1) edge bounds are reported as advisories.
 */
inline BoundReport certify(const WeightedComplex& cx, int k, Flavor flavor, CertifyOptions opt = {})
{
    BoundReport r;
    r.degree = k;
    r.flavor = flavor;
    r.normalized = opt.normalized;
    r.tolerance = opt.margin_tolerance;
    r.seed = opt.power.seed;
    auto block = opt.normalized ? normalized_block(cx, k, flavor) : laplacian_block(cx, k, flavor);
    auto est = operator_norm_estimate(block, opt.power);
    r.computed_norm = est.norm;
    r.iterations = est.iterations;
    r.norm_method = "block power iteration, relative tol " + std::to_string(opt.power.tol);

    auto add = [&](std::string name, double value, std::string formula, bool binding) {
        r.certificates.push_back({std::move(name), value, std::move(formula), binding, value - r.computed_norm});
    };

    add("facet_counted_form", facet_counted_form_bound(cx, k), "(k+1) D_down + (k+2) D_up", true);
    add("form", form_bound(cx, k), "D_down + D_up", false);

    const int n = cx.dimension();
    if (k == n && cx.size(n) > 0) {
        auto tb = top_bound(cx);
        add("top_schur", tb.total, "||D||_inf + ||V||_inf on the line complex", true);
        add("top_coarse", tb.coarse, "L m+/m- + (n+1) m+/m-", true);
    }
    if (n == 1 && k == 1 && cx.size(1) > 0) {
        const auto& g = cx.graph();
        auto eb = edge_block_bounds(g);
        if (has_unit_weights(cx)) {
            add("edge_line_graph", eb.unnormalized, "2 Delta(L) + 2", true);
            add("edge_graph_degree", eb.unnormalized_by_degree, "4 (Delta - 1) + 2", true);
            add("edge_line_graph_normalized", eb.normalized, "2 Delta(L)", false);
            add("edge_graph_degree_normalized", eb.normalized_by_degree, "4 (Delta - 1)", false);
        } else {
            auto oc = observed_comparability(g);
            add("edge_weighted", oc.weighted_constant() * static_cast<double>(eb.line_degree), "C_w Delta(L)", false);
        }
    }
    return r;
}

} // namespace hodge
