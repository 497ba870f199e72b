#pragma once

#include "hodge/complex.hpp"

namespace hodge {

/// Diagonal metric on k-cochains: the simplex weights m_k in registry order.
struct WeightedMetric {
    int degree = 0;
    RealVector diag;

    std::size_t size() const { return static_cast<std::size_t>(diag.size()); }

    static WeightedMetric of(const WeightedComplex& cx, int k)
    {
        WeightedMetric m;
        m.degree = k;
        const auto& w = cx.weights(k);
        m.diag = Eigen::Map<const RealVector>(w.data(), static_cast<Eigen::Index>(w.size()));
        return m;
    }

    static WeightedMetric identity(int k, std::size_t n)
    {
        return {k, RealVector::Ones(static_cast<Eigen::Index>(n))};
    }
};

/**
 * @brief A k-cochain stored by its values on positively oriented simplices.
 *
 * Values live in the canonical registry order of the complex level. The
 * flavor decides how an arbitrary vertex ordering evaluates (see evaluate()).
 */
struct Cochain {
    int degree = 0;
    Flavor flavor = Flavor::skew;
    Vector values;

    static Cochain zero(const WeightedComplex& cx, int k, Flavor f)
    {
        return {k, f, Vector::Zero(static_cast<Eigen::Index>(cx.size(k)))};
    }

    static Cochain indicator(const WeightedComplex& cx, int k, Flavor f, std::span<const Vertex> s)
    {
        Cochain c = zero(cx, k, f);
        Index i = cx.index_of(k, s);
        // Stored value is on the ascending representative, so fold in the orientation of `s`.
        Simplex tmp(s.begin(), s.end());
        c.values[static_cast<Eigen::Index>(i)] = f == Flavor::skew ? parity_sign(sort_parity(tmp)) : 1.0;
        return c;
    }
};

/// <f,g>_k = sum over registered simplices of m_k f conj(g).
inline Scalar inner_product(const Cochain& f, const Cochain& g, const WeightedMetric& metric)
{
    if (f.degree != g.degree || f.degree != metric.degree)
        throw std::invalid_argument("inner_product: degree mismatch (" + std::to_string(f.degree) + ", " +
                                    std::to_string(g.degree) + ", metric " + std::to_string(metric.degree) + ")");
    if (f.values.size() != g.values.size() || static_cast<std::size_t>(f.values.size()) != metric.size())
        throw std::invalid_argument("inner_product: size mismatch");
    Scalar s = 0.0;
    for (Eigen::Index i = 0; i < f.values.size(); ++i) s += metric.diag[i] * f.values[i] * std::conj(g.values[i]);
    return s;
}

inline double norm_squared(const Cochain& f, const WeightedMetric& metric)
{
    return inner_product(f, f, metric).real();
}

/**
 * Value of f on an ordered vertex tuple: (-1)^parity times the stored value
 * for skew cochains, the stored value for symmetric ones.
 */
inline Scalar evaluate(const WeightedComplex& cx, const Cochain& f, std::span<const Vertex> tuple)
{
    Simplex t(tuple.begin(), tuple.end());
    Simplex sorted = t;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("tuple " + format_simplex(tuple) + " repeats a vertex");
    auto i = cx.find(f.degree, sorted);
    if (!i) throw InputError("tuple " + format_simplex(tuple) + " is not a registered " + std::to_string(f.degree) + "-simplex");
    Scalar v = f.values[static_cast<Eigen::Index>(*i)];
    return f.flavor == Flavor::skew ? parity_sign(sort_parity(t)) * v : v;
}

} // namespace hodge
