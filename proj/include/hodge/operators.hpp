#pragma once

#include "hodge/cochain.hpp"

#include <random>

namespace hodge {

/**
 * @brief Linear map between cochain spaces that knows its metrics.
 *
 * `matrix` is (codomain size) x (domain size) in canonical coordinates.
 * The adjoint with respect to the carried metrics is M_dom^{-1} A^H M_cod.
 */
struct MetricOperator {
    int domain_degree = 0;
    int codomain_degree = 0;
    Flavor flavor = Flavor::skew;
    SparseMatrix matrix;
    WeightedMetric domain_metric;
    WeightedMetric codomain_metric;

    Eigen::Index rows() const { return matrix.rows(); }
    Eigen::Index cols() const { return matrix.cols(); }

    Vector apply(const Vector& x) const { return matrix * x; }

    Cochain apply(const Cochain& f) const
    {
        if (f.degree != domain_degree) throw std::invalid_argument("operator applied to a cochain of the wrong degree");
        return {codomain_degree, flavor, matrix * f.values};
    }

    DenseMatrix dense() const { return DenseMatrix(matrix); }

    /// Same map in orthonormal coordinates: M_cod^{1/2} A M_dom^{-1/2}.
    SparseMatrix orthonormal_matrix() const
    {
        SparseMatrix out = matrix;
        for (int c = 0; c < out.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(out, c); it; ++it)
                it.valueRef() *= std::sqrt(codomain_metric.diag[it.row()] / domain_metric.diag[it.col()]);
        return out;
    }
};

namespace detail {

inline SparseMatrix scale_rows_cols(const SparseMatrix& a, const RealVector& row, const RealVector& col)
{
    SparseMatrix out = a;
    for (int c = 0; c < out.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(out, c); it; ++it) it.valueRef() *= row[it.row()] * col[it.col()];
    return out;
}

inline MetricOperator zero_operator(int from, int to, Flavor f, const WeightedMetric& dom, const WeightedMetric& cod)
{
    MetricOperator op{from, to, f, SparseMatrix(static_cast<int>(cod.size()), static_cast<int>(dom.size())), dom, cod};
    return op;
}

} // namespace detail

/// a ∘ b
inline MetricOperator compose(const MetricOperator& a, const MetricOperator& b)
{
    if (a.domain_degree != b.codomain_degree || a.cols() != b.rows())
        throw std::invalid_argument("compose: incompatible operators");
    SparseMatrix m = (a.matrix * b.matrix).pruned();
    return {b.domain_degree, a.codomain_degree, a.flavor, m, b.domain_metric, a.codomain_metric};
}

inline MetricOperator operator+(const MetricOperator& a, const MetricOperator& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sum: shape mismatch");
    MetricOperator out = a;
    out.matrix = a.matrix + b.matrix;
    return out;
}

/**
 * Coboundary d^k from (k-1)- to k-cochains:
 *   (d f)([x0..xk]) = sum_i s_i f([x0..^xi..xk]),  s_i = (-1)^i (skew) or 1 (sym).
 * On ascending tuples every omitted-vertex facet is already ascending.
 */
inline MetricOperator coboundary(const WeightedComplex& cx, int k, Flavor flavor)
{
    if (k < 1 || k > cx.dimension())
        throw std::out_of_range("coboundary degree " + std::to_string(k) + " outside 1.." + std::to_string(cx.dimension()));
    std::vector<Eigen::Triplet<Scalar>> trips;
    trips.reserve(cx.size(k) * static_cast<std::size_t>(k + 1));
    for (Index s = 0; s < cx.size(k); ++s) {
        const auto& f = cx.facets(k, s);
        for (std::size_t j = 0; j < f.size(); ++j) {
            double sign = flavor == Flavor::skew ? parity_sign(static_cast<int>(j & 1)) : 1.0;
            trips.emplace_back(static_cast<int>(s), static_cast<int>(f[j]), sign);
        }
    }
    SparseMatrix m(static_cast<int>(cx.size(k)), static_cast<int>(cx.size(k - 1)));
    m.setFromTriplets(trips.begin(), trips.end());
    return {k - 1, k, flavor, m, WeightedMetric::of(cx, k - 1), WeightedMetric::of(cx, k)};
}

/// Metric adjoint M_dom^{-1} A^H M_cod; metrics swap roles.
inline MetricOperator adjoint(const MetricOperator& op)
{
    SparseMatrix ah = op.matrix.adjoint();
    SparseMatrix m = detail::scale_rows_cols(ah, op.domain_metric.diag.cwiseInverse(), op.codomain_metric.diag);
    return {op.codomain_degree, op.domain_degree, op.flavor, m, op.codomain_metric, op.domain_metric};
}

/**
 * Closed-form codifferential δ^k assembled from coface lists:
 *   (δ g)(τ) = (1/m_{k-1}(τ)) sum_{z in F_τ} m_k(τ ∪ z) g([z, τ]).
 * With z placed first, g([z, τ]) = (-1)^p g(ascending) where p counts the
 * vertices of τ below z (skew); this is the metric adjoint of d^k exactly.
 */
inline MetricOperator codifferential(const WeightedComplex& cx, int k, Flavor flavor)
{
    if (k < 1 || k > cx.dimension())
        throw std::out_of_range("codifferential degree " + std::to_string(k) + " outside 1.." + std::to_string(cx.dimension()));
    std::vector<Eigen::Triplet<Scalar>> trips;
    for (Index t = 0; t < cx.size(k - 1); ++t) {
        const Simplex& tau = cx.simplex(k - 1, t);
        const double mt = cx.weight(k - 1, t);
        for (const auto& c : cx.cofaces(k - 1, t)) {
            auto below = std::lower_bound(tau.begin(), tau.end(), c.vertex) - tau.begin();
            double sign = flavor == Flavor::skew ? parity_sign(static_cast<int>(below & 1)) : 1.0;
            trips.emplace_back(static_cast<int>(t), static_cast<int>(c.index), sign * cx.weight(k, c.index) / mt);
        }
    }
    SparseMatrix m(static_cast<int>(cx.size(k - 1)), static_cast<int>(cx.size(k)));
    m.setFromTriplets(trips.begin(), trips.end());
    return {k, k - 1, flavor, m, WeightedMetric::of(cx, k), WeightedMetric::of(cx, k - 1)};
}

/// Down part d^k δ^k and up part δ^{k+1} d^{k+1} of the degree-k block.
struct LaplacianParts {
    MetricOperator down;
    MetricOperator up;
};

inline LaplacianParts laplacian_parts(const WeightedComplex& cx, int k, Flavor flavor)
{
    if (k < 0 || k > cx.dimension())
        throw std::out_of_range("Laplacian degree " + std::to_string(k) + " outside 0.." + std::to_string(cx.dimension()));
    const auto mk = WeightedMetric::of(cx, k);
    LaplacianParts parts{detail::zero_operator(k, k, flavor, mk, mk), detail::zero_operator(k, k, flavor, mk, mk)};
    if (k >= 1) {
        auto d = coboundary(cx, k, flavor);
        parts.down = compose(d, adjoint(d));
    }
    if (k < cx.dimension()) {
        auto d = coboundary(cx, k + 1, flavor);
        parts.up = compose(adjoint(d), d);
    }
    return parts;
}

/// Δ_k = d^k δ^k + δ^{k+1} d^{k+1}, with δ^0 = 0 and d^{n+1} = 0.
inline MetricOperator laplacian_block(const WeightedComplex& cx, int k, Flavor flavor)
{
    auto p = laplacian_parts(cx, k, flavor);
    return p.down + p.up;
}

/**
 * Degree-normalized parts on unweighted coordinates, built from the energy
 * forms: L^- = M^{-1/2} (δ^H M_{k-1} δ) M^{-1/2}, L^+ = M^{-1/2} (d^H M_{k+1} d) M^{-1/2}.
 */
inline LaplacianParts normalized_parts(const WeightedComplex& cx, int k, Flavor flavor)
{
    if (k < 0 || k > cx.dimension())
        throw std::out_of_range("Laplacian degree " + std::to_string(k) + " outside 0.." + std::to_string(cx.dimension()));
    const std::size_t nk = cx.size(k);
    const auto id = WeightedMetric::identity(k, nk);
    const RealVector inv_sqrt = WeightedMetric::of(cx, k).diag.cwiseSqrt().cwiseInverse();
    LaplacianParts parts{detail::zero_operator(k, k, flavor, id, id), detail::zero_operator(k, k, flavor, id, id)};

    auto gram = [&](const MetricOperator& a) {
        // a^H M_cod a, the matrix of the form u -> ||a u||^2_cod
        SparseMatrix weighted = detail::scale_rows_cols(a.matrix, a.codomain_metric.diag, RealVector::Ones(a.cols()));
        SparseMatrix g = (SparseMatrix(a.matrix.adjoint()) * weighted).pruned();
        return detail::scale_rows_cols(g, inv_sqrt, inv_sqrt);
    };
    if (k >= 1) parts.down.matrix = gram(codifferential(cx, k, flavor));
    if (k < cx.dimension()) parts.up.matrix = gram(coboundary(cx, k + 1, flavor));
    return parts;
}

inline MetricOperator normalized_block(const WeightedComplex& cx, int k, Flavor flavor)
{
    auto p = normalized_parts(cx, k, flavor);
    return p.down + p.up;
}

/// Unitary conjugate M^{1/2} A M^{-1/2} of a self-map, on unweighted coordinates.
inline MetricOperator similarity_transform(const MetricOperator& op)
{
    if (op.domain_degree != op.codomain_degree) throw std::invalid_argument("similarity_transform needs a self-map");
    MetricOperator out = op;
    out.matrix = op.orthonormal_matrix();
    out.domain_metric = WeightedMetric::identity(op.domain_degree, op.domain_metric.size());
    out.codomain_metric = out.domain_metric;
    return out;
}

// ================================================================
// Identity checks
// ================================================================

struct EnergyCheck {
    double max_residual = 0.0;
    std::uint64_t seed = 0;
    int trials = 0;
};

/// Random cochain with unit weighted norm; trial t uses its own seed sequence {seed, t}.
inline Cochain random_cochain(const WeightedComplex& cx, int k, Flavor flavor, std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> g;
    Cochain u = Cochain::zero(cx, k, flavor);
    for (Eigen::Index i = 0; i < u.values.size(); ++i) u.values[i] = Scalar(g(rng), g(rng));
    const double nrm = std::sqrt(norm_squared(u, WeightedMetric::of(cx, k)));
    if (nrm > 0.0) u.values /= nrm;
    return u;
}

/// max over trials of |<Δu,u> - ||δu||^2 - ||du||^2| for unit-norm random u.
inline EnergyCheck energy_identity_check(const WeightedComplex& cx, int k, Flavor flavor, int trials, std::uint64_t seed = 0)
{
    EnergyCheck out{0.0, seed, trials};
    if (cx.size(k) == 0) return out;
    const auto lap = laplacian_block(cx, k, flavor);
    const auto mk = WeightedMetric::of(cx, k);
    for (int t = 0; t < trials; ++t) {
        Cochain u = random_cochain(cx, k, flavor, seed, static_cast<std::uint64_t>(t));
        double energy = inner_product(lap.apply(u), u, mk).real();
        double down = 0.0, up = 0.0;
        if (k >= 1) down = norm_squared(adjoint(coboundary(cx, k, flavor)).apply(u), WeightedMetric::of(cx, k - 1));
        if (k < cx.dimension()) up = norm_squared(coboundary(cx, k + 1, flavor).apply(u), WeightedMetric::of(cx, k + 1));
        out.max_residual = std::max(out.max_residual, std::abs(energy - down - up));
    }
    return out;
}

/// max |entry| of d^{k+1} ∘ d^k; vanishes for skew cochains.
inline double dd_max_entry(const WeightedComplex& cx, int k, Flavor flavor)
{
    if (k < 1 || k + 1 > cx.dimension()) return 0.0;
    return max_abs(compose(coboundary(cx, k + 1, flavor), coboundary(cx, k, flavor)).matrix);
}

/**
 * Local top-degree expression at one top simplex σ with neighbors σ'_j across faces τ_j:
 *   q(σ) u(σ) - sum_j a(σ,σ'_j) u(σ'_j),  q = sum_j m_n(σ)/m_{n-1}(τ_j),  a = m_n(σ'_j)/m_{n-1}(τ_j).
 * Generic in the number type so rational weights stay exact.
 */
template <class T>
T top_local_value(const T& m_sigma, std::span<const T> m_faces, std::span<const T> m_neighbors, const T& u_sigma,
                  std::span<const T> u_neighbors)
{
    if (m_faces.size() != m_neighbors.size() || m_faces.size() != u_neighbors.size())
        throw std::invalid_argument("top_local_value: one face weight, neighbor weight and value per neighbor");
    T q = T(0), off = T(0);
    for (std::size_t j = 0; j < m_faces.size(); ++j) {
        q += m_sigma / m_faces[j];
        off += m_neighbors[j] / m_faces[j] * u_neighbors[j];
    }
    return q * u_sigma - off;
}

// ================================================================
// Top-degree reduction
// ================================================================

/**
 * @brief U Δ_n U^{-1} split into signed adjacency plus potential.
 *
 * U multiplies by m_n^{1/2}. For neighbors s = t ∪ {x}, s' = t ∪ {y} the
 * off-diagonal entry is sign(s,s') w(s,s') with sign = (-1)^{pos_s(x) + pos_s'(y)}
 * for skew and +1 for sym; the diagonal is q(s).
 */
struct TopReduction {
    SparseMatrix conjugated;        ///< U Δ_n U^{-1} from the assembled block
    RealSparseMatrix kernel;        ///< w
    RealSparseMatrix signed_kernel; ///< sign(s,s') w(s,s') from the combinatorial bookkeeping
    RealVector potential;           ///< V = q
    RealVector scaling;             ///< m_n^{1/2}
    double residual = 0.0;          ///< max |conjugated - (signed_kernel + diag V)|
    double magnitude_residual = 0.0;///< max | |offdiag| - w | and |diag - V|
    /// ±1 per top simplex making every off-diagonal entry negative, if one exists.
    std::optional<std::vector<int>> coherent_orientation;
};

inline TopReduction top_reduction(const WeightedComplex& cx, Flavor flavor)
{
    const int n = cx.dimension();
    const std::size_t N = cx.size(n);
    TopReduction out;
    out.scaling = WeightedMetric::of(cx, n).diag.cwiseSqrt();
    out.conjugated = laplacian_block(cx, n, flavor).orthonormal_matrix();
    out.potential = RealVector::Zero(static_cast<Eigen::Index>(N));
    out.kernel.resize(static_cast<int>(N), static_cast<int>(N));
    out.signed_kernel.resize(static_cast<int>(N), static_cast<int>(N));
    if (N == 0) {
        out.coherent_orientation = std::vector<int>{};
        return out;
    }

    const LineComplex lc = line_complex(cx);
    std::vector<Eigen::Triplet<double>> w, sw;
    auto position_of_extra = [&](Index s, Index t) {
        // index j with facet j of s equal to t
        const auto& f = cx.facets(n, s);
        return static_cast<int>(std::find(f.begin(), f.end(), t) - f.begin());
    };
    for (Index s = 0; s < N; ++s) {
        out.potential[static_cast<Eigen::Index>(s)] = lc.q[s];
        for (const auto& nb : lc.adjacency[s]) {
            double sign = 1.0;
            if (flavor == Flavor::skew)
                sign = parity_sign((position_of_extra(s, nb.shared_face) + position_of_extra(nb.node, nb.shared_face)) & 1);
            w.emplace_back(static_cast<int>(s), static_cast<int>(nb.node), nb.w);
            sw.emplace_back(static_cast<int>(s), static_cast<int>(nb.node), sign * nb.w);
        }
    }
    out.kernel.setFromTriplets(w.begin(), w.end());
    out.signed_kernel.setFromTriplets(sw.begin(), sw.end());

    DenseMatrix conj(out.conjugated);
    DenseMatrix predicted = DenseMatrix(out.signed_kernel.cast<Scalar>());
    predicted.diagonal() += out.potential.cast<Scalar>();
    out.residual = (conj - predicted).cwiseAbs().maxCoeff();

    Eigen::MatrixXd mag = conj.cwiseAbs();
    Eigen::MatrixXd expect = Eigen::MatrixXd(out.kernel);
    expect.diagonal() = out.potential;
    out.magnitude_residual = (mag - expect).cwiseAbs().maxCoeff();

    // Two-colour the line complex so that o(s) o(s') sign(s,s') = -1 on every adjacency.
    std::vector<int> orient(N, 0);
    bool ok = true;
    for (Index root = 0; root < N && ok; ++root) {
        if (orient[root]) continue;
        orient[root] = 1;
        std::vector<Index> stack{root};
        while (!stack.empty() && ok) {
            Index s = stack.back();
            stack.pop_back();
            for (SparseMatrix::InnerIterator it(out.conjugated, static_cast<int>(s)); it; ++it) {
                // conjugated is Hermitian and real here, so column s lists row s's neighbors
                auto o = static_cast<Index>(it.row());
                if (o == s || std::abs(it.value()) == 0.0) continue;
                int want = it.value().real() < 0 ? orient[s] : -orient[s];
                if (!orient[o]) {
                    orient[o] = want;
                    stack.push_back(o);
                } else if (orient[o] != want) {
                    ok = false;
                }
            }
        }
    }
    if (ok) out.coherent_orientation = std::move(orient);
    return out;
}

} // namespace hodge
