#pragma once

#include "hodge/operators.hpp"

#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace hodge {

/// Dense Hermitian matrix. Construction symmetrizes and records how far off the input was.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(const DenseMatrix& a)
    {
        if (a.rows() != a.cols()) throw std::invalid_argument("HermitianMatrix: matrix is not square");
        deviation_ = a.size() ? (a - a.adjoint()).cwiseAbs().maxCoeff() : 0.0;
        m_ = 0.5 * (a + a.adjoint());
    }

    Eigen::Index dim() const { return m_.rows(); }
    const DenseMatrix& matrix() const { return m_; }
    /// max |A - A^H| of the input before symmetrization.
    double deviation() const { return deviation_; }

private:
    DenseMatrix m_;
    double deviation_ = 0.0;
};

struct SpectrumResult {
    std::vector<double> eigenvalues; ///< ascending
    DenseMatrix eigenvectors;        ///< column j pairs with eigenvalues[j]
    double residual = 0.0;           ///< max ||A v - λ v||
    int sweeps = 0;
};

struct JacobiOptions {
    double tol = 1e-11;
    int max_sweeps = 0; ///< 0 means 100 * dim
};

/**
 * @brief Cyclic Jacobi eigensolver for Hermitian matrices.
 *
 * Each rotation first removes the phase of a_pq, then applies the real
 * symmetric Jacobi rotation. Sweeps run until the off-diagonal mass is at
 * rounding level; the residual is then checked against `tol` (scaled by
 * max(1, ||A||_F)).
 */
inline SpectrumResult eig_hermitian(const HermitianMatrix& H, JacobiOptions opt = {})
{
    const Eigen::Index n = H.dim();
    if (n < 1) throw std::invalid_argument("eig_hermitian: empty matrix");
    DenseMatrix a = H.matrix();
    DenseMatrix v = DenseMatrix::Identity(n, n);
    const double scale = std::max(1.0, a.norm());
    const int max_sweeps = opt.max_sweeps > 0 ? opt.max_sweeps : static_cast<int>(100 * n);
    const double eps = std::numeric_limits<double>::epsilon();

    auto off = [&] {
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < max_sweeps && off() > eps * scale; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq <= eps * 1e-3 * scale) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const Scalar phase = a(p, q) / apq; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // J = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on columns (p, q)
                const Scalar ep = std::conj(phase);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * ep * akq;
                    a(k, q) = s * akp + c * ep * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * ep * vkq;
                    v(k, q) = s * vkp + c * ep * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a(x, x).real() < a(y, y).real(); });

    SpectrumResult out;
    out.sweeps = sweep;
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        out.eigenvalues.push_back(a(src, src).real());
        out.eigenvectors.col(j) = v.col(src);
    }
    const DenseMatrix& A = H.matrix();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double r = (A * out.eigenvectors.col(j) - out.eigenvalues[static_cast<std::size_t>(j)] * out.eigenvectors.col(j)).norm();
        out.residual = std::max(out.residual, r);
    }
    if (out.residual > opt.tol * scale)
        throw ConvergenceError("Jacobi eigensolver did not reach tolerance after " + std::to_string(sweep) + " sweeps", out.residual);
    return out;
}

/// Householder tridiagonalization + implicit QR, for blocks too large for Jacobi sweeps.
inline SpectrumResult eig_hermitian_tridiagonal(const HermitianMatrix& H, double tol = 1e-11)
{
    if (H.dim() < 1) throw std::invalid_argument("eig_hermitian_tridiagonal: empty matrix");
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(H.matrix());
    if (es.info() != Eigen::Success) throw ConvergenceError("tridiagonal QR did not converge", 0.0);
    SpectrumResult out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    out.eigenvectors = es.eigenvectors();
    out.residual = (H.matrix() * out.eigenvectors - out.eigenvectors * es.eigenvalues().asDiagonal())
                       .colwise()
                       .norm()
                       .maxCoeff();
    const double scale = std::max(1.0, H.matrix().norm());
    if (out.residual > tol * scale) throw ConvergenceError("tridiagonal QR residual above tolerance", out.residual);
    return out;
}

/// Jacobi up to `jacobi_limit` rows, tridiagonal QR above.
inline SpectrumResult hermitian_spectrum(const HermitianMatrix& H, Eigen::Index jacobi_limit = 128)
{
    return H.dim() <= jacobi_limit ? eig_hermitian(H) : eig_hermitian_tridiagonal(H);
}

inline double spectral_radius(const HermitianMatrix& H, JacobiOptions opt = {})
{
    auto r = eig_hermitian(H, opt);
    return std::max(std::abs(r.eigenvalues.front()), std::abs(r.eigenvalues.back()));
}

// ================================================================
// Iterative operator norm
// ================================================================

struct PowerOptions {
    double tol = 1e-8;       ///< relative
    int max_iterations = 100000;
    int block_size = 8;
    std::uint64_t seed = 0;
};

struct NormEstimate {
    double norm = 0.0;
    double largest = 0.0;  ///< top of the spectrum
    double smallest = 0.0; ///< bottom of the spectrum
    double shift = 0.0;    ///< Gershgorin radius used as the shift
    int iterations = 0;
};

namespace detail {

/// Top eigenvalue of a PSD Hermitian sparse matrix by block power iteration with Rayleigh-Ritz.
inline double top_eigenvalue_psd(const SparseMatrix& B, const PowerOptions& opt, std::uint64_t stream, int& iterations)
{
    const Eigen::Index n = B.rows();
    const Eigen::Index b = std::min<Eigen::Index>(n, std::max(1, opt.block_size));
    std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ULL + stream);
    std::normal_distribution<double> g;
    auto orthonormalize = [&](const DenseMatrix& W) -> DenseMatrix {
        return W.householderQr().householderQ() * DenseMatrix::Identity(n, b);
    };
    auto randomize = [&](DenseMatrix& X) {
        for (Eigen::Index j = 0; j < X.cols(); ++j)
            for (Eigen::Index i = 0; i < X.rows(); ++i) X(i, j) = Scalar(g(rng), g(rng));
    };

    DenseMatrix X(n, b);
    randomize(X);
    X = orthonormalize(X);

    double prev = -1.0, theta = 0.0;
    int stable = 0;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        DenseMatrix W = B * X;
        if (W.norm() == 0.0) {
            // start block fell into the kernel: restart from a fresh random block
            randomize(X);
            X = orthonormalize(X);
            W = B * X;
            if (W.norm() == 0.0) {
                iterations = it;
                return 0.0;
            }
        }
        DenseMatrix Q = orthonormalize(W);
        HermitianMatrix T(Q.adjoint() * (B * Q));
        auto ritz = eig_hermitian(T);
        theta = ritz.eigenvalues.back();
        // reorder so the top Ritz vector leads
        DenseMatrix Y = ritz.eigenvectors.rowwise().reverse();
        X = Q * Y;
        if (std::abs(theta - prev) <= opt.tol * 1e-2 * std::max(1.0, std::abs(theta))) {
            if (++stable >= 5) {
                iterations = it;
                return theta;
            }
        } else {
            stable = 0;
        }
        prev = theta;
    }
    iterations = opt.max_iterations;
    throw ConvergenceError("power iteration did not converge", theta);
}

} // namespace detail

/**
 * @brief Largest |eigenvalue| of a Hermitian sparse matrix.
 *
 * Runs block power iteration on H + cI and cI - H with c the Gershgorin
 * radius, so both ends of the spectrum are found with PSD iterates.
 */
inline NormEstimate hermitian_norm(const SparseMatrix& H, PowerOptions opt = {})
{
    NormEstimate out;
    if (H.rows() == 0) return out;
    double c = 0.0;
    {
        RealVector rows = RealVector::Zero(H.rows());
        for (int col = 0; col < H.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(H, col); it; ++it) rows[it.row()] += std::abs(it.value());
        c = rows.maxCoeff();
    }
    out.shift = c;
    if (c == 0.0) return out;

    SparseMatrix I(H.rows(), H.cols());
    I.setIdentity();
    int it1 = 0, it2 = 0;
    SparseMatrix up = H + c * I;
    SparseMatrix down = c * I - H;
    out.largest = detail::top_eigenvalue_psd(up, opt, 1, it1) - c;
    out.smallest = c - detail::top_eigenvalue_psd(down, opt, 2, it2);
    out.iterations = it1 + it2;
    out.norm = std::max(std::abs(out.largest), std::abs(out.smallest));
    return out;
}

/// Operator norm of a self-adjoint operator in its own weighted metric.
inline NormEstimate operator_norm_estimate(const MetricOperator& A, PowerOptions opt = {})
{
    if (A.domain_degree != A.codomain_degree || A.rows() != A.cols())
        throw std::invalid_argument("operator_norm: operator must map a cochain space to itself");
    return hermitian_norm(A.orthonormal_matrix(), opt);
}

inline double operator_norm(const MetricOperator& A, PowerOptions opt = {})
{
    return operator_norm_estimate(A, opt).norm;
}

} // namespace hodge
