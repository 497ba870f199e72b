#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace hodge {

using Vertex = std::int64_t;
using Index = std::size_t;
using Scalar = std::complex<double>;

/// Vertex tuple. Registered simplices are stored sorted ascending.
using Simplex = std::vector<Vertex>;

using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Scalar>;
using RealSparseMatrix = Eigen::SparseMatrix<double>;

/// Sign convention of a cochain under vertex reordering.
enum class Flavor { skew, sym };

inline std::string_view to_string(Flavor f) { return f == Flavor::skew ? "skew" : "sym"; }

inline Flavor parse_flavor(std::string_view s)
{
    if (s == "skew") return Flavor::skew;
    if (s == "sym") return Flavor::sym;
    throw std::invalid_argument("unknown flavor '" + std::string(s) + "' (expected skew or sym)");
}

// ---------------------------------------------------------------------------
// Errors

/// Malformed or inconsistent input (files, weights, arguments).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative routine exhausted its budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

inline std::string format_simplex(std::span<const Vertex> s)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------------------
// Permutation parity

/// Parity (0 even, 1 odd) of the permutation sorting `keys` ascending.
/// Keys must be pairwise distinct; inversion counting keeps this exact.
template <class T>
int sort_parity(std::span<const T> keys)
{
    int inversions = 0;
    for (std::size_t i = 0; i < keys.size(); ++i)
        for (std::size_t j = i + 1; j < keys.size(); ++j)
            if (keys[j] < keys[i]) ++inversions;
    return inversions & 1;
}

inline int sort_parity(const Simplex& s) { return sort_parity(std::span<const Vertex>(s)); }

inline double parity_sign(int parity) { return parity ? -1.0 : 1.0; }

/// Max |entry| of a sparse matrix, 0 for an empty one.
template <class Sparse>
double max_abs(const Sparse& m)
{
    double out = 0.0;
    for (int c = 0; c < m.outerSize(); ++c)
        for (typename Sparse::InnerIterator it(m, c); it; ++it) out = std::max(out, std::abs(it.value()));
    return out;
}

} // namespace hodge
