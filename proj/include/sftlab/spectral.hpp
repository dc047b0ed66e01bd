#pragma once

// Perron data and the eventual-range (dimension group) data of a shift's matrix.

#include <cmath>
#include <complex>
#include <vector>

#include "sftlab/edge_shift.hpp"
#include "sftlab/polynomial.hpp"
#include "sftlab/rational.hpp"

namespace sftlab {

inline constexpr double kDefaultTol = 1e-9;

struct PerronData {
    double lambda = 0;
    std::vector<double> right;  // A v = lambda v, ||v||_1 = 1
    std::vector<double> left;   // u A = lambda u, ||u||_1 = 1
    double entropy = 0;         // log lambda, nats
};

namespace detail {

inline long double residual(const NonnegIntMatrix& a, const std::vector<long double>& v, long double lambda,
                            bool transpose) {
    const std::size_t k = a.size();
    long double r = 0;
    for (std::size_t i = 0; i < k; ++i) {
        long double acc = 0;
        for (std::size_t j = 0; j < k; ++j) acc += (transpose ? a(j, i) : a(i, j)) * v[j];
        r += std::abs(acc - lambda * v[i]);
    }
    return r;
}

// Power iteration on A + shift*I; the shift makes irreducible-but-periodic input converge.
inline std::vector<long double> perron_vector(const NonnegIntMatrix& a, bool transpose, long double shift,
                                              long double lambda) {
    const std::size_t k = a.size();
    std::vector<long double> v(k, 1.0L / static_cast<long double>(k));
    long double best = residual(a, v, lambda, transpose);
    std::vector<long double> best_v = v;
    int stall = 0;
    for (int it = 0; it < 2000000 && stall < 200; ++it) {
        std::vector<long double> w(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            long double acc = shift * v[i];
            for (std::size_t j = 0; j < k; ++j) acc += (transpose ? a(j, i) : a(i, j)) * v[j];
            w[i] = acc;
        }
        long double norm = 0;
        for (auto x : w) norm += std::abs(x);
        for (auto& x : w) x /= norm;
        v = std::move(w);
        long double r = residual(a, v, lambda, transpose);
        if (r < best * 0.999L) {
            best = r;
            best_v = v;
            stall = 0;
        } else {
            ++stall;
        }
        if (best < 1e-18L) break;
    }
    return best_v;
}

inline long double polish_root(const std::vector<long double>& p, long double x) {
    for (int i = 0; i < 60; ++i) {
        long double f = 0, df = 0;
        for (auto c : p) {
            df = df * x + f;
            f = f * x + c;
        }
        if (df == 0) break;
        long double step = f / df;
        x -= step;
        if (std::abs(step) < 1e-19L * std::max<long double>(1, std::abs(x))) break;
    }
    return x;
}

}  // namespace detail

/// Exact characteristic polynomial det(tI - A), descending integer coefficients.
inline std::vector<BigInt> integer_char_poly(const NonnegIntMatrix& a) {
    QVector q = char_poly(to_rational(a.to_zmatrix()));
    std::vector<BigInt> out;
    out.reserve(q.size());
    for (const auto& c : q) out.push_back(boost::multiprecision::numerator(c));
    return out;
}

/// Perron eigenvalue and eigenvectors. Requires an irreducible shift.
inline PerronData perron_data(const EdgeShift& shift, double tol = kDefaultTol) {
    if (!shift.irreducible()) throw ReducibleInput("perron_data requires an irreducible matrix");
    const auto& a = shift.matrix();
    const std::size_t k = a.size();

    // Spectral radius: largest real root of the exact char poly, polished.
    auto roots = exact_roots(to_qpoly(integer_char_poly(a)));
    long double lambda = roots.max_modulus();
    std::vector<long double> cp;
    for (const auto& c : squarefree_part(strip_zero_roots(to_qpoly(integer_char_poly(a))).second))
        cp.push_back(c.convert_to<long double>());
    lambda = detail::polish_root(cp, lambda);

    const long double shift_amount = shift.primitive() ? 0.0L : 1.0L;
    auto right = detail::perron_vector(a, false, shift_amount, lambda);
    auto left = detail::perron_vector(a, true, shift_amount, lambda);

    PerronData out;
    out.lambda = static_cast<double>(lambda);
    out.entropy = static_cast<double>(std::log(lambda));
    out.right.assign(right.begin(), right.end());
    out.left.assign(left.begin(), left.end());
    if (detail::residual(a, right, lambda, false) > tol || detail::residual(a, left, lambda, true) > tol)
        throw InternalInvariantViolation("Perron eigenvector did not converge to tolerance");
    for (std::size_t i = 0; i < k; ++i)
        if (!(out.right[i] > 0) || !(out.left[i] > 0))
            throw InternalInvariantViolation("Perron eigenvector is not strictly positive");
    return out;
}

inline double topological_entropy(const EdgeShift& shift) {
    auto roots = exact_roots(to_qpoly(integer_char_poly(shift.matrix())));
    return std::log(roots.max_modulus());
}

/// The eventual range R(A) = Q^k A^k with delta(x) = xA restricted to it.
/// Vectors of R(A) are handled in coordinates w.r.t. `basis` (reduced echelon rows of A^k).
struct DimensionData {
    std::size_t k = 0;
    QMatrix basis;                   // d x k
    std::vector<std::size_t> pivots;  // pivot column of each basis row
    QMatrix delta;                   // d x d, row convention
    QMatrix delta_inverse;
    double rho_minus = 0;            // spectral radius of delta^{-1}
    double rho = 0;                  // spectral radius of delta (= Perron value when irreducible)
    std::vector<BigInt> char_poly;   // det(tI - A)
    ZMatrix a;

    std::size_t dim() const noexcept { return basis.rows(); }

    /// Coordinates of an ambient vector known to lie in R(A).
    QVector coordinates(const QVector& x) const {
        QVector c(dim());
        for (std::size_t i = 0; i < dim(); ++i) c[i] = x[pivots[i]];
        if (ambient(c) != x) throw InputError("vector is not in the eventual range");
        return c;
    }

    QVector ambient(const QVector& coords) const { return times(coords, basis); }

    bool in_range(const QVector& x) const {
        QVector c(dim());
        for (std::size_t i = 0; i < dim(); ++i) c[i] = x[pivots[i]];
        return ambient(c) == x;
    }

    /// Membership in G_A: x in R(A) and x A^j integral for some 0 <= j <= 2k.
    bool in_dimension_group(const QVector& x) const {
        if (!in_range(x)) return false;
        QVector y = x;
        QMatrix aq = to_rational(a);
        for (std::size_t j = 0; j <= 2 * k; ++j) {
            bool integral = true;
            for (const auto& v : y) integral = integral && is_integral(v);
            if (integral) return true;
            y = times(y, aq);
        }
        return false;
    }

    /// delta^power on coordinates (negative powers use the inverse).
    QVector apply_delta(QVector coords, long long power) const {
        const QMatrix& m = power >= 0 ? delta : delta_inverse;
        for (long long i = 0; i < (power >= 0 ? power : -power); ++i) coords = times(coords, m);
        return coords;
    }
};

inline DimensionData dimension_data(const EdgeShift& shift) {
    DimensionData d;
    d.k = shift.num_states();
    d.a = shift.matrix().to_zmatrix();
    auto ak = to_rational(d.a.pow(static_cast<unsigned>(d.k)));
    auto ech = rref(ak);
    if (ech.pivots.empty()) throw NilpotentMatrix();
    d.basis = std::move(ech.reduced);
    d.pivots = std::move(ech.pivots);
    const std::size_t dim = d.basis.rows();
    QMatrix aq = to_rational(d.a);
    d.delta = QMatrix(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        QVector image = times(d.basis.row(i), aq);
        QVector c(dim);
        for (std::size_t j = 0; j < dim; ++j) c[j] = image[d.pivots[j]];
        if (d.ambient(c) != image) throw InternalInvariantViolation("eventual range is not A-invariant");
        for (std::size_t j = 0; j < dim; ++j) d.delta(i, j) = c[j];
    }
    d.delta_inverse = inverse(d.delta);
    d.char_poly = integer_char_poly(shift.matrix());
    auto roots = exact_roots(to_qpoly(d.char_poly));
    d.rho = roots.max_modulus();
    d.rho_minus = 1.0 / roots.min_modulus();
    return d;
}

}  // namespace sftlab
