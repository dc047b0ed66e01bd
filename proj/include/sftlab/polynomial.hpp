#pragma once

// Polynomials with exact coefficients (descending order, leading coefficient first)
// and a numeric root finder for the spectral quantities built on them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "sftlab/rational.hpp"

namespace sftlab {

using QPoly = std::vector<Rational>;

inline QPoly trimmed(QPoly p) {
    std::size_t lead = 0;
    while (lead + 1 < p.size() && p[lead] == 0) ++lead;
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
    if (p.empty()) p.push_back(0);
    return p;
}

inline bool is_zero(const QPoly& p) { return p.size() == 1 && p[0] == 0; }
inline std::size_t degree(const QPoly& p) { return p.size() - 1; }

inline QPoly make_monic(QPoly p) {
    p = trimmed(std::move(p));
    if (is_zero(p)) return p;
    Rational lead = p[0];
    for (auto& c : p) c /= lead;
    return p;
}

inline QPoly derivative(const QPoly& p) {
    const std::size_t d = degree(p);
    if (d == 0) return {Rational(0)};
    QPoly out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = p[i] * Rational(static_cast<long long>(d - i));
    return out;
}

/// Polynomial long division; returns {quotient, remainder}.
inline std::pair<QPoly, QPoly> divmod(QPoly num, const QPoly& den_in) {
    QPoly den = trimmed(den_in);
    if (is_zero(den)) throw InvalidMatrix("polynomial division by zero");
    num = trimmed(std::move(num));
    if (degree(num) < degree(den)) return {{Rational(0)}, num};
    const std::size_t qd = degree(num) - degree(den);
    QPoly q(qd + 1, Rational(0));
    for (std::size_t i = 0; i <= qd; ++i) {
        Rational f = num[i] / den[0];
        q[i] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
    }
    QPoly r(num.begin() + static_cast<std::ptrdiff_t>(qd + 1), num.end());
    return {q, trimmed(r)};
}

inline QPoly poly_gcd(QPoly a, QPoly b) {
    a = trimmed(std::move(a));
    b = trimmed(std::move(b));
    while (!is_zero(b)) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    QPoly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return trimmed(c);
}

/// Number of zero roots, and the polynomial with those factors of t removed.
inline std::pair<std::size_t, QPoly> strip_zero_roots(QPoly p) {
    p = trimmed(std::move(p));
    std::size_t zeros = 0;
    while (p.size() > 1 && p.back() == 0) {
        p.pop_back();
        ++zeros;
    }
    return {zeros, p};
}

/// p / gcd(p, p'): same roots, each simple.
inline QPoly squarefree_part(const QPoly& p) {
    QPoly m = make_monic(p);
    if (degree(m) == 0) return m;
    return make_monic(divmod(m, poly_gcd(m, derivative(m))).first);
}

template <typename T>
std::complex<T> evaluate(const std::vector<T>& p, std::complex<T> z) {
    std::complex<T> v(0);
    for (const auto& c : p) v = v * z + c;
    return v;
}

/// All complex roots of a polynomial with real coefficients (descending), by the
/// Aberth-Ehrlich iteration in long double followed by Newton polishing.
/// Accurate to near machine precision for simple roots; pass a squarefree input.
inline std::vector<std::complex<double>> polynomial_roots(const std::vector<long double>& coeffs_in) {
    using C = std::complex<long double>;
    std::vector<long double> p = coeffs_in;
    while (p.size() > 1 && p.front() == 0) p.erase(p.begin());
    const std::size_t n = p.size() - 1;
    if (n == 0) return {};
    const long double lead = p[0];
    for (auto& c : p) c /= lead;
    std::vector<long double> dp(n);
    for (std::size_t i = 0; i < n; ++i) dp[i] = p[i] * static_cast<long double>(n - i);

    // Cauchy bound for initial radius.
    long double bound = 0;
    for (std::size_t i = 1; i <= n; ++i) bound = std::max(bound, std::abs(p[i]));
    bound += 1;
    std::vector<C> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double ang = 2 * std::numbers::pi_v<long double> * static_cast<long double>(i) /
                              static_cast<long double>(n) +
                          0.4L;
        z[i] = std::polar(bound * 0.5L + 0.1L, ang);
    }
    for (int iter = 0; iter < 500; ++iter) {
        long double max_step = 0;
        for (std::size_t i = 0; i < n; ++i) {
            C pv = evaluate(p, z[i]);
            C dv = evaluate(dp, z[i]);
            if (pv == C(0)) continue;
            C ratio = pv / dv;
            C sum(0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) sum += C(1) / (z[i] - z[j]);
            C step = ratio / (C(1) - ratio * sum);
            z[i] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max<long double>(1, std::abs(z[i])));
        }
        if (max_step < 1e-17L) break;
    }
    for (auto& r : z) {
        for (int k = 0; k < 8; ++k) {
            C dv = evaluate(dp, r);
            if (dv == C(0)) break;
            C step = evaluate(p, r) / dv;
            r -= step;
            if (std::abs(step) < 1e-19L * std::max<long double>(1, std::abs(r))) break;
        }
    }
    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (const auto& r : z) {
        double re = static_cast<double>(r.real());
        double im = static_cast<double>(r.imag());
        if (std::abs(im) < 1e-14 * std::max(1.0, std::abs(re))) im = 0.0;
        out.emplace_back(re, im);
    }
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    return out;
}

/// Root set of an exact polynomial: distinct nonzero roots plus the multiplicity of 0.
struct RootSet {
    std::size_t zero_multiplicity = 0;
    std::vector<std::complex<double>> nonzero;  // distinct, sorted by decreasing modulus

    double max_modulus() const { return nonzero.empty() ? 0.0 : std::abs(nonzero.front()); }
    double min_modulus() const { return nonzero.empty() ? 0.0 : std::abs(nonzero.back()); }
};

inline RootSet exact_roots(const QPoly& p) {
    auto [zeros, rest] = strip_zero_roots(p);
    QPoly sf = squarefree_part(rest);
    std::vector<long double> coeffs;
    coeffs.reserve(sf.size());
    for (const auto& c : sf) coeffs.push_back(c.convert_to<long double>());
    return {zeros, polynomial_roots(coeffs)};
}

inline QPoly to_qpoly(const std::vector<BigInt>& p) {
    QPoly q;
    q.reserve(p.size());
    for (const auto& c : p) q.emplace_back(c);
    return q;
}

/// Möbius function by trial factorization.
inline int mobius(long long n) {
    if (n < 1) throw InputError("mobius argument must be positive");
    int sign = 1;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

}  // namespace sftlab
