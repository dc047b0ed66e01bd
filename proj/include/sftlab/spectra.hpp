#pragma once

// Spectral conditions on integer polynomials and bounded search for primitive
// nonnegative matrices realizing them. Polynomials are descending coefficient lists.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sftlab/edge_shift.hpp"
#include "sftlab/polynomial.hpp"
#include "sftlab/report.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

using IntPolynomial = std::vector<BigInt>;

inline void require_monic(const IntPolynomial& p) {
    if (p.empty() || p.front() != 1) throw NonMonic();
}

/// "[1,-5,-6,1]" -> t^3 - 5t^2 - 6t + 1.
inline IntPolynomial parse_polynomial(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("--poly", e.what());
    }
    if (!j.is_array() || j.empty()) throw ParseError("--poly", "expected a nonempty array of integer coefficients");
    IntPolynomial p;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer()) throw ParseError("--poly/" + std::to_string(i), "expected an integer");
        p.emplace_back(j[i].get<long long>());
    }
    return p;
}

/// tr_k = sum of k-th powers of the roots, by Newton's identities.
inline std::vector<BigInt> power_traces(const IntPolynomial& p, std::size_t n) {
    require_monic(p);
    const std::size_t d = p.size() - 1;
    std::vector<BigInt> tr(n + 1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        BigInt acc = k <= d ? BigInt(static_cast<long long>(k)) * p[k] : BigInt(0);
        for (std::size_t i = 1; i <= std::min(k - 1, d); ++i) acc += p[i] * tr[k - i];
        tr[k] = -acc;
    }
    tr.erase(tr.begin());
    return tr;
}

/// q_n = sum over k | n of mu(n/k) tr_k, for n = 1..traces.size().
inline std::vector<BigInt> net_traces(const std::vector<BigInt>& traces) {
    std::vector<BigInt> q(traces.size(), 0);
    for (std::size_t n = 1; n <= traces.size(); ++n)
        for (std::size_t k = 1; k <= n; ++k)
            if (n % k == 0) q[n - 1] += mobius(static_cast<long long>(n / k)) * traces[k - 1];
    return q;
}

enum class Verdict { Holds, Fails, Indeterminate };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Indeterminate: return "indeterminate";
    }
    return "?";
}

inline Verdict margin_verdict(double margin, double tol) {
    if (margin > tol) return Verdict::Holds;
    if (margin < -tol) return Verdict::Fails;
    return Verdict::Indeterminate;
}

struct SpectralConditionsReport {
    std::size_t n_checked = 0;
    Verdict perron = Verdict::Fails;  // (1) real dominant root lambda_d > |other roots|
    double lambda_d = 0;
    double perron_margin = 0;
    Verdict net_trace = Verdict::Fails;  // (2) exact
    std::vector<BigInt> traces;
    std::vector<BigInt> nets;
    Verdict reciprocal = Verdict::Fails;  // (3) 1 / min |root| > lambda_d
    double min_modulus = 0;
    double reciprocal_margin = 0;

    bool realizable_conditions() const { return perron == Verdict::Holds && net_trace == Verdict::Holds; }

    nlohmann::json to_json() const {
        auto strs = [](const std::vector<BigInt>& v) {
            std::vector<std::string> out;
            for (const auto& x : v) out.push_back(x.str());
            return out;
        };
        return {{"N", n_checked},
                {"perron", {{"verdict", to_string(perron)}, {"lambda_d", lambda_d}, {"margin", perron_margin}}},
                {"net_trace", {{"verdict", to_string(net_trace)}, {"traces", strs(traces)}, {"net_traces", strs(nets)}}},
                {"reciprocal",
                 {{"verdict", to_string(reciprocal)}, {"min_modulus", min_modulus}, {"margin", reciprocal_margin}}}};
    }
};

inline SpectralConditionsReport check_conditions(const IntPolynomial& p, std::size_t n = 12, double tol = kDefaultTol) {
    require_monic(p);
    if (n < 1) throw InputError("N must be at least 1");
    if (p.size() < 2) throw InputError("polynomial must have positive degree");
    SpectralConditionsReport r;
    r.n_checked = n;
    r.traces = power_traces(p, n);
    r.nets = net_traces(r.traces);
    r.net_trace = std::all_of(r.nets.begin(), r.nets.end(), [](const BigInt& q) { return q >= 0; }) ? Verdict::Holds
                                                                                                      : Verdict::Fails;

    const QPoly q = to_qpoly(p);
    const auto roots = exact_roots(q);  // distinct roots
    std::vector<std::complex<double>> nz = roots.nonzero;
    std::vector<std::complex<double>> all = nz;
    if (roots.zero_multiplicity) all.emplace_back(0.0, 0.0);

    const auto dom = all.front();
    const double lam = dom.real();
    double rest = 0;
    for (std::size_t i = 1; i < all.size(); ++i) rest = std::max(rest, std::abs(all[i]));
    r.lambda_d = std::abs(dom);
    if (std::abs(dom.imag()) > tol || lam <= tol) {
        r.perron = Verdict::Fails;
        r.perron_margin = -std::abs(dom.imag());
    } else {
        r.perron_margin = lam - rest;
        r.perron = margin_verdict(r.perron_margin, tol);
        // A repeated dominant root ties with itself.
        const QPoly g = poly_gcd(q, derivative(q));
        if (degree(g) > 0 && r.perron == Verdict::Holds) {
            std::vector<double> gd;
            for (const auto& c : g) gd.push_back(to_double(c));
            if (std::abs(evaluate(gd, std::complex<double>(lam))) < 1e-6 * std::pow(std::max(1.0, lam), degree(g))) {
                r.perron = Verdict::Fails;
                r.perron_margin = 0;
            }
        }
    }

    if (p.back() == 0) throw ZeroConstantTerm();
    r.min_modulus = std::abs(nz.back());
    r.reciprocal_margin = 1.0 / r.min_modulus - r.lambda_d;
    r.reciprocal = margin_verdict(r.reciprocal_margin, tol);
    return r;
}

struct RealizationSearch {
    std::optional<NonnegIntMatrix> matrix;
    std::string method;  // "companion", "exhaustive", "random" or "not-found"
    std::uint64_t candidates = 0;
};

namespace detail {

inline bool realizes(const NonnegIntMatrix& m, const IntPolynomial& p) {
    IntPolynomial target = p;
    target.resize(m.size() + 1, BigInt(0));
    return integer_char_poly(m) == target && build_edge_shift(m)->primitive();
}

inline NonnegIntMatrix to_matrix(const std::vector<long long>& e, std::size_t m) {
    std::vector<std::vector<long long>> rows(m, std::vector<long long>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) rows[i][j] = e[i * m + j];
    return NonnegIntMatrix(std::move(rows));
}

inline long long trace_of_square(const std::vector<long long>& e, std::size_t m) {
    long long t = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) t += e[i * m + k] * e[k * m + i];
    return t;
}

}  // namespace detail

/// Candidates in order: companion matrices of t^j p(t); then every m x m matrix in
/// row-major lexicographic order with trace tr_1 (m ascending); then seeded random draws.
/// Each candidate is confirmed by its exact characteristic polynomial and primitivity.
inline RealizationSearch search_primitive_realization(const IntPolynomial& p, std::size_t max_size = 6,
                                                      long long max_entry = 6,
                                                      std::uint64_t budget = window_budget(),
                                                      std::uint32_t seed = 20240601) {
    auto cond = check_conditions(p, 12);
    if (!cond.realizable_conditions())
        throw PreconditionFailed("conditions (1) and (2) must hold before searching for a realization");
    const std::size_t d = p.size() - 1;
    RealizationSearch out;

    for (std::size_t m = d; m <= max_size; ++m) {
        std::vector<long long> e(m * m, 0);
        bool ok = true;
        for (std::size_t j = 0; j < m; ++j) {
            const BigInt c = j < d ? BigInt(-p[j + 1]) : BigInt(0);
            if (c < 0 || c > max_entry) ok = false;
            e[j] = c.convert_to<long long>();
        }
        for (std::size_t i = 1; i < m; ++i) e[i * m + i - 1] = 1;
        ++out.candidates;
        if (ok && 1 <= max_entry && detail::realizes(detail::to_matrix(e, m), p)) {
            out.matrix = detail::to_matrix(e, m);
            out.method = "companion";
            return out;
        }
    }

    const long long tr1 = cond.traces[0].convert_to<long long>();
    const long long tr2 = cond.traces.size() > 1 ? cond.traces[1].convert_to<long long>() : 0;
    const std::uint64_t exhaustive_budget = budget - budget / 4;
    bool exhausted = false;
    for (std::size_t m = d; m <= max_size && !exhausted && !out.matrix; ++m) {
        std::vector<long long> e(m * m, 0);
        // Depth-first over positions in row-major order; diagonal entries keep the trace reachable.
        auto rec = [&](auto&& self, std::size_t pos, long long diag) -> bool {
            if (pos == m * m) {
                if (++out.candidates > exhaustive_budget) {
                    exhausted = true;
                    return true;
                }
                if (diag != tr1 || detail::trace_of_square(e, m) != tr2) return false;
                auto cand = detail::to_matrix(e, m);
                if (!detail::realizes(cand, p)) return false;
                out.matrix = cand;
                out.method = "exhaustive";
                return true;
            }
            const std::size_t i = pos / m, j = pos % m;
            for (long long v = 0; v <= max_entry; ++v) {
                if (i == j) {
                    const long long remaining_diag = static_cast<long long>(m - 1 - i) * max_entry;
                    if (diag + v > tr1) break;
                    if (diag + v + remaining_diag < tr1) continue;
                }
                e[pos] = v;
                if (self(self, pos + 1, i == j ? diag + v : diag)) return true;
            }
            e[pos] = 0;
            return false;
        };
        rec(rec, 0, 0);
    }
    if (out.matrix) return out;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> entry(0, max_entry);
    std::uniform_int_distribution<std::size_t> size(d, max_size);
    while (out.candidates < budget) {
        ++out.candidates;
        const std::size_t m = size(rng);
        std::vector<long long> e(m * m);
        long long diag = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            e[k] = entry(rng);
            if (k / m == k % m) diag += e[k];
        }
        if (diag != tr1 || detail::trace_of_square(e, m) != tr2) continue;
        auto cand = detail::to_matrix(e, m);
        if (detail::realizes(cand, p)) {
            out.matrix = cand;
            out.method = "random";
            return out;
        }
    }
    out.method = "not-found";
    return out;
}

/// For phi = sigma_A^-1: Confirmed when log rho(delta_A^-1) > log lambda_A + tol,
/// i.e. |log rho(S_phi)| exceeds h_top(phi).
inline CheckRecord verify_eb_failure(const NonnegIntMatrix& m, double tol = kDefaultTol) {
    auto s = build_edge_shift(m);
    if (!s->primitive()) throw NotPrimitive();
    const auto dim = dimension_data(*s);
    const double lhs = std::log(dim.rho_minus);
    const double rhs = topological_entropy(*s);
    const double gap = lhs - rhs;
    CheckRecord r{"EB failure: log rho(delta^-1) > h_top(sigma_A^-1)"};
    r.lhs = lhs;
    r.rhs_lo = r.rhs_hi = rhs;
    r.tol = tol;
    if (gap > tol)
        r.status = Status::Confirmed;
    else if (gap >= -tol)
        r.status = Status::NotStrict;
    else
        r.status = Status::Consistent;
    r.detail = "gap " + std::to_string(gap) +
               (r.status == Status::Confirmed ? "" : "; the entropy bound holds for sigma_A^-1 here");
    return r;
}

}  // namespace sftlab
