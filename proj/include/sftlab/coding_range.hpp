#pragma once

// Coding ranges W^-(n, phi), W^+(n, phi) and interval bounds on the Lyapunov exponents.
//
// coded_minus(code, j) asks whether output coordinate j is a function of the input on
// (-inf, 0]; coded_plus mirrors it for [0, inf). Both reduce to comparisons between
// extendable windows: windows sharing the known part must agree, and when the window is
// detached from 0, any window reachable at the right distance from a common boundary
// state must agree.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sftlab/block_code.hpp"
#include "sftlab/edge_shift.hpp"
#include "sftlab/rational.hpp"

namespace sftlab {

namespace detail {

inline constexpr Edge kNoOutput = std::numeric_limits<Edge>::max();

// Records `out` for key; false if the key already holds a different output.
inline bool record_output(std::vector<Edge>& slots, std::size_t key, Edge out) {
    if (slots[key] == kNoOutput) slots[key] = out;
    return slots[key] == out;
}

// For each boundary state o (filtered by `boundary_ok`), the outputs of all states q
// with linked(o, q) must coincide.
template <typename Linked, typename Ok>
bool outputs_agree_across(const std::vector<Edge>& by_state, std::size_t k, Linked linked, Ok boundary_ok) {
    for (std::size_t o = 0; o < k; ++o) {
        if (!boundary_ok(o)) continue;
        Edge seen = kNoOutput;
        for (std::size_t q = 0; q < k; ++q) {
            if (by_state[q] == kNoOutput || !linked(o, q)) continue;
            if (seen == kNoOutput) seen = by_state[q];
            if (seen != by_state[q]) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Output coordinate j is determined by input coordinates <= 0.
inline bool coded_minus(const SlidingBlockCode& code, long long j) {
    const auto m = static_cast<long long>(code.memory());
    const auto a = static_cast<long long>(code.anticipation());
    if (j + a <= 0) return true;
    const EdgeShift& s = *code.source();
    const WordIndexer& idx = code.indexer();
    bool ok = true;
    if (j - m <= 0) {
        // Known prefix covers window positions [j-m, 0]; equal prefixes are contiguous in rank order.
        const auto prefix = static_cast<std::size_t>(m - j + 1);
        Word prev;
        Edge prev_out = detail::kNoOutput;
        idx.for_each([&](const Word& w, std::uint64_t r) {
            if (!s.word_extendable(w)) return true;
            const Edge out = code.at_rank(r);
            if (prev_out != detail::kNoOutput && std::equal(w.begin(), w.begin() + prefix, prev.begin())) {
                ok = out == prev_out;
                return ok;
            }
            prev.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(prefix));
            prev_out = out;
            return true;
        });
        return ok;
    }
    const std::size_t k = s.num_states();
    std::vector<Edge> by_start(k, detail::kNoOutput);
    idx.for_each([&](const Word& w, std::uint64_t r) {
        if (!s.word_extendable(w)) return true;
        ok = detail::record_output(by_start, s.source(w.front()), code.at_rank(r));
        return ok;
    });
    if (!ok) return false;
    const auto reach = s.reach_exact(static_cast<std::size_t>(j - m - 1));
    return detail::outputs_agree_across(
        by_start, k, [&](std::size_t o, std::size_t q) { return reach[o][q]; },
        [&](std::size_t o) { return s.has_past(static_cast<State>(o)); });
}

/// Output coordinate j is determined by input coordinates >= 0.
inline bool coded_plus(const SlidingBlockCode& code, long long j) {
    const auto m = static_cast<long long>(code.memory());
    const auto a = static_cast<long long>(code.anticipation());
    if (j - m >= 0) return true;
    const EdgeShift& s = *code.source();
    const WordIndexer& idx = code.indexer();
    bool ok = true;
    if (j + a >= 0) {
        // Known suffix covers window positions [0, j+a].
        const auto start = static_cast<std::size_t>(m - j);
        WordIndexer suffix_idx(code.source(), static_cast<std::size_t>(j + a + 1));
        std::vector<Edge> by_suffix(suffix_idx.size(), detail::kNoOutput);
        idx.for_each([&](const Word& w, std::uint64_t r) {
            if (!s.word_extendable(w)) return true;
            std::span<const Edge> sp(w);
            ok = detail::record_output(by_suffix, suffix_idx.rank(sp.subspan(start)), code.at_rank(r));
            return ok;
        });
        return ok;
    }
    const std::size_t k = s.num_states();
    std::vector<Edge> by_end(k, detail::kNoOutput);
    idx.for_each([&](const Word& w, std::uint64_t r) {
        if (!s.word_extendable(w)) return true;
        ok = detail::record_output(by_end, s.target(w.back()), code.at_rank(r));
        return ok;
    });
    if (!ok) return false;
    const auto reach = s.reach_exact(static_cast<std::size_t>(-(j + a) - 1));
    return detail::outputs_agree_across(
        by_end, k, [&](std::size_t o, std::size_t q) { return reach[q][o]; },
        [&](std::size_t o) { return s.has_future(static_cast<State>(o)); });
}

/// sup{ m : (-inf,0] codes (-inf,m] }, given a proven upper bound `ceiling`.
inline long long scan_minus(const SlidingBlockCode& code, long long ceiling) {
    const auto a = static_cast<long long>(code.anticipation());
    if (ceiling < -a) throw InternalInvariantViolation("W^- ceiling lies below the trivially coded range");
    for (long long j = -a + 1; j <= ceiling; ++j)
        if (!coded_minus(code, j)) return j - 1;
    if (coded_minus(code, ceiling + 1))
        throw InternalInvariantViolation("W^- exceeds the bound forced by the inverse's coding range");
    return ceiling;
}

/// inf{ m : [0,inf) codes [m,inf) }, given a proven lower bound `floor`.
inline long long scan_plus(const SlidingBlockCode& code, long long floor) {
    const auto m = static_cast<long long>(code.memory());
    if (floor > m) throw InternalInvariantViolation("W^+ floor lies above the trivially coded range");
    for (long long j = m - 1; j >= floor; --j)
        if (!coded_plus(code, j)) return j + 1;
    if (coded_plus(code, floor - 1))
        throw InternalInvariantViolation("W^+ is below the bound forced by the inverse's coding range");
    return floor;
}

/// W^-(n, .) and W^+(n, .) for phi and its inverse at one n.
struct CodingRanges {
    long long n = 0;
    long long w_minus = 0;
    long long w_plus = 0;
    long long w_minus_inv = 0;
    long long w_plus_inv = 0;
};

inline void require_positive_entropy(const EdgeShift& s) {
    if (!s.irreducible()) throw ReducibleInput("coding ranges require an irreducible shift");
    if (!s.positive_entropy()) throw PreconditionFailed("coding ranges require positive entropy");
}

/// Fixed procedure: the inverse side is bounded by the forward window sizes, then the
/// forward side is bounded by the inverse results.
inline CodingRanges coding_ranges(const Automorphism& phi, long long n, std::uint64_t budget = window_budget()) {
    if (n < 1) throw InputError("coding ranges need n >= 1");
    require_positive_entropy(*phi.shift());
    const auto fwd = power(phi, n, budget);
    const auto inv = power(phi, -n, budget);
    CodingRanges c;
    c.n = n;
    c.w_minus_inv = scan_minus(inv, static_cast<long long>(fwd.anticipation()));
    c.w_plus_inv = scan_plus(inv, -static_cast<long long>(fwd.memory()));
    c.w_minus = scan_minus(fwd, -c.w_minus_inv);
    c.w_plus = scan_plus(fwd, -c.w_plus_inv);
    // Windows alone force -anticipation <= W^- and W^+ <= memory.
    auto sandwich = [](long long wm, long long wp, const SlidingBlockCode& code) {
        return -static_cast<long long>(code.anticipation()) <= wm && wp <= static_cast<long long>(code.memory());
    };
    if (c.w_minus + c.w_minus_inv > 0 || c.w_plus + c.w_plus_inv < 0 || !sandwich(c.w_minus, c.w_plus, fwd) ||
        !sandwich(c.w_minus_inv, c.w_plus_inv, inv))
        throw InternalInvariantViolation("coding ranges violate the sum or window inequalities");
    return c;
}

/// (W^-(n, phi), W^+(n, phi)).
inline std::pair<long long, long long> W_values(const Automorphism& phi, long long n,
                                                std::uint64_t budget = window_budget()) {
    auto c = coding_ranges(phi, n, budget);
    return {c.w_minus, c.w_plus};
}

struct CodingRangeProfile {
    std::string automorphism;
    std::size_t n_max = 0;
    // index n-1 holds the value at n
    std::vector<long long> w_minus, w_plus, w_minus_inv, w_plus_inv;

    long long a_minus(std::size_t n) const { return std::llabs(w_minus_inv[n - 1]) - w_minus[n - 1]; }
    long long a_plus(std::size_t n) const { return std::llabs(w_minus[n - 1]) - w_minus_inv[n - 1]; }

    CodingRangeProfile inverted() const {
        return {automorphism + "^-1", n_max, w_minus_inv, w_plus_inv, w_minus, w_plus};
    }
};

inline CodingRangeProfile coding_range_profile(const Automorphism& phi, std::size_t n_max,
                                               std::uint64_t budget = window_budget()) {
    if (n_max < 1) throw InputError("n_max must be at least 1");
    CodingRangeProfile p;
    p.automorphism = phi.name;
    p.n_max = n_max;
    for (std::size_t n = 1; n <= n_max; ++n) {
        auto c = coding_ranges(phi, static_cast<long long>(n), budget);
        p.w_minus.push_back(c.w_minus);
        p.w_plus.push_back(c.w_plus);
        p.w_minus_inv.push_back(c.w_minus_inv);
        p.w_plus_inv.push_back(c.w_plus_inv);
    }
    return p;
}

/// Closed interval with exact endpoints and the n attaining each.
struct RationalInterval {
    Rational lo;
    Rational hi;
    std::size_t n_lo = 0;
    std::size_t n_hi = 0;

    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool is_point(const Rational& x) const { return lo == x && hi == x; }
};

enum class DistortionVerdict { CertifiedNotDistorted, ConsistentWithDistortion };

inline std::string to_string(DistortionVerdict v) {
    return v == DistortionVerdict::CertifiedNotDistorted ? "certified-not-distorted" : "consistent-with-distortion";
}

struct LyapunovBounds {
    RationalInterval alpha_minus;
    RationalInterval alpha_plus;
    DistortionVerdict verdict = DistortionVerdict::ConsistentWithDistortion;
    std::string method = "finite-n";  // or "product-form" when pinned by a closed form

    void update_verdict() {
        const Rational zero(0);
        verdict = (!alpha_minus.contains(zero) || !alpha_plus.contains(zero))
                      ? DistortionVerdict::CertifiedNotDistorted
                      : DistortionVerdict::ConsistentWithDistortion;
    }
};

namespace detail {

// [max_n lower(n)/n, min_n upper(n)/n]
template <typename Lo, typename Hi>
RationalInterval fekete_interval(std::size_t n_max, Lo lower, Hi upper) {
    RationalInterval r;
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational l(lower(n), static_cast<long long>(n));
        Rational h(upper(n), static_cast<long long>(n));
        if (n == 1 || l > r.lo) {
            r.lo = l;
            r.n_lo = n;
        }
        if (n == 1 || h < r.hi) {
            r.hi = h;
            r.n_hi = n;
        }
    }
    if (r.lo > r.hi) throw InternalInvariantViolation("Lyapunov interval is empty");
    return r;
}

}  // namespace detail

/// alpha^- in [max W^-(n,phi)/n, min -W^-(n,phi^-1)/n];
/// alpha^+ in [max -W^+(n,phi^-1)/n, min W^+(n,phi)/n].
inline LyapunovBounds lyapunov_bounds(const CodingRangeProfile& p) {
    LyapunovBounds b;
    b.alpha_minus = detail::fekete_interval(
        p.n_max, [&](std::size_t n) { return p.w_minus[n - 1]; }, [&](std::size_t n) { return -p.w_minus_inv[n - 1]; });
    b.alpha_plus = detail::fekete_interval(
        p.n_max, [&](std::size_t n) { return -p.w_plus_inv[n - 1]; }, [&](std::size_t n) { return p.w_plus[n - 1]; });
    b.update_verdict();
    return b;
}

inline LyapunovBounds lyapunov_bounds(const Automorphism& phi, std::size_t n_max,
                                      std::uint64_t budget = window_budget()) {
    return lyapunov_bounds(coding_range_profile(phi, n_max, budget));
}

/// Conjugate of a code on X_A by coordinate reversal, as a code on X_{A^T}.
inline SlidingBlockCode reverse_code(const SlidingBlockCode& code, const TransposedShift& t) {
    std::vector<Edge> back(t.edge_map.size());
    for (Edge e = 0; e < t.edge_map.size(); ++e) back[t.edge_map[e]] = e;
    Word orig(code.window());
    return SlidingBlockCode::from_function(
        t.shift, t.shift, code.anticipation(), code.memory(), [&](std::span<const Edge> w) {
            for (std::size_t i = 0; i < orig.size(); ++i) orig[i] = back[w[w.size() - 1 - i]];
            return t.edge_map[code(orig)];
        });
}

/// r phi r^-1 with r(x)_i = x_{-i}; memory and anticipation swap.
inline Automorphism reverse_automorphism(const Automorphism& phi, std::uint64_t budget = window_budget()) {
    auto t = transpose_shift(phi.shift());
    return verify_automorphism(reverse_code(phi.forward, t), reverse_code(phi.inverse, t), "reverse(" + phi.name + ")",
                               budget);
}

}  // namespace sftlab
