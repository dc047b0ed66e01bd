#pragma once

// Named example systems and automorphisms.

#include <functional>
#include <string>
#include <vector>

#include "sftlab/block_code.hpp"
#include "sftlab/edge_shift.hpp"

namespace sftlab::builtins {

inline ShiftPtr full_shift(unsigned n) { return build_edge_shift(NonnegIntMatrix::full_shift(n)); }
inline ShiftPtr golden_mean() { return build_edge_shift(NonnegIntMatrix({{1, 1}, {1, 0}})); }
inline ShiftPtr matrix_b() { return build_edge_shift(NonnegIntMatrix({{2, 1}, {1, 2}})); }

inline Automorphism identity(const ShiftPtr& s) {
    auto id = identity_code(s);
    return verify_automorphism(id, id, "identity");
}

inline SlidingBlockCode shift_code(const ShiftPtr& s) {
    return SlidingBlockCode::from_function(s, s, 0, 1, [](std::span<const Edge> w) { return w[1]; });
}

inline SlidingBlockCode inverse_shift_code(const ShiftPtr& s) {
    return SlidingBlockCode::from_function(s, s, 1, 0, [](std::span<const Edge> w) { return w[0]; });
}

inline Automorphism shift(const ShiftPtr& s) {
    return verify_automorphism(shift_code(s), inverse_shift_code(s), "shift");
}

inline Automorphism inverse_shift(const ShiftPtr& s) {
    return verify_automorphism(inverse_shift_code(s), shift_code(s), "inverse_shift");
}

/// Relabels the loops of the full n-shift; perm must be a permutation of 0..n-1.
inline Automorphism full_shift_symbol_permutation(unsigned n, const std::vector<Edge>& perm) {
    auto s = full_shift(n);
    if (perm.size() != n) throw InputError("permutation has the wrong length");
    std::vector<Edge> inv(n, n);
    for (Edge i = 0; i < n; ++i) {
        if (perm[i] >= n || inv[perm[i]] != n) throw InputError("not a permutation");
        inv[perm[i]] = i;
    }
    auto f = SlidingBlockCode::make(s, s, 0, 0, perm);
    auto g = SlidingBlockCode::make(s, s, 0, 0, inv);
    return verify_automorphism(f, g, "full_shift_symbol_permutation");
}

/// Graph automorphism of [[2,1],[1,2]] exchanging the two vertices.
inline Automorphism vertex_swap_b() {
    auto s = matrix_b();
    std::vector<Edge> table(s->num_edges());
    for (Edge e = 0; e < s->num_edges(); ++e) {
        const auto& info = s->edge(e);
        table[e] = s->edge_index(1 - info.source, 1 - info.target, info.copy);
    }
    auto f = SlidingBlockCode::make(s, s, 0, 0, table);
    return verify_automorphism(f, f, "vertex_swap_B");
}

/// f x g acting on the Kronecker product shift, each on its own track.
inline SlidingBlockCode product_code(const SlidingBlockCode& f, const SlidingBlockCode& g, const ShiftPtr& prod) {
    const auto* fac = prod->factors();
    if (fac == nullptr || !fac->left->same_system(*f.source()) || !fac->right->same_system(*g.source()))
        throw ShiftMismatch("product shift does not factor as the codes' shifts");
    const std::size_t m = std::max(f.memory(), g.memory());
    const std::size_t a = std::max(f.anticipation(), g.anticipation());
    const std::size_t nr = fac->right->num_edges();
    Word left(f.window()), right(g.window());
    return SlidingBlockCode::from_function(prod, prod, m, a, [&](std::span<const Edge> w) {
        for (std::size_t i = 0; i < left.size(); ++i) left[i] = fac->split[w[m - f.memory() + i]].first;
        for (std::size_t i = 0; i < right.size(); ++i) right[i] = fac->split[w[m - g.memory() + i]].second;
        return fac->join[f(left) * nr + g(right)];
    });
}

inline Automorphism product(const Automorphism& f, const Automorphism& g) {
    auto prod = kronecker_product(f.shift(), g.shift());
    return verify_automorphism(product_code(f.forward, g.forward, prod), product_code(f.inverse, g.inverse, prod),
                               "product(" + f.name + "," + g.name + ")");
}

/// Identity on the first track, inverse shift on the second, over golden x golden.
inline Automorphism tau_golden() {
    auto g = golden_mean();
    auto t = product(identity(g), inverse_shift(g));
    t.name = "tau_golden";
    return t;
}

inline Automorphism sigma_x_sigma_inv(const ShiftPtr& base) {
    auto t = product(shift(base), inverse_shift(base));
    t.name = "sigma_x_sigma_inv";
    return t;
}

inline Automorphism sigma_x_sigma_inv() { return sigma_x_sigma_inv(full_shift(2)); }

// Five-symbol example on the full 5-shift. Loop 2a+b carries the pair (a,b); loop 4 is c.
inline constexpr Edge kFiveC = 4;
inline constexpr int kSwapCompletion = 5;

/// Completion values 0..4 send c(a,b)c to that constant symbol; kSwapCompletion sends it to (b,a).
inline std::string five_symbol_completion_name(int completion) {
    return completion == kSwapCompletion ? "swap" : std::to_string(completion);
}

inline SlidingBlockCode five_symbol_code(int completion) {
    if (completion < 0 || completion > kSwapCompletion) throw InputError("five_symbol completion must be 0..4 or swap");
    auto s = full_shift(5);
    auto top = [](Edge e) { return e >> 1; };
    auto bottom = [](Edge e) { return e & 1u; };
    auto pair = [](Edge a, Edge b) { return static_cast<Edge>(2 * a + b); };
    return SlidingBlockCode::from_function(s, s, 1, 1, [&](std::span<const Edge> w) -> Edge {
        const Edge l = w[0], x = w[1], r = w[2];
        if (x == kFiveC) return kFiveC;
        if (l == kFiveC && r == kFiveC)
            return completion == kSwapCompletion ? pair(bottom(x), top(x)) : static_cast<Edge>(completion);
        if (l == kFiveC) return pair(top(r), top(x));
        if (r == kFiveC) return pair(bottom(x), bottom(l));
        return pair(top(r), bottom(l));
    });
}

inline Automorphism five_symbol(int completion, int r_max = 3) {
    auto f = five_symbol_code(completion);
    try {
        return automorphism_with_inferred_inverse(f, r_max, "five_symbol[" + five_symbol_completion_name(completion) + "]");
    } catch (const NotInvertibleWithin&) {
        // An isolated c x c block maps to c f(cxc) c, so a collision there is a non-injectivity witness.
        for (Edge x = 0; x < 4; ++x)
            for (Edge y = x + 1; y < 4; ++y)
                if (f(Word{kFiveC, x, kFiveC}) == f(Word{kFiveC, y, kFiveC}))
                    throw NotInverse("five_symbol completion " + five_symbol_completion_name(completion) +
                                         " identifies c(x)c with c(y)c",
                                     {kFiveC, x, kFiveC, kFiveC, y, kFiveC});
        throw NotInverse("five_symbol completion " + five_symbol_completion_name(completion) +
                             " has no inverse within radius " + std::to_string(r_max),
                         {});
    }
}

/// phi followed by sigma^k.
inline Automorphism shift_composed(const Automorphism& phi, long long k) {
    auto s = power_automorphism(shift(phi.shift()), k);
    auto out = compose_automorphisms(s, phi);
    out.name = "shift^" + std::to_string(k) + "*" + phi.name;
    return out;
}

struct NamedAutomorphism {
    std::string name;
    std::function<Automorphism()> make;
};

/// Every builtin automorphism in a fixed order, for sweeps.
inline std::vector<NamedAutomorphism> catalog() {
    return {
        {"identity_golden", [] { return identity(golden_mean()); }},
        {"shift_full2", [] { return shift(full_shift(2)); }},
        {"inverse_shift_full2", [] { return inverse_shift(full_shift(2)); }},
        {"shift_golden", [] { return shift(golden_mean()); }},
        {"shift_B", [] { return shift(matrix_b()); }},
        {"symbol_permutation_full3", [] { return full_shift_symbol_permutation(3, {1, 2, 0}); }},
        {"vertex_swap_B", [] { return vertex_swap_b(); }},
        {"tau_golden", [] { return tau_golden(); }},
        {"sigma_x_sigma_inv", [] { return sigma_x_sigma_inv(); }},
        {"five_symbol_swap", [] { return five_symbol(kSwapCompletion); }},
    };
}

}  // namespace sftlab::builtins
