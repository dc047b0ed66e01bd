#pragma once

// Desk-scale entropy tools for automorphisms: spacetime column counts, the C^phi(n)
// counter, invariant subsystems and product-form recognition.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sftlab/block_code.hpp"
#include "sftlab/coding_range.hpp"
#include "sftlab/edge_shift.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

/// A code that acts as sigma^offset: output at i is input at i + offset.
inline std::optional<long long> shift_power_offset(const SlidingBlockCode& code) {
    const auto m = static_cast<long long>(code.memory());
    const auto a = static_cast<long long>(code.anticipation());
    if (!code.target()->same_system(*code.source())) return std::nullopt;
    WordIndexer idx(code.source(), code.window());
    for (long long o = -m; o <= a; ++o) {
        bool match = true;
        idx.for_each([&](const Word& w, std::uint64_t r) {
            match = code.table()[r] == w[static_cast<std::size_t>(m + o)];
            return match;
        });
        if (match) return o;
    }
    return std::nullopt;
}

/// phi = f x g on a recorded Kronecker product.
struct ProductForm {
    Automorphism left;
    Automorphism right;
    std::optional<long long> left_power;   // f = sigma^a when present
    std::optional<long long> right_power;  // g = sigma^b when present
    std::optional<double> exact_entropy;   // |a| h_L + |b| h_R for sigma^a x sigma^b
};

namespace detail {

// Splits a product code track-wise; nullopt when a track's output depends on the other track.
inline std::optional<std::pair<SlidingBlockCode, SlidingBlockCode>> split_code(const SlidingBlockCode& code,
                                                                               const ProductFactors& fac,
                                                                               std::uint64_t budget) {
    constexpr Edge kUnset = std::numeric_limits<Edge>::max();
    const std::size_t win = code.window();
    auto li = checked_indexer(fac.left, win, budget);
    auto ri = checked_indexer(fac.right, win, budget);
    std::vector<Edge> lt(li->size(), kUnset), rt(ri->size(), kUnset);
    Word lw(win), rw(win);
    bool ok = true;
    WordIndexer(code.source(), win).for_each([&](const Word& w, std::uint64_t r) {
        for (std::size_t i = 0; i < win; ++i) std::tie(lw[i], rw[i]) = fac.split[w[i]];
        auto [lo, ro] = fac.split[code.table()[r]];
        Edge& ls = lt[li->rank(lw)];
        Edge& rs = rt[ri->rank(rw)];
        if (ls == kUnset) ls = lo;
        if (rs == kUnset) rs = ro;
        ok = ls == lo && rs == ro;
        return ok;
    });
    if (!ok) return std::nullopt;
    // Factor windows that never occur in a product window (only possible for factors with
    // dead ends) have no determined output; they make the factor code ill-defined.
    if (std::find(lt.begin(), lt.end(), kUnset) != lt.end() || std::find(rt.begin(), rt.end(), kUnset) != rt.end())
        return std::nullopt;
    try {
        return std::make_pair(SlidingBlockCode::make(fac.left, fac.left, code.memory(), code.anticipation(), lt, budget),
                              SlidingBlockCode::make(fac.right, fac.right, code.memory(), code.anticipation(), rt, budget));
    } catch (const InputError&) {
        return std::nullopt;
    }
}

}  // namespace detail

inline std::optional<ProductForm> recognize_product_form(const Automorphism& phi, std::uint64_t budget = window_budget()) {
    const auto* fac = phi.shift()->factors();
    if (fac == nullptr) return std::nullopt;
    auto fwd = detail::split_code(phi.forward, *fac, budget);
    auto inv = detail::split_code(phi.inverse, *fac, budget);
    if (!fwd || !inv) return std::nullopt;
    ProductForm pf{verify_automorphism(fwd->first, inv->first, phi.name + ".left", budget),
                   verify_automorphism(fwd->second, inv->second, phi.name + ".right", budget)};
    pf.left_power = shift_power_offset(pf.left.forward);
    pf.right_power = shift_power_offset(pf.right.forward);
    if (pf.left_power && pf.right_power)
        pf.exact_entropy = static_cast<double>(std::abs(*pf.left_power)) * topological_entropy(*fac->left) +
                           static_cast<double>(std::abs(*pf.right_power)) * topological_entropy(*fac->right);
    return pf;
}

/// Pins alpha^+- of sigma^a x sigma^b (both factors irreducible with positive entropy):
/// W^-(n) = -n max(a,b) and W^+(n) = -n min(a,b). The closed form must lie inside the
/// finite-n intervals; anything else is a bug.
inline std::optional<LyapunovBounds> refine_lyapunov(const LyapunovBounds& finite, const ProductForm& pf) {
    if (!pf.left_power || !pf.right_power) return std::nullopt;
    for (const auto* s : {pf.left.shift().get(), pf.right.shift().get()})
        if (!s->irreducible() || !s->positive_entropy()) return std::nullopt;
    const Rational am(-std::max(*pf.left_power, *pf.right_power));
    const Rational ap(-std::min(*pf.left_power, *pf.right_power));
    if (!finite.alpha_minus.contains(am) || !finite.alpha_plus.contains(ap))
        throw InternalInvariantViolation("product-form exponents fall outside the certified finite-n intervals");
    LyapunovBounds out;
    out.alpha_minus = {am, am, 0, 0};
    out.alpha_plus = {ap, ap, 0, 0};
    out.method = "product-form";
    out.update_verdict();
    return out;
}

/// Finite-n bounds, pinned by the product form when one is recognized.
inline LyapunovBounds best_lyapunov_bounds(const Automorphism& phi, std::size_t n_max,
                                           std::uint64_t budget = window_budget()) {
    auto finite = lyapunov_bounds(phi, n_max, budget);
    if (auto pf = recognize_product_form(phi, budget))
        if (auto pinned = refine_lyapunov(finite, *pf)) return *pinned;
    return finite;
}

struct ColumnCensus {
    std::size_t w = 0;
    std::size_t n = 0;
    BigInt count = 0;
    double estimate = 0;  // (1/n) log count
    bool certified = false;
    std::string method = "enumeration";

    nlohmann::json to_json() const {
        return {{"w", w},           {"n", n},
                {"count", count.str()}, {"estimate", estimate},
                {"certified", certified}, {"method", method}};
    }
};

namespace detail {

inline ColumnCensus enumerate_census(const Automorphism& phi, std::size_t w, std::size_t n, std::uint64_t budget) {
    if (n == 0) throw InputError("census needs n >= 1");
    const SlidingBlockCode& code = phi.forward;
    const std::size_t m = code.memory(), a = code.anticipation();
    const std::size_t width = 2 * w + 1;
    const std::size_t len = width + (n - 1) * (m + a);
    auto idx = checked_indexer(phi.shift(), len, budget);
    std::set<Word> columns;
    Word key;
    key.reserve(width * n);
    idx->for_each([&](const Word& word, std::uint64_t) {
        if (!phi.shift()->word_extendable(word)) return;
        key.clear();
        Word cur = word;
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) cur = apply_to_word(code, cur);
            const std::size_t off = (n - 1 - i) * m;
            key.insert(key.end(), cur.begin() + static_cast<std::ptrdiff_t>(off),
                       cur.begin() + static_cast<std::ptrdiff_t>(off + width));
        }
        columns.insert(key);
    });
    ColumnCensus c{w, n, BigInt(columns.size())};
    c.estimate = std::log(static_cast<double>(columns.size())) / static_cast<double>(n);
    return c;
}

}  // namespace detail

/// D(w,n): distinct columns (x|[-w,w], phi(x)|[-w,w], ..., phi^{n-1}(x)|[-w,w]).
/// Recognized product forms are counted factor by factor, D = D_left * D_right.
inline ColumnCensus column_census(const Automorphism& phi, std::size_t w, std::size_t n,
                                  std::uint64_t budget = window_budget(), bool use_product_form = true) {
    if (use_product_form) {
        if (auto pf = recognize_product_form(phi, budget)) {
            auto l = detail::enumerate_census(pf->left, w, n, budget);
            auto r = detail::enumerate_census(pf->right, w, n, budget);
            ColumnCensus c{w, n, l.count * r.count};
            c.estimate = l.estimate + r.estimate;
            c.method = "product-form";
            return c;
        }
    }
    return detail::enumerate_census(phi, w, n, budget);
}

struct CPhiCount {
    std::size_t n = 0;
    long long k = 0;      // = -W^-(n, phi^-1)
    std::size_t r = 0;    // max(memory, anticipation)
    BigInt count = 0;
    double log_rate = 0;  // (1/n) log count

    /// Finite-n comparison with log lambda_phi; the limit inequality is asymptotic,
    /// so this is a flag, never a failure.
    std::string diagnostic(double lambda_phi) const {
        const double l = std::log(lambda_phi);
        return "(1/n) log card C^phi(" + std::to_string(n) + ") = " + std::to_string(log_rate) +
               (l <= log_rate ? " >= " : " < (finite n) ") + "log lambda_phi = " + std::to_string(l);
    }
};

namespace detail {

template <typename Collect>
CPhiCount c_phi_impl(const Automorphism& phi, std::size_t n, std::uint64_t budget, Collect collect) {
    if (n == 0) throw InputError("C^phi(n) needs n >= 1");
    const SlidingBlockCode& code = phi.forward;
    const std::size_t m = code.memory(), a = code.anticipation();
    CPhiCount out;
    out.n = n;
    out.k = -coding_ranges(phi, static_cast<long long>(n), budget).w_minus_inv;
    out.r = std::max(m, a);
    const std::size_t width = 2 * out.r + 2;
    // The window [k - nM, k + 2r + 1 + nA'] is translation invariant, so k only labels it.
    auto idx = checked_indexer(phi.shift(), width + n * (m + a), budget);
    std::vector<Word> iterates;
    idx->for_each([&](const Word& word, std::uint64_t) {
        if (!phi.shift()->word_extendable(word)) return;
        iterates.clear();
        Word cur = word;
        for (std::size_t i = 0; i <= n; ++i) {
            if (i > 0) cur = apply_to_word(code, cur);
            const std::size_t off = (n - i) * m;
            iterates.emplace_back(cur.begin() + static_cast<std::ptrdiff_t>(off),
                                  cur.begin() + static_cast<std::ptrdiff_t>(off + width));
        }
        collect(iterates);
    });
    return out;
}

}  // namespace detail

/// card C^phi(n): distinct sets {phi^i(y)|[k, k+2r+1] : 0 <= i <= n} over all y.
inline CPhiCount c_phi_count(const Automorphism& phi, std::size_t n, std::uint64_t budget = window_budget()) {
    std::set<std::set<Word>> sets;
    auto out = detail::c_phi_impl(phi, n, budget, [&](const std::vector<Word>& it) {
        sets.insert(std::set<Word>(it.begin(), it.end()));
    });
    out.count = BigInt(sets.size());
    out.log_rate = std::log(static_cast<double>(sets.size())) / static_cast<double>(n);
    return out;
}

/// Ordered-tuple variant of c_phi_count, for diagnostics.
inline CPhiCount c_phi_tuple_count(const Automorphism& phi, std::size_t n, std::uint64_t budget = window_budget()) {
    std::set<std::vector<Word>> tuples;
    auto out = detail::c_phi_impl(phi, n, budget, [&](const std::vector<Word>& it) { tuples.insert(it); });
    out.count = BigInt(tuples.size());
    out.log_rate = std::log(static_cast<double>(tuples.size())) / static_cast<double>(n);
    return out;
}

/// The edge shift on a subset of edges, with the maps between edge labels.
struct SubShift {
    ShiftPtr shift;
    std::vector<Edge> to_ambient;                  // sub edge -> ambient edge
    std::vector<std::optional<Edge>> from_ambient;  // ambient edge -> sub edge
};

inline SubShift edge_subshift(const EdgeShift& s, const std::vector<Edge>& allowed_edges) {
    std::vector<bool> keep(s.num_edges(), false);
    for (Edge e : allowed_edges) {
        if (e >= s.num_edges()) throw InputError("allowed edge " + std::to_string(e) + " does not exist");
        keep[e] = true;
    }
    std::vector<std::optional<State>> state_map(s.num_states());
    std::vector<State> states;
    for (Edge e = 0; e < s.num_edges(); ++e)
        if (keep[e])
            for (State st : {s.edge(e).source, s.edge(e).target}) state_map[st] = st;
    for (State st = 0; st < s.num_states(); ++st)
        if (state_map[st]) {
            state_map[st] = static_cast<State>(states.size());
            states.push_back(st);
        }
    if (states.empty()) throw InputError("no edges allowed");
    std::vector<std::vector<long long>> m(states.size(), std::vector<long long>(states.size(), 0));
    for (Edge e = 0; e < s.num_edges(); ++e)
        if (keep[e]) ++m[*state_map[s.edge(e).source]][*state_map[s.edge(e).target]];
    SubShift out{build_edge_shift(NonnegIntMatrix(std::move(m))), {}, std::vector<std::optional<Edge>>(s.num_edges())};
    bool has_point = false;
    for (State st = 0; st < out.shift->num_states(); ++st)
        has_point = has_point || (out.shift->has_past(st) && out.shift->has_future(st));
    if (!has_point) throw InputError("allowed edges carry no bi-infinite path");
    // Ambient edges are ordered by (source, target, copy); so are the kept ones.
    out.to_ambient.resize(out.shift->num_edges());
    std::map<std::pair<State, State>, std::uint32_t> copies;
    for (Edge e = 0; e < s.num_edges(); ++e) {
        if (!keep[e]) continue;
        State a = *state_map[s.edge(e).source], b = *state_map[s.edge(e).target];
        Edge se = out.shift->edge_index(a, b, copies[{a, b}]++);
        out.to_ambient[se] = e;
        out.from_ambient[e] = se;
    }
    return out;
}

namespace detail {

inline SlidingBlockCode restrict_code(const SlidingBlockCode& code, const SubShift& sub, const char* label,
                                      std::uint64_t budget) {
    Word amb(code.window());
    return SlidingBlockCode::from_function(sub.shift, sub.shift, code.memory(), code.anticipation(),
                                           [&](std::span<const Edge> w) {
                                               for (std::size_t i = 0; i < w.size(); ++i) amb[i] = sub.to_ambient[w[i]];
                                               Edge out = code(amb);
                                               if (!sub.from_ambient[out])
                                                   throw NotInvariant(std::string(label) + " leaves the subsystem", amb);
                                               return *sub.from_ambient[out];
                                           },
                                           budget);
}

}  // namespace detail

struct Subsystem {
    SubShift sub;
    Automorphism restricted;
};

/// phi restricted to the points using only allowed edges; phi and phi^-1 must both
/// preserve it window by window.
inline Subsystem restrict_to_subsystem(const Automorphism& phi, const std::vector<Edge>& allowed_edges,
                                       std::uint64_t budget = window_budget()) {
    auto sub = edge_subshift(*phi.shift(), allowed_edges);
    auto f = detail::restrict_code(phi.forward, sub, "forward code", budget);
    auto g = detail::restrict_code(phi.inverse, sub, "inverse code", budget);
    return {sub, verify_automorphism(f, g, phi.name + "|Y", budget)};
}

/// Same, for a code with no known inverse: the inverse is inferred on the subsystem.
inline Subsystem restrict_to_subsystem(const SlidingBlockCode& code, const std::vector<Edge>& allowed_edges,
                                       int r_max = 3, std::uint64_t budget = window_budget()) {
    auto sub = edge_subshift(*code.source(), allowed_edges);
    auto f = detail::restrict_code(code, sub, "code", budget);
    return {sub, automorphism_with_inferred_inverse(f, r_max, "restriction", budget)};
}

/// Transports phi along an edge relabelling onto an edge shift with the same adjacency.
inline Automorphism transport(const Automorphism& phi, const ShiftPtr& target, const std::vector<Edge>& edge_map,
                              std::uint64_t budget = window_budget()) {
    const auto& s = *phi.shift();
    if (edge_map.size() != s.num_edges() || target->num_edges() != s.num_edges())
        throw ShiftMismatch("edge relabelling has the wrong size");
    std::vector<Edge> back(edge_map.size());
    for (Edge e = 0; e < edge_map.size(); ++e) back[edge_map[e]] = e;
    auto move = [&](const SlidingBlockCode& code) {
        Word orig(code.window());
        return SlidingBlockCode::from_function(target, target, code.memory(), code.anticipation(),
                                               [&](std::span<const Edge> w) {
                                                   for (std::size_t i = 0; i < w.size(); ++i) orig[i] = back[w[i]];
                                                   return edge_map[code(orig)];
                                               },
                                               budget);
    };
    return verify_automorphism(move(phi.forward), move(phi.inverse), phi.name, budget);
}

}  // namespace sftlab
