#pragma once

// Sliding block codes between edge shifts, stored as dense rule tables indexed by
// the lexicographic rank of the input window, plus automorphism certification.

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sftlab/edge_shift.hpp"
#include "sftlab/errors.hpp"

namespace sftlab {

inline constexpr std::uint64_t kDefaultWindowBudget = 50'000'000;

/// Window budget, honoring SFTLAB_BUDGET when set to a positive number.
inline std::uint64_t window_budget() {
    if (const char* env = std::getenv("SFTLAB_BUDGET")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v >= 1) return static_cast<std::uint64_t>(v);
    }
    return kDefaultWindowBudget;
}

inline bool budget_overridden() { return std::getenv("SFTLAB_BUDGET") != nullptr; }

inline std::shared_ptr<const WordIndexer> checked_indexer(const ShiftPtr& shift, std::size_t length,
                                                          std::uint64_t budget) {
    auto idx = std::make_shared<const WordIndexer>(shift, length);
    if (idx->size() > budget) throw WindowBudgetExceeded(idx->size(), budget);
    return idx;
}

/// Output at coordinate i reads input coordinates [i - memory, i + anticipation].
class SlidingBlockCode {
public:
    SlidingBlockCode() = default;

    /// Validating factory: table must be total over admissible windows, hit target edges,
    /// and chain (consecutive windows give consecutive target edges).
    static SlidingBlockCode make(ShiftPtr source, ShiftPtr target, std::size_t memory, std::size_t anticipation,
                                 std::vector<Edge> table, std::uint64_t budget = window_budget()) {
        auto idx = checked_indexer(source, memory + anticipation + 1, budget);
        if (table.size() != idx->size())
            throw InputError("rule table has " + std::to_string(table.size()) + " entries, expected " +
                             std::to_string(idx->size()));
        for (Edge e : table)
            if (e >= target->num_edges()) throw InputError("rule output is not an edge of the target shift");
        SlidingBlockCode c(std::move(source), std::move(target), memory, anticipation, std::move(idx),
                           std::move(table));
        c.check_composable();
        return c;
    }

    template <typename F>
    static SlidingBlockCode from_function(ShiftPtr source, ShiftPtr target, std::size_t memory,
                                          std::size_t anticipation, F&& rule, std::uint64_t budget = window_budget()) {
        auto idx = checked_indexer(source, memory + anticipation + 1, budget);
        std::vector<Edge> table(idx->size());
        idx->for_each([&](const Word& w, std::uint64_t r) { table[r] = rule(std::span<const Edge>(w)); });
        return make(std::move(source), std::move(target), memory, anticipation, std::move(table), budget);
    }

    /// No validation; for tables produced by operations that preserve the invariants.
    static SlidingBlockCode unchecked(ShiftPtr source, ShiftPtr target, std::size_t memory, std::size_t anticipation,
                                      std::shared_ptr<const WordIndexer> idx, std::vector<Edge> table) {
        return SlidingBlockCode(std::move(source), std::move(target), memory, anticipation, std::move(idx),
                                std::move(table));
    }

    const ShiftPtr& source() const noexcept { return source_; }
    const ShiftPtr& target() const noexcept { return target_; }
    std::size_t memory() const noexcept { return memory_; }
    std::size_t anticipation() const noexcept { return anticipation_; }
    std::size_t window() const noexcept { return memory_ + anticipation_ + 1; }
    std::size_t range() const noexcept { return std::max(memory_, anticipation_); }
    const WordIndexer& indexer() const { return *indexer_; }
    const std::vector<Edge>& table() const noexcept { return table_; }

    /// Rule on an admissible window, unchecked.
    Edge operator()(std::span<const Edge> window) const { return table_[indexer_->rank(window)]; }

    Edge lookup(std::span<const Edge> window) const {
        if (window.size() != this->window()) throw WordTooShort("window has the wrong length");
        if (!source_->is_admissible(window)) throw InadmissibleWord("window is not admissible");
        return (*this)(window);
    }

    Edge at_rank(std::uint64_t r) const { return table_[r]; }

private:
    SlidingBlockCode(ShiftPtr source, ShiftPtr target, std::size_t memory, std::size_t anticipation,
                     std::shared_ptr<const WordIndexer> idx, std::vector<Edge> table)
        : source_(std::move(source)), target_(std::move(target)), memory_(memory), anticipation_(anticipation),
          indexer_(std::move(idx)), table_(std::move(table)) {}

    void check_composable() const {
        const std::size_t len = window();
        WordIndexer longer(source_, len + 1);
        longer.for_each([&](const Word& w, std::uint64_t) {
            std::span<const Edge> s(w);
            Edge a = (*this)(s.first(len));
            Edge b = (*this)(s.subspan(1));
            if (target_->target(a) != target_->source(b))
                throw InputError("rule outputs on consecutive windows do not chain");
        });
    }

    ShiftPtr source_;
    ShiftPtr target_;
    std::size_t memory_ = 0;
    std::size_t anticipation_ = 0;
    std::shared_ptr<const WordIndexer> indexer_;
    std::vector<Edge> table_;
};

/// Output position i is the rule applied to input window [i, i + m + a].
inline Word apply_to_word(const SlidingBlockCode& code, std::span<const Edge> w) {
    if (w.size() < code.window()) throw WordTooShort("word shorter than the code window");
    if (!code.source()->is_admissible(w)) throw InadmissibleWord("word is not admissible in the source shift");
    Word out(w.size() - code.window() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = code(w.subspan(i, code.window()));
    return out;
}

inline SlidingBlockCode identity_code(const ShiftPtr& shift) {
    return SlidingBlockCode::from_function(shift, shift, 0, 0, [](std::span<const Edge> w) { return w[0]; });
}

/// outer after inner; memories add and anticipations add.
inline SlidingBlockCode compose(const SlidingBlockCode& outer, const SlidingBlockCode& inner,
                                std::uint64_t budget = window_budget()) {
    if (!inner.target()->same_system(*outer.source()))
        throw ShiftMismatch("compose: inner target differs from outer source");
    const std::size_t m = outer.memory() + inner.memory();
    const std::size_t a = outer.anticipation() + inner.anticipation();
    auto idx = checked_indexer(inner.source(), m + a + 1, budget);
    std::vector<Edge> table(idx->size());
    Word mid(outer.window());
    const std::size_t lw = inner.window();
    idx->for_each([&](const Word& w, std::uint64_t r) {
        std::span<const Edge> s(w);
        for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = inner(s.subspan(i, lw));
        table[r] = outer(mid);
    });
    return SlidingBlockCode::unchecked(inner.source(), outer.target(), m, a, std::move(idx), std::move(table));
}

/// Record of the finite checks behind an automorphism.
struct Certificate {
    std::size_t window = 0;           // composed window length checked
    std::uint64_t words_checked = 0;  // both directions
    bool inferred_inverse = false;
};

struct Automorphism {
    std::string name;
    SlidingBlockCode forward;
    SlidingBlockCode inverse;
    Certificate certificate;

    const ShiftPtr& shift() const { return forward.source(); }
    Automorphism inverted() const {
        return {name.empty() ? std::string() : name + "^-1", inverse, forward, certificate};
    }
};

namespace detail {

// Checks g(f(x)) = x at the centre of every admissible window of the composed length.
inline std::uint64_t check_left_inverse(const SlidingBlockCode& f, const SlidingBlockCode& g, const char* label,
                                        std::uint64_t budget) {
    const std::size_t m = f.memory() + g.memory();
    const std::size_t len = m + f.anticipation() + g.anticipation() + 1;
    auto idx = checked_indexer(f.source(), len, budget);
    Word mid(g.window());
    idx->for_each([&](const Word& w, std::uint64_t) {
        std::span<const Edge> s(w);
        for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = f(s.subspan(i, f.window()));
        if (g(mid) != w[m])
            throw NotInverse(std::string(label) + " is not the identity on the witness window",
                             std::vector<std::uint32_t>(w.begin(), w.end()));
    });
    return idx->size();
}

}  // namespace detail

inline Automorphism verify_automorphism(const SlidingBlockCode& f, const SlidingBlockCode& g, std::string name = {},
                                        std::uint64_t budget = window_budget()) {
    const auto& s = f.source();
    if (!f.target()->same_system(*s) || !g.source()->same_system(*s) || !g.target()->same_system(*s))
        throw ShiftMismatch("automorphism codes must map one shift to itself");
    Certificate cert;
    cert.window = f.window() + g.window() - 1;
    cert.words_checked = detail::check_left_inverse(f, g, "inverse after forward", budget);
    cert.words_checked += detail::check_left_inverse(g, f, "forward after inverse", budget);
    return {std::move(name), f, g, cert};
}

/// Searches for an inverse with memory = anticipation = R for R = 0..r_max.
/// Semi-decision: failure means non-invertible or r_max too small.
inline SlidingBlockCode infer_inverse(const SlidingBlockCode& code, int r_max, std::uint64_t budget = window_budget()) {
    const auto& s = code.source();
    if (!code.target()->same_system(*s)) throw ShiftMismatch("infer_inverse needs an endomorphism");
    constexpr Edge kUnset = std::numeric_limits<Edge>::max();
    for (int rr = 0; rr <= r_max; ++rr) {
        const auto r = static_cast<std::size_t>(rr);
        const std::size_t out_len = 2 * r + 1;
        auto out_idx = checked_indexer(s, out_len, budget);
        auto in_idx = checked_indexer(s, out_len + code.memory() + code.anticipation(), budget);
        std::vector<Edge> table(out_idx->size(), kUnset);
        bool ok = true;
        Word out(out_len);
        in_idx->for_each([&](const Word& w, std::uint64_t) {
            std::span<const Edge> sp(w);
            for (std::size_t i = 0; i < out_len; ++i) out[i] = code(sp.subspan(i, code.window()));
            Edge centre = w[r + code.memory()];
            Edge& slot = table[out_idx->rank(out)];
            if (slot == kUnset) slot = centre;
            ok = slot == centre;
            return ok;
        });
        if (!ok) continue;
        if (std::find(table.begin(), table.end(), kUnset) != table.end()) continue;
        SlidingBlockCode inv;
        try {
            inv = SlidingBlockCode::make(s, s, r, r, std::move(table), budget);
            verify_automorphism(code, inv, {}, budget);
        } catch (const InputError&) {
            continue;
        } catch (const NotInverse&) {
            continue;
        }
        return inv;
    }
    throw NotInvertibleWithin(r_max);
}

inline Automorphism automorphism_with_inferred_inverse(const SlidingBlockCode& f, int r_max, std::string name = {},
                                                       std::uint64_t budget = window_budget()) {
    auto a = verify_automorphism(f, infer_inverse(f, r_max, budget), std::move(name), budget);
    a.certificate.inferred_inverse = true;
    return a;
}

/// phi^n as one code: forward for n > 0, inverse for n < 0, identity for n = 0.
inline SlidingBlockCode power(const Automorphism& phi, long long n, std::uint64_t budget = window_budget()) {
    if (n == 0) return identity_code(phi.shift());
    const SlidingBlockCode& base = n > 0 ? phi.forward : phi.inverse;
    SlidingBlockCode acc = base;
    for (long long i = 1; i < (n > 0 ? n : -n); ++i) acc = compose(base, acc, budget);
    return acc;
}

inline Automorphism power_automorphism(const Automorphism& phi, long long n, std::uint64_t budget = window_budget()) {
    Automorphism out{phi.name + "^" + std::to_string(n), power(phi, n, budget), power(phi, -n, budget),
                     phi.certificate};
    out.certificate.window = out.forward.window() + out.inverse.window() - 1;
    return out;
}

/// outer after inner, with the inverse composed in reverse order. Both are already certified.
inline Automorphism compose_automorphisms(const Automorphism& outer, const Automorphism& inner,
                                          std::uint64_t budget = window_budget()) {
    Automorphism out{outer.name + "*" + inner.name, compose(outer.forward, inner.forward, budget),
                     compose(inner.inverse, outer.inverse, budget), {}};
    out.certificate.window = out.forward.window() + out.inverse.window() - 1;
    return out;
}

/// Agreement on every admissible word of the union window.
inline bool behaviorally_equal(const SlidingBlockCode& f, const SlidingBlockCode& g) {
    if (!f.source()->same_system(*g.source()) || !f.target()->same_system(*g.target())) return false;
    const std::size_t m = std::max(f.memory(), g.memory());
    const std::size_t a = std::max(f.anticipation(), g.anticipation());
    WordIndexer idx(f.source(), m + a + 1);
    bool equal = true;
    idx.for_each([&](const Word& w, std::uint64_t) {
        std::span<const Edge> s(w);
        equal = f(s.subspan(m - f.memory(), f.window())) == g(s.subspan(m - g.memory(), g.window()));
        return equal;
    });
    return equal;
}

}  // namespace sftlab
