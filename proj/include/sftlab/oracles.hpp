#pragma once

// Brute-force oracles and random generators used by the tests and the acceptance suite.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "sftlab/block_code.hpp"
#include "sftlab/edge_shift.hpp"

namespace sftlab::oracles {

inline Word random_word(const EdgeShift& s, std::size_t len, std::mt19937& rng) {
    Word w;
    std::uniform_int_distribution<Edge> first(0, static_cast<Edge>(s.num_edges() - 1));
    w.push_back(first(rng));
    while (w.size() < len) {
        auto out = s.out_edges(s.target(w.back()));
        if (out.empty()) return random_word(s, len, rng);
        std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
        w.push_back(out[pick(rng)]);
    }
    return w;
}

/// Random code whose output copies the endpoints of one window position and chooses
/// the parallel copy by a random function of the window; always chains.
inline SlidingBlockCode random_code(const ShiftPtr& s, std::size_t m, std::size_t a, std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> pos(0, m + a);
    const std::size_t p = pos(rng);
    return SlidingBlockCode::from_function(s, s, m, a, [&](std::span<const Edge> w) {
        const auto& e = s->edge(w[p]);
        const auto copies = static_cast<std::uint32_t>(s->matrix()(e.source, e.target));
        std::uniform_int_distribution<std::uint32_t> c(0, copies - 1);
        return s->edge_index(e.source, e.target, c(rng));
    });
}

/// All extendable admissible words of a length, by brute force over edge tuples.
inline std::vector<Word> naive_words(const EdgeShift& s, std::size_t len) {
    std::vector<Word> out;
    Word w(len, 0);
    const auto ne = static_cast<Edge>(s.num_edges());
    while (true) {
        if (s.is_admissible(w) && s.word_extendable(w)) out.push_back(w);
        std::size_t i = len;
        while (i > 0 && ++w[i - 1] == ne) w[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

/// Pair-enumeration oracle: does the input on (-inf,0] (plus_side=false) or [0,inf)
/// (plus_side=true) determine output coordinate j?
inline bool naive_coded(const SlidingBlockCode& code, long long j, bool plus_side) {
    const auto m = static_cast<long long>(code.memory());
    const auto a = static_cast<long long>(code.anticipation());
    const long long lo = std::min(j - m, 0LL), hi = std::max(j + a, 0LL);
    std::map<Word, std::set<Edge>> outputs;
    for (const auto& w : naive_words(*code.source(), static_cast<std::size_t>(hi - lo + 1))) {
        const auto zero = static_cast<std::size_t>(-lo);
        Word key = plus_side ? Word(w.begin() + static_cast<std::ptrdiff_t>(zero), w.end())
                             : Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(zero + 1));
        auto start = w.begin() + (j - m - lo);
        outputs[key].insert(code(Word(start, start + static_cast<std::ptrdiff_t>(code.window()))));
    }
    for (const auto& [k, v] : outputs)
        if (v.size() > 1) return false;
    return true;
}

}  // namespace sftlab::oracles
