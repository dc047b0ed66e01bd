#include <gtest/gtest.h>

#include <random>

#include "sftlab/block_code.hpp"
#include "sftlab/builtins.hpp"

using namespace sftlab;
namespace bi = sftlab::builtins;

namespace {

Word random_word(const EdgeShift& s, std::size_t len, std::mt19937& rng) {
    Word w;
    std::uniform_int_distribution<Edge> first(0, static_cast<Edge>(s.num_edges() - 1));
    w.push_back(first(rng));
    while (w.size() < len) {
        auto out = s.out_edges(s.target(w.back()));
        std::uniform_int_distribution<std::size_t> pick(0, out.size() - 1);
        w.push_back(out[pick(rng)]);
    }
    return w;
}

SlidingBlockCode xor_code() {
    auto s = bi::full_shift(2);
    return SlidingBlockCode::from_function(s, s, 0, 1, [](std::span<const Edge> w) { return w[0] ^ w[1]; });
}

}  // namespace

TEST(ApplyToWord, Examples) {
    auto g = bi::golden_mean();
    Word w{0, 1, 2, 0, 0};
    EXPECT_EQ(apply_to_word(identity_code(g), w), w);

    auto f2 = bi::full_shift(2);
    EXPECT_EQ(apply_to_word(bi::shift_code(f2), Word{0, 1, 1, 0}), (Word{1, 1, 0}));

    auto five = bi::five_symbol_code(0);
    EXPECT_EQ(apply_to_word(five, Word{4, 1, 2}), (Word{2}));  // c (0,1) (1,0) -> (1,0)
}

TEST(ApplyToWord, Errors) {
    auto g = bi::golden_mean();
    EXPECT_THROW(apply_to_word(bi::shift_code(g), Word{0}), WordTooShort);
    EXPECT_THROW(apply_to_word(identity_code(g), Word{1, 1}), InadmissibleWord);
}

TEST(SlidingBlockCode, RejectsNonChainingTable) {
    auto g = bi::golden_mean();
    // constant edge 1 (0 -> 1) cannot follow itself
    EXPECT_THROW(SlidingBlockCode::make(g, g, 0, 0, {1, 1, 1}), InputError);
    EXPECT_THROW(SlidingBlockCode::make(g, g, 0, 0, {0, 1}), InputError);
}

TEST(Compose, Examples) {
    auto f2 = bi::full_shift(2);
    auto s2 = compose(bi::shift_code(f2), bi::shift_code(f2));
    EXPECT_EQ(s2.memory(), 0u);
    EXPECT_EQ(s2.anticipation(), 2u);
    EXPECT_EQ(apply_to_word(s2, Word{0, 1, 1, 0}), (Word{1, 0}));

    auto five = bi::five_symbol_code(bi::kSwapCompletion);
    EXPECT_EQ(compose(identity_code(five.source()), five).table(), five.table());
    auto sq = compose(five, five);
    EXPECT_EQ(sq.memory(), 2u);
    EXPECT_EQ(sq.anticipation(), 2u);
    EXPECT_EQ(sq(Word(5, bi::kFiveC)), bi::kFiveC);
}

TEST(Compose, MismatchThrows) {
    EXPECT_THROW(compose(bi::shift_code(bi::full_shift(2)), bi::shift_code(bi::golden_mean())), ShiftMismatch);
}

TEST(Compose, AssociativeOnTables) {
    auto g = bi::golden_mean();
    auto s = bi::shift_code(g), t = bi::inverse_shift_code(g);
    auto tau = bi::tau_golden();
    EXPECT_EQ(compose(compose(s, t), s).table(), compose(s, compose(t, s)).table());
    EXPECT_EQ(compose(compose(tau.forward, tau.inverse), tau.forward).table(),
              compose(tau.forward, compose(tau.inverse, tau.forward)).table());
}

TEST(Compose, AgreesWithPointwiseComposition) {
    std::mt19937 rng(7);
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        auto f = phi.forward, g = phi.inverse;
        auto fg = compose(f, g);
        for (int trial = 0; trial < 30; ++trial) {
            auto w = random_word(*phi.shift(), fg.window() + 6, rng);
            EXPECT_EQ(apply_to_word(fg, w), apply_to_word(f, apply_to_word(g, w))) << named.name;
        }
    }
}

TEST(Compose, CommutesWithShift) {
    std::mt19937 rng(11);
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        for (int trial = 0; trial < 20; ++trial) {
            auto w = random_word(*phi.shift(), phi.forward.window() + 8, rng);
            auto out = apply_to_word(phi.forward, w);
            Word tail(w.begin() + 1, w.end());
            auto shifted = apply_to_word(phi.forward, tail);
            EXPECT_EQ(shifted, Word(out.begin() + 1, out.end())) << named.name;
        }
    }
}

TEST(Compose, BudgetIsEnforced) {
    auto five = bi::five_symbol_code(bi::kSwapCompletion);
    EXPECT_THROW(compose(five, five, 1000), WindowBudgetExceeded);
}

TEST(Power, Examples) {
    auto f2 = bi::full_shift(2);
    auto sigma = bi::shift(f2);
    auto p3 = power(sigma, 3);
    EXPECT_EQ(p3.memory(), 0u);
    EXPECT_EQ(p3.anticipation(), 3u);
    EXPECT_EQ(apply_to_word(p3, Word{0, 0, 1, 1, 0, 1}), (Word{1, 0, 1}));
    EXPECT_EQ(power(sigma, 1).table(), sigma.forward.table());
    EXPECT_EQ(power(sigma, -1).table(), sigma.inverse.table());
    EXPECT_TRUE(behaviorally_equal(power(sigma, 0), identity_code(f2)));
}

TEST(Power, PowersAreMutuallyInverse) {
    for (const auto& named : bi::catalog())
        for (long long n = 1; n <= 2; ++n) {
            auto phi = named.make();
            EXPECT_NO_THROW(verify_automorphism(power(phi, n), power(phi, -n))) << named.name << " n=" << n;
        }
}

TEST(VerifyAutomorphism, Examples) {
    auto f2 = bi::full_shift(2);
    EXPECT_NO_THROW(verify_automorphism(bi::shift_code(f2), bi::inverse_shift_code(f2)));
    try {
        verify_automorphism(bi::shift_code(f2), bi::shift_code(f2));
        FAIL() << "expected NotInverse";
    } catch (const NotInverse& e) {
        EXPECT_FALSE(e.witness().empty());
    }
    auto swap = bi::vertex_swap_b();
    EXPECT_NO_THROW(verify_automorphism(swap.forward, swap.forward));
    EXPECT_EQ(swap.forward.table(), swap.inverse.table());
}

TEST(InferInverse, Examples) {
    auto f2 = bi::full_shift(2);
    auto inv = infer_inverse(bi::shift_code(f2), 1);
    EXPECT_TRUE(behaviorally_equal(inv, bi::inverse_shift_code(f2)));
    EXPECT_THROW(infer_inverse(xor_code(), 2), NotInvertibleWithin);
    auto swap = bi::vertex_swap_b();
    auto sinv = infer_inverse(swap.forward, 0);
    EXPECT_EQ(sinv.window(), 1u);
    EXPECT_EQ(sinv.table(), swap.forward.table());
}

TEST(InferInverse, XorIsTwoToOneOnWords) {
    // brute force: each length-3 image word has exactly two length-4 preimages
    auto code = xor_code();
    std::map<Word, int> preimages;
    WordIndexer(code.source(), 4).for_each([&](const Word& w, std::uint64_t) { ++preimages[apply_to_word(code, w)]; });
    EXPECT_EQ(preimages.size(), 8u);
    for (const auto& [k, v] : preimages) EXPECT_EQ(v, 2);
}

TEST(InferInverse, ReproducesStoredInverseBehaviorally) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        auto inv = infer_inverse(phi.forward, 3);
        EXPECT_TRUE(behaviorally_equal(inv, phi.inverse)) << named.name;
    }
}

TEST(Builtins, VertexSwapIsOrderTwo) {
    auto swap = bi::vertex_swap_b();
    EXPECT_TRUE(behaviorally_equal(compose(swap.forward, swap.forward), identity_code(swap.shift())));
    EXPECT_FALSE(behaviorally_equal(swap.forward, identity_code(swap.shift())));
}

TEST(Builtins, TauActsTrackwise) {
    auto tau = bi::tau_golden();
    const auto* fac = tau.shift()->factors();
    ASSERT_NE(fac, nullptr);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto w = random_word(*tau.shift(), 10, rng);
        auto out = apply_to_word(tau.forward, w);
        for (std::size_t i = 0; i < out.size(); ++i) {
            // output i reads window [i, i+1] with memory 1: track 1 at i+1, track 2 at i
            EXPECT_EQ(fac->split[out[i]].first, fac->split[w[i + 1]].first);
            EXPECT_EQ(fac->split[out[i]].second, fac->split[w[i]].second);
        }
    }
}

TEST(Builtins, FiveSymbolRuleTable) {
    auto code = bi::five_symbol_code(bi::kSwapCompletion);
    auto pair = [](Edge a, Edge b) { return 2 * a + b; };
    for (Edge l = 0; l < 5; ++l)
        for (Edge r = 0; r < 5; ++r) EXPECT_EQ(code(Word{l, 4, r}), 4u);
    for (Edge x = 0; x < 4; ++x)
        for (Edge y = 0; y < 4; ++y) {
            EXPECT_EQ(code(Word{4, x, y}), pair(y >> 1, x >> 1));
            EXPECT_EQ(code(Word{x, y, 4}), pair(y & 1, x & 1));
            for (Edge z = 0; z < 4; ++z) EXPECT_EQ(code(Word{x, y, z}), pair(z >> 1, x & 1));
        }
}

TEST(Builtins, FiveSymbolCompletions) {
    for (int c = 0; c < 5; ++c) EXPECT_THROW(bi::five_symbol(c), NotInverse) << c;
    auto phi = bi::five_symbol(bi::kSwapCompletion);
    EXPECT_TRUE(phi.certificate.inferred_inverse);
}

TEST(Builtins, UnknownPermutationRejected) {
    EXPECT_THROW(bi::full_shift_symbol_permutation(3, {0, 0, 1}), InputError);
}
