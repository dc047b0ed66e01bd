#include <gtest/gtest.h>

#include "sftlab/builtins.hpp"
#include "sftlab/coding_range.hpp"
#include "support.hpp"

using namespace sftlab;
namespace bi = sftlab::builtins;
using sftlab::testing::naive_coded;

namespace {

// W^- by scanning the naive oracle directly (no ceiling tricks).
long long naive_w_minus(const SlidingBlockCode& c) {
    long long j = -static_cast<long long>(c.anticipation()) + 1;
    while (naive_coded(c, j, false)) ++j;
    return j - 1;
}

long long naive_w_plus(const SlidingBlockCode& c) {
    long long j = static_cast<long long>(c.memory()) - 1;
    while (naive_coded(c, j, true)) --j;
    return j + 1;
}

}  // namespace

TEST(CodedMinus, Examples) {
    auto f2 = bi::full_shift(2);
    auto s = bi::shift_code(f2);
    EXPECT_TRUE(coded_minus(s, -1));
    EXPECT_FALSE(coded_minus(s, 0));
    auto id = identity_code(bi::golden_mean());
    for (long long j = -3; j <= 0; ++j) EXPECT_TRUE(coded_minus(id, j));
    EXPECT_FALSE(coded_minus(id, 1));
    auto tau2 = power(bi::tau_golden(), 2);
    EXPECT_TRUE(coded_minus(tau2, 0));
    EXPECT_TRUE(naive_coded(tau2, 0, false));
}

TEST(CodedPlus, Examples) {
    auto f2 = bi::full_shift(2);
    EXPECT_TRUE(coded_plus(bi::shift_code(f2), -1));
    EXPECT_FALSE(coded_plus(bi::inverse_shift_code(f2), 0));
    EXPECT_TRUE(coded_plus(bi::inverse_shift_code(f2), 1));
    for (int c = 0; c <= bi::kSwapCompletion; ++c) EXPECT_TRUE(coded_plus(bi::five_symbol_code(c), 1)) << c;
}

TEST(WValues, ShiftOnFullTwo) {
    auto sigma = bi::shift(bi::full_shift(2));
    for (long long n = 1; n <= 4; ++n) {
        auto [wm, wp] = W_values(sigma, n);
        EXPECT_EQ(wm, -n);
        EXPECT_EQ(wp, -n);
    }
}

TEST(WValues, Identity) {
    auto id = bi::identity(bi::golden_mean());
    for (long long n = 1; n <= 3; ++n) EXPECT_EQ(W_values(id, n), std::make_pair(0LL, 0LL));
}

TEST(WValues, TauGolden) {
    auto tau = bi::tau_golden();
    for (long long n = 1; n <= 3; ++n) {
        auto c = coding_ranges(tau, n);
        EXPECT_EQ(c.w_minus, 0);
        EXPECT_EQ(c.w_plus, n);
        EXPECT_EQ(c.w_minus_inv, -n);
        EXPECT_EQ(c.w_plus_inv, 0);
        // independent route: naive scans on the power codes
        EXPECT_EQ(naive_w_minus(power(tau, n)), 0);
        EXPECT_EQ(naive_w_plus(power(tau, n)), n);
        EXPECT_EQ(naive_w_minus(power(tau, -n)), -n);
    }
}

TEST(WValues, RejectsZeroEntropy) {
    auto s = build_edge_shift(NonnegIntMatrix({{0, 1}, {1, 0}}));
    EXPECT_THROW(coding_ranges(bi::identity(s), 1), PreconditionFailed);
}

TEST(LyapunovBounds, Examples) {
    auto b = lyapunov_bounds(bi::shift(bi::full_shift(2)), 3);
    EXPECT_TRUE(b.alpha_minus.is_point(Rational(-1)));
    EXPECT_TRUE(b.alpha_plus.is_point(Rational(-1)));
    EXPECT_EQ(b.verdict, DistortionVerdict::CertifiedNotDistorted);

    auto tau = bi::tau_golden();
    auto p = coding_range_profile(tau, 4);
    // Finite data alone gives [0,1] and [-1,0]; the product-form closed form pins them.
    auto bt = lyapunov_bounds(p);
    EXPECT_EQ(bt.alpha_minus.lo, 0);
    EXPECT_EQ(bt.alpha_minus.hi, 1);
    EXPECT_EQ(bt.alpha_plus.lo, 0);
    EXPECT_EQ(bt.alpha_plus.hi, 1);
    auto bi_ = lyapunov_bounds(p.inverted());
    EXPECT_EQ(bi_.alpha_minus.lo, -1);
    EXPECT_EQ(bi_.alpha_minus.hi, 0);

    auto id = lyapunov_bounds(bi::identity(bi::golden_mean()), 3);
    EXPECT_TRUE(id.alpha_minus.is_point(Rational(0)));
    EXPECT_TRUE(id.alpha_plus.is_point(Rational(0)));
    EXPECT_EQ(id.verdict, DistortionVerdict::ConsistentWithDistortion);
}

TEST(Reverse, Examples) {
    auto f2 = bi::full_shift(2);
    auto rs = reverse_automorphism(bi::shift(f2));
    EXPECT_EQ(rs.forward.memory(), 1u);
    EXPECT_EQ(rs.forward.anticipation(), 0u);
    EXPECT_TRUE(behaviorally_equal(rs.forward, bi::inverse_shift_code(f2)));

    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        auto back = reverse_automorphism(reverse_automorphism(phi));
        EXPECT_TRUE(behaviorally_equal(back.forward, phi.forward)) << named.name;
    }
    auto swap = bi::vertex_swap_b();
    EXPECT_TRUE(behaviorally_equal(reverse_automorphism(swap).forward, swap.forward));
}

TEST(CodingRangeProperties, CatalogInequalitiesAndReverseIdentity) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        const std::size_t n_max = 3;
        auto p = coding_range_profile(phi, n_max);
        auto rp = coding_range_profile(reverse_automorphism(phi), n_max);
        for (std::size_t n = 1; n <= n_max; ++n) {
            SCOPED_TRACE(named.name + " n=" + std::to_string(n));
            EXPECT_LE(p.w_minus[n - 1] + p.w_minus_inv[n - 1], 0);
            EXPECT_GE(p.w_plus[n - 1] + p.w_plus_inv[n - 1], 0);
            EXPECT_GE(p.a_minus(n), 0);
            EXPECT_GE(p.a_plus(n), 0);
            EXPECT_EQ(rp.w_minus[n - 1], -p.w_plus[n - 1]);
            EXPECT_EQ(rp.w_plus[n - 1], -p.w_minus[n - 1]);
            for (std::size_t q = 1; n + q <= n_max; ++q) {
                EXPECT_GE(p.w_minus[n + q - 1], p.w_minus[n - 1] + p.w_minus[q - 1]);
                EXPECT_LE(p.w_plus[n + q - 1], p.w_plus[n - 1] + p.w_plus[q - 1]);
                EXPECT_GE(p.w_minus_inv[n + q - 1], p.w_minus_inv[n - 1] + p.w_minus_inv[q - 1]);
            }
        }
    }
}

TEST(CodingRangeProperties, ScanAgreesWithNaiveOnSmallBuiltins) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        if (phi.shift()->num_edges() > 4) continue;
        for (long long n = 1; n <= 2; ++n) {
            auto c = coding_ranges(phi, n);
            EXPECT_EQ(c.w_minus, naive_w_minus(power(phi, n))) << named.name;
            EXPECT_EQ(c.w_plus, naive_w_plus(power(phi, n))) << named.name;
        }
    }
}

TEST(CodedOracle, AgreesWithPairEnumeration) {
    std::mt19937 rng(2024);
    std::vector<ShiftPtr> systems{
        bi::full_shift(2),
        bi::full_shift(3),
        bi::full_shift(4),
        bi::golden_mean(),
        build_edge_shift(NonnegIntMatrix({{1, 1}, {1, 1}})),
        build_edge_shift(NonnegIntMatrix({{1, 2}, {1, 0}})),
        build_edge_shift(NonnegIntMatrix({{1, 1}, {0, 1}})),
        build_edge_shift(NonnegIntMatrix({{0, 2}, {1, 0}})),
    };
    int discrepancies = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto& s = systems[trial % systems.size()];
        std::uniform_int_distribution<std::size_t> dm(0, 3);
        std::size_t m = dm(rng), a = dm(rng);
        while (m + a + 1 > 5) (m > a ? m : a)--;
        auto code = sftlab::testing::random_code(s, m, a, rng);
        std::uniform_int_distribution<long long> dj(-4, 4);
        long long j = dj(rng);
        if (coded_minus(code, j) != naive_coded(code, j, false)) ++discrepancies;
        if (coded_plus(code, j) != naive_coded(code, j, true)) ++discrepancies;
    }
    EXPECT_EQ(discrepancies, 0);
}
