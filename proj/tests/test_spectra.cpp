#include <gtest/gtest.h>

#include "sftlab/builtins.hpp"
#include "sftlab/spectra.hpp"

using namespace sftlab;

namespace {

IntPolynomial poly(std::initializer_list<long long> c) {
    IntPolynomial p;
    for (long long v : c) p.emplace_back(v);
    return p;
}

const IntPolynomial kCubic = poly({1, -5, -6, 1});

// tr(A^k) computed as an exact matrix power.
BigInt matrix_trace_power(const NonnegIntMatrix& m, unsigned k) {
    auto p = m.to_zmatrix().pow(k);
    BigInt t = 0;
    for (std::size_t i = 0; i < p.rows(); ++i) t += p(i, i);
    return t;
}

NonnegIntMatrix permuted(const NonnegIntMatrix& m, const std::vector<std::size_t>& perm) {
    std::vector<std::vector<long long>> rows(m.size(), std::vector<long long>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) rows[perm[i]][perm[j]] = m(i, j);
    return NonnegIntMatrix(std::move(rows));
}

}  // namespace

TEST(PowerTraces, Examples) {
    auto t = power_traces(poly({1, -2}), 5);
    for (unsigned k = 1; k <= 5; ++k) EXPECT_EQ(t[k - 1], BigInt(1) << k);
    auto l = power_traces(poly({1, -1, -1}), 3);
    EXPECT_EQ(l, (std::vector<BigInt>{1, 3, 4}));
    auto c = power_traces(kCubic, 2);
    EXPECT_EQ(c[0], 5);
    EXPECT_EQ(c[1], 37);
    EXPECT_THROW(power_traces(poly({2, 1}), 3), NonMonic);
}

TEST(PowerTraces, AgreeWithRootPowerSums) {
    // Independent route: sum of k-th powers of numerically computed roots.
    for (const auto& p : {kCubic, poly({1, -1, -1}), poly({1, 0, -3, 1}), poly({1, -2, 0, 0, 1})}) {
        auto tr = power_traces(p, 8);
        std::vector<long double> coeffs;
        for (const auto& c : p) coeffs.push_back(c.convert_to<long double>());
        auto roots = polynomial_roots(coeffs);
        for (unsigned k = 1; k <= 8; ++k) {
            std::complex<double> s = 0;
            for (const auto& z : roots) s += std::pow(z, static_cast<int>(k));
            EXPECT_NEAR(s.real(), tr[k - 1].convert_to<double>(), 1e-6 * std::max(1.0, std::abs(s)));
        }
    }
}

TEST(Mobius, FirstThirtyByDefinition) {
    for (long long n = 1; n <= 30; ++n) {
        int primes = 0;
        bool squarefree = true;
        long long m = n;
        for (long long q = 2; q <= m; ++q) {
            int e = 0;
            while (m % q == 0) {
                m /= q;
                ++e;
            }
            if (e > 1) squarefree = false;
            if (e == 1) ++primes;
        }
        EXPECT_EQ(mobius(n), squarefree ? (primes % 2 ? -1 : 1) : 0) << n;
    }
}

TEST(Conditions, Examples) {
    auto two = check_conditions(poly({1, -2}), 6);
    EXPECT_EQ(two.perron, Verdict::Holds);
    EXPECT_EQ(two.net_trace, Verdict::Holds);
    EXPECT_EQ(two.nets[1], 2);
    EXPECT_EQ(two.reciprocal, Verdict::Fails);

    auto c = check_conditions(kCubic, 12);
    EXPECT_EQ(c.perron, Verdict::Holds);
    EXPECT_GT(c.lambda_d, 5.9);
    EXPECT_LT(c.lambda_d, 6.0);
    EXPECT_EQ(c.net_trace, Verdict::Holds);
    EXPECT_EQ(c.nets[1], 32);
    EXPECT_EQ(c.reciprocal, Verdict::Holds);
    EXPECT_NEAR(c.min_modulus, 0.149, 1e-3);
    EXPECT_GT(1.0 / c.min_modulus, c.lambda_d);

    EXPECT_EQ(check_conditions(poly({1, 0, 1})).perron, Verdict::Fails);
    EXPECT_EQ(check_conditions(poly({1, -4, 4})).perron, Verdict::Fails);  // (t-2)^2
    EXPECT_THROW(check_conditions(poly({1, -2, 0})), ZeroConstantTerm);
    EXPECT_THROW(check_conditions(poly({3, 1})), NonMonic);
}

TEST(Conditions, NetTracesOfBuiltinMatricesAreNonnegative) {
    for (auto m : {NonnegIntMatrix({{1, 1}, {1, 0}}), NonnegIntMatrix({{2, 1}, {1, 2}}), NonnegIntMatrix({{2}}),
                   NonnegIntMatrix({{0, 1}, {1, 0}}), NonnegIntMatrix({{1, 1, 0}, {0, 0, 1}, {1, 0, 0}})}) {
        std::vector<BigInt> tr;
        for (unsigned k = 1; k <= 12; ++k) tr.push_back(matrix_trace_power(m, k));
        for (const auto& q : net_traces(tr)) EXPECT_GE(q, 0);
    }
}

TEST(Search, SmallExamples) {
    auto two = search_primitive_realization(poly({1, -2}));
    ASSERT_TRUE(two.matrix);
    EXPECT_EQ(*two.matrix, NonnegIntMatrix({{2}}));
    auto g = search_primitive_realization(poly({1, -1, -1}));
    ASSERT_TRUE(g.matrix);
    EXPECT_EQ(*g.matrix, NonnegIntMatrix({{1, 1}, {1, 0}}));
    EXPECT_EQ(g.method, "companion");
    EXPECT_THROW(search_primitive_realization(poly({1, 0, 1})), PreconditionFailed);
}

TEST(Search, CubicRealizationIsExactAndDeterministic) {
    auto r = search_primitive_realization(kCubic);
    ASSERT_TRUE(r.matrix) << r.method;
    EXPECT_EQ(r.method, "exhaustive");
    const auto& m = *r.matrix;
    EXPECT_TRUE(build_edge_shift(m)->primitive());
    IntPolynomial cp = kCubic;
    cp.resize(m.size() + 1, 0);
    EXPECT_EQ(integer_char_poly(m), cp);
    auto tr = power_traces(kCubic, 8);
    for (unsigned k = 1; k <= 8; ++k) EXPECT_EQ(matrix_trace_power(m, k), tr[k - 1]);
    auto again = search_primitive_realization(kCubic);
    EXPECT_EQ(*again.matrix, m);

    auto eb = verify_eb_failure(m);
    EXPECT_EQ(eb.status, Status::Confirmed);
    const double gap = *eb.lhs - *eb.rhs_lo;
    auto c = check_conditions(kCubic);
    EXPECT_NEAR(gap, std::log(1.0 / c.min_modulus) - std::log(c.lambda_d), 1e-9);
}

TEST(EbFailure, Examples) {
    EXPECT_EQ(verify_eb_failure(NonnegIntMatrix({{2}})).status, Status::Consistent);
    EXPECT_EQ(verify_eb_failure(NonnegIntMatrix({{1, 1}, {1, 0}})).status, Status::NotStrict);
    EXPECT_THROW(verify_eb_failure(NonnegIntMatrix({{0, 1}, {1, 0}})), NotPrimitive);
}

TEST(EbFailure, InvariantUnderTransposeAndPermutation) {
    const NonnegIntMatrix m({{0, 1, 0}, {1, 0, 1}, {4, 5, 5}});
    auto base = verify_eb_failure(m);
    auto t = verify_eb_failure(m.transpose());
    EXPECT_EQ(t.status, base.status);
    EXPECT_NEAR(*t.lhs, *base.lhs, 1e-9);
    for (const std::vector<std::size_t>& perm : {std::vector<std::size_t>{1, 2, 0}, std::vector<std::size_t>{2, 0, 1}}) {
        auto p = verify_eb_failure(permuted(m, perm));
        EXPECT_EQ(p.status, base.status);
        EXPECT_NEAR(*p.lhs, *base.lhs, 1e-9);
    }
}
