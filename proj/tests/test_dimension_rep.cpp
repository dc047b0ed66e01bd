#include <gtest/gtest.h>

#include <numbers>

#include "sftlab/builtins.hpp"
#include "sftlab/dimension_rep.hpp"

using namespace sftlab;
namespace bi = sftlab::builtins;

namespace {

const double kPhi = std::numbers::phi;

QMatrix q(std::initializer_list<std::initializer_list<long long>> rows) {
    QMatrix m(rows.size(), rows.begin()->size());
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (long long v : r) m(i, j++) = Rational(v);
        ++i;
    }
    return m;
}

std::vector<ShiftPtr> systems() { return {bi::full_shift(2), bi::full_shift(3), bi::golden_mean(), bi::matrix_b()}; }

}  // namespace

TEST(Ray, CanonicalFormIsUnique) {
    auto f2 = bi::full_shift(2);
    // ...0101 0 and ...1010 with transient "0" describe the same tail.
    auto a = make_ray(*f2, 0, {0, 1}, {0});
    auto b = make_ray(*f2, 0, {1, 0}, {});
    EXPECT_EQ(a, b);
    auto c = make_ray(*f2, 0, {1, 1, 1}, {});
    EXPECT_EQ(c.cycle.size(), 1u);
    EXPECT_EQ(a.at(0), 0u);
    EXPECT_EQ(a.at(-1), 1u);
    EXPECT_EQ(a.at(-4), 0u);
    EXPECT_THROW(make_ray(*bi::golden_mean(), 0, {2}, {}), InadmissibleWord);
}

TEST(Theta, Examples) {
    auto f2 = bi::full_shift(2);
    auto dim = dimension_data(*f2);
    auto r = canonical_ray(*f2, 0);
    EXPECT_EQ(theta(single_ray_beam(*f2, r), dim), QVector{Rational(1)});

    auto g = bi::golden_mean();
    auto gd = dimension_data(*g);
    auto r1 = canonical_ray(*g, 1);
    // delta^{-2}(e_1 A^2) computed independently in ambient coordinates: A^2 = [[2,1],[1,1]],
    // and delta is A itself on R(A) = Q^2, so the result is e_1.
    EXPECT_EQ(gd.ambient(theta(single_ray_beam(*g, r1), gd)), (QVector{Rational(0), Rational(1)}));

    auto alt = alternative_ray(*f2, 0);
    ASSERT_TRUE(alt.has_value());
    EXPECT_NE(*alt, r);
    auto two = make_beam(*f2, 0, {r, *alt});
    EXPECT_EQ(theta(two, dim), QVector{Rational(2)});
}

TEST(Refine, Examples) {
    auto f2 = bi::full_shift(2);
    EXPECT_EQ(refine_ray(*f2, canonical_ray(*f2, 0), 1).size(), 2u);
    auto g = bi::golden_mean();
    EXPECT_EQ(refine_ray(*g, canonical_ray(*g, 0), 1).size(), 2u);
    EXPECT_EQ(refine_ray(*g, canonical_ray(*g, 1), 1).size(), 1u);
}

TEST(Refine, ThetaIsLevelIndependent) {
    for (const auto& s : systems()) {
        auto dim = dimension_data(*s);
        for (State i = 0; i < s->num_states(); ++i) {
            auto r = canonical_ray(*s, i);
            auto base = theta(single_ray_beam(*s, r), dim);
            for (long long L = 0; L <= 4; ++L) EXPECT_EQ(theta(refine_ray(*s, r, L), dim), base);
        }
    }
}

TEST(ImageBeam, Examples) {
    auto f2 = bi::full_shift(2);
    auto sigma = bi::shift(f2);
    auto r = canonical_ray(*f2, 0);
    auto img = apply_automorphism_to_ray(sigma, 1, r);
    EXPECT_EQ(img.level, -1);
    EXPECT_EQ(img.size(), 1u);
    auto refined = refine_beam(*f2, img, 0);
    EXPECT_EQ(refined.size(), 2u);
    EXPECT_EQ(refined.counts, std::vector<long long>{2});

    auto g = bi::golden_mean();
    auto rg = canonical_ray(*g, 1);
    auto same = apply_automorphism_to_ray(bi::identity(g), 1, rg);
    EXPECT_EQ(same.level, 0);
    ASSERT_EQ(same.size(), 1u);
    EXPECT_EQ(same.rays.front(), rg);

    auto swap = bi::vertex_swap_b();
    const auto& b = *swap.shift();
    auto rb = canonical_ray(b, 0);
    auto sb = apply_automorphism_to_ray(swap, 1, rb);
    EXPECT_EQ(sb.level, 0);
    ASSERT_EQ(sb.size(), 1u);
    EXPECT_EQ(b.target(sb.rays.front().last()), 1u);
}

TEST(ImageBeam, AgreesWithPointwiseImagesOnAWindow) {
    // phi^n(R(x,0)) restricted to coordinates in [-6, L] equals the set of phi^n images of
    // sampled points of R(x,0), read on the same window.
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        const auto& s = *phi.shift();
        for (long long n = 1; n <= 2; ++n) {
            auto code = power(phi, n);
            for (State i = 0; i < s.num_states(); ++i) {
                auto r = canonical_ray(s, i);
                auto beam = apply_automorphism_to_ray(phi, n, r);
                std::set<Word> from_beam;
                for (const auto& ray : beam.rays) {
                    Word w;
                    for (long long c = -6; c <= beam.level; ++c) w.push_back(ray.at(c));
                    from_beam.insert(w);
                }
                const long long m = static_cast<long long>(code.memory());
                const long long a = static_cast<long long>(code.anticipation());
                const long long lo = -6 - m, hi = beam.level + a;
                std::set<Word> direct;
                detail::for_each_extension(s, s.target(r.last()), static_cast<std::size_t>(std::max(0LL, hi)),
                                           [&](const Word& ext) {
                                               Word in;
                                               for (long long c = lo; c <= hi; ++c)
                                                   in.push_back(c <= 0 ? r.at(c) : ext[static_cast<std::size_t>(c - 1)]);
                                               Word out = apply_to_word(code, in);
                                               direct.insert(out);
                                           });
                EXPECT_EQ(from_beam, direct) << named.name << " n=" << n << " state " << i;
            }
        }
    }
}

TEST(ImageBeam, RayCountBound) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        const auto& s = *phi.shift();
        for (long long n = 1; n <= 3; ++n) {
            auto c = coding_ranges(phi, n);
            const long long bound_len = c.w_minus_inv <= 0 ? std::abs(c.w_minus_inv) - c.w_minus
                                                           : std::abs(c.w_minus) - c.w_minus_inv;
            ASSERT_GE(bound_len, 0);
            const BigInt bound = count_words(s, static_cast<std::size_t>(bound_len));
            for (State i = 0; i < s.num_states(); ++i) {
                auto beam = apply_automorphism_to_ray(phi, n, canonical_ray(s, i));
                EXPECT_LE(BigInt(beam.size()), bound) << named.name << " n=" << n;
            }
        }
    }
}

TEST(ImageBeam, WellDefinedOnAlternativeRays) {
    for (auto phi : {bi::shift(bi::golden_mean()), bi::vertex_swap_b(), bi::shift(bi::matrix_b()), bi::tau_golden()}) {
        const auto& s = *phi.shift();
        auto dim = dimension_data(s);
        for (State i = 0; i < s.num_states(); ++i) {
            auto alt = alternative_ray(s, i);
            ASSERT_TRUE(alt.has_value());
            EXPECT_EQ(theta(apply_automorphism_to_ray(phi, 1, canonical_ray(s, i)), dim),
                      theta(apply_automorphism_to_ray(phi, 1, *alt), dim))
                << phi.name << " state " << i;
        }
    }
}

TEST(DimensionMatrix, VertexSwap) {
    auto act = dimension_matrix(bi::vertex_swap_b());
    EXPECT_EQ(act.S, q({{0, 1}, {1, 0}}));
    EXPECT_NEAR(act.lambda_phi, 1.0, 1e-9);
    EXPECT_FALSE(act.inert);
    EXPECT_EQ(act.order_if_finite, 2);
}

TEST(DimensionMatrix, ShiftActsAsDelta) {
    for (const auto& s : systems()) {
        auto act = dimension_matrix(bi::shift(s));
        EXPECT_EQ(act.S, dimension_data(*s).delta);
        EXPECT_NEAR(act.lambda_phi, perron_data(*s).lambda, 1e-9);
    }
    auto id = dimension_matrix(bi::identity(bi::golden_mean()));
    EXPECT_TRUE(id.inert);
    EXPECT_EQ(id.order_if_finite, 1);
}

TEST(DimensionMatrix, TauGolden) {
    auto act = dimension_matrix(bi::tau_golden());
    EXPECT_NEAR(act.rho, kPhi, 1e-9);
    EXPECT_NEAR(act.lambda_phi, 1.0 / kPhi, 1e-9);
    EXPECT_FALSE(act.order_if_finite.has_value());
}

TEST(DimensionMatrix, Functoriality) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        if (phi.name.find("identity") != std::string::npos) continue;
        auto s1 = dimension_matrix(phi).S;
        auto s2 = dimension_matrix(power_automorphism(phi, 2)).S;
        auto sinv = dimension_matrix(phi.inverted()).S;
        EXPECT_EQ(s2, s1 * s1) << named.name;
        EXPECT_EQ(s1 * sinv, QMatrix::identity(s1.rows())) << named.name;
    }
}

TEST(DimensionMatrix, ReverseActionMatchesInverseSpectrally) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        auto rev = dimension_matrix(reverse_automorphism(phi));
        auto inv = dimension_matrix(phi.inverted());
        EXPECT_NEAR(rev.rho, inv.rho, 1e-9) << named.name;
    }
}

TEST(Measure, ExamplesAndPairing) {
    auto f2 = bi::full_shift(2);
    auto p = perron_data(*f2);
    auto dim = dimension_data(*f2);
    auto r = canonical_ray(*f2, 0);
    EXPECT_NEAR(unstable_measure(single_ray_beam(*f2, r), p), 1.0, 1e-12);
    for (long long m = 0; m <= 3; ++m) {
        Ray rm = r;
        rm.level = m;
        EXPECT_NEAR(unstable_measure(single_ray_beam(*f2, rm), p), std::pow(2.0, -static_cast<double>(m)), 1e-12);
    }
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        const auto& s = *phi.shift();
        auto ps = perron_data(s);
        auto ds = dimension_data(s);
        auto act = dimension_matrix(phi, ds, ps);
        for (State i = 0; i < s.num_states(); ++i) {
            auto u = single_ray_beam(s, canonical_ray(s, i));
            auto img = apply_automorphism_to_ray(phi, 1, u.rays.front());
            const double mu = unstable_measure(u, ps), mu_img = unstable_measure(img, ps);
            EXPECT_NEAR(mu_img / mu, act.lambda_phi, 1e-6) << named.name;
            EXPECT_NEAR(mu, pairing(theta(u, ds), ds, ps), 1e-9);
            EXPECT_NEAR(mu_img, pairing(theta(img, ds), ds, ps), 1e-9);
        }
    }
}

TEST(MainBounds, ShiftOnFullTwo) {
    auto f2 = bi::full_shift(2);
    auto sigma = bi::shift(f2);
    MainBoundsInput in;
    in.name = "sigma";
    in.phi = lyapunov_bounds(sigma, 3);
    in.inverse = lyapunov_bounds(sigma.inverted(), 3);
    in.log_rho = std::log(dimension_matrix(sigma).rho);
    in.log_rho_reverse = std::log(dimension_matrix(reverse_automorphism(sigma)).rho);
    in.h = std::log(2.0);
    in.log_rho_minus = std::log(dimension_data(*f2).rho_minus);
    auto rep = verify_main_bounds(in);
    EXPECT_FALSE(rep.any_violated());
    for (const auto& c : rep.checks()) EXPECT_EQ(c.status, Status::Confirmed) << c.name << " " << c.detail;
    EXPECT_NEAR(*rep.checks()[0].lhs, *rep.checks()[0].rhs_lo, 1e-9);
    // The form with rho(S_phi) on the plus side does not hold for sigma.
    EXPECT_NE(rep.checks()[1].detail.find("fails"), std::string::npos);
}

TEST(MainBounds, VacuousAndUndecidedHypotheses) {
    MainBoundsInput in;
    in.name = "synthetic";
    in.h = std::log(2.0);
    in.log_rho_minus = std::log(0.5);
    in.phi.alpha_minus = {Rational(-1), Rational(1)};
    in.phi.alpha_plus = {Rational(0), Rational(1)};
    in.inverse.alpha_minus = {Rational(-1), Rational(1)};
    in.inverse.alpha_plus = {Rational(1), Rational(2)};
    auto rep = verify_main_bounds(in);
    EXPECT_EQ(rep.checks()[2].status, Status::Inconclusive);
    EXPECT_EQ(rep.checks()[3].status, Status::Confirmed);
    EXPECT_NE(rep.checks()[3].detail.find("vacuous"), std::string::npos);
}

TEST(MainBounds, ViolationIsReported) {
    MainBoundsInput in;
    in.name = "fabricated";
    in.h = std::log(2.0);
    in.log_rho_minus = -std::log(2.0);
    in.phi.alpha_minus = in.phi.alpha_plus = {Rational(-1), Rational(-1)};
    in.inverse.alpha_minus = in.inverse.alpha_plus = {Rational(1), Rational(1)};
    in.log_rho = 2.0;  // far above log 2
    auto rep = verify_main_bounds(in);
    EXPECT_EQ(rep.checks()[0].status, Status::Violated);
    EXPECT_TRUE(rep.any_violated());
}

TEST(MainBounds, UnitCircle) {
    auto id = bi::identity(bi::golden_mean());
    MainBoundsInput in;
    in.name = "identity";
    in.phi = lyapunov_bounds(id, 2);
    in.inverse = lyapunov_bounds(id.inverted(), 2);
    auto act = dimension_matrix(id);
    in.spectrum = act.spectrum;
    in.h = std::log(kPhi);
    in.log_rho_minus = std::log(dimension_data(*id.shift()).rho_minus);
    auto rep = verify_main_bounds(in);
    EXPECT_EQ(rep.checks().back().name, "identity: unit circle, all |eigenvalues of S_phi| = 1");
    EXPECT_EQ(rep.checks().back().status, Status::Confirmed);
    auto d = distortion_spectrum_check(act);
    EXPECT_TRUE(d.log_rho_zero);
    EXPECT_TRUE(d.on_unit_circle);
    auto ds = distortion_spectrum_check(dimension_matrix(bi::shift(bi::full_shift(2))));
    EXPECT_FALSE(ds.log_rho_zero);
}

TEST(EntropyBound, Examples) {
    EXPECT_EQ(verify_entropy_bound("sigma", 2.0, std::log(2.0), true).status, Status::Confirmed);
    EXPECT_EQ(verify_entropy_bound("sigma", 2.0, std::log(3.0), false).status, Status::Consistent);
    EXPECT_EQ(verify_entropy_bound("x", 8.0, std::log(2.0), true).status, Status::Inconclusive);
}
