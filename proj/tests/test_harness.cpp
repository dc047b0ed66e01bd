#include <gtest/gtest.h>

#include <numbers>

#include "sftlab/sftlab.hpp"

using namespace sftlab;
namespace bi = sftlab::builtins;

namespace {

std::string sample(const std::string& name) { return std::string(SFTLAB_SAMPLES_DIR) + "/" + name; }

std::string parse_error_location(const nlohmann::json& j) {
    try {
        parse_system(j);
    } catch (const ParseError& e) {
        return e.location();
    }
    return "<no error>";
}

}  // namespace

TEST(SystemFile, LoadsSamples) {
    auto tau = load_system(sample("tau_golden.json"));
    ASSERT_NE(tau.shift->factors(), nullptr);
    EXPECT_EQ(tau.shift->num_edges(), 9u);
    EXPECT_TRUE(behaviorally_equal(tau.get("tau").forward, bi::tau_golden().forward));
    EXPECT_EQ(tau.names, (std::vector<std::string>{"sigma_x_id", "tau"}));

    auto five = load_system(sample("five_symbol.json"));
    EXPECT_EQ(five.shift->num_edges(), 5u);
    EXPECT_TRUE(behaviorally_equal(five.get("phi").forward, bi::five_symbol(bi::kSwapCompletion).forward));

    auto rule = load_system(sample("rule_table.json"));
    const auto& fs = rule.get("flip_shift");
    EXPECT_TRUE(behaviorally_equal(fs.forward, compose(bi::full_shift_symbol_permutation(2, {1, 0}).forward,
                                                       bi::shift_code(rule.shift))));

    EXPECT_EQ(load_matrix_file(sample("eb_matrix.json")), NonnegIntMatrix({{0, 1, 0}, {1, 0, 1}, {4, 5, 5}}));
    EXPECT_THROW(load_system(sample("missing.json")), InputError);
}

TEST(SystemFile, GoldenMeanBuiltinShift) {
    auto sys = parse_system({{"shift", {{"builtin", "golden_mean"}}}});
    EXPECT_EQ(sys.shift->matrix(), NonnegIntMatrix({{1, 1}, {1, 0}}));
    EXPECT_TRUE(sys.names.empty());
    EXPECT_THROW(sys.get("x"), InputError);
}

TEST(SystemFile, ErrorsCarryLocations) {
    using nlohmann::json;
    EXPECT_EQ(parse_error_location(json::array()), "/");
    EXPECT_EQ(parse_error_location({{"automorphisms", json::object()}}), "/");
    EXPECT_EQ(parse_error_location({{"shift", {{"matrix", {{1, -1}, {1, 0}}}}}}), "/shift/matrix");
    EXPECT_EQ(parse_error_location({{"shift", {{"matrix", {{1, "x"}, {1, 0}}}}}}), "/shift/matrix/0/1");

    // Missing window: only three of the four length-2 words of the full 2-shift.
    json rules = json::array();
    for (int w = 0; w < 3; ++w) rules.push_back({{"window", {w / 2, w % 2}}, {"output", w % 2}});
    json sys{{"shift", {{"full_shift", 2}}},
             {"automorphisms", {{"f", {{"memory", 1}, {"anticipation", 0}, {"rules", rules}}}}}};
    try {
        parse_system(sys);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.location(), "/automorphisms/f/rules");
        EXPECT_NE(std::string(e.what()).find("no rule for window [1,1]"), std::string::npos) << e.what();
    }
    rules.push_back({{"window", {1, 1}}, {"output", 7}});
    EXPECT_EQ(parse_error_location(sys = {{"shift", {{"full_shift", 2}}},
                                          {"automorphisms", {{"f", {{"memory", 1}, {"anticipation", 0}, {"rules", rules}}}}}}),
              "/automorphisms/f/rules/3/output");

    EXPECT_THROW(parse_system({{"shift", {{"builtin", "nope"}}}}), UnknownBuiltin);
    EXPECT_THROW(parse_system({{"shift", {{"full_shift", 2}}}, {"automorphisms", {{"g", {{"builtin", "nope"}}}}}}),
                 UnknownBuiltin);
    EXPECT_EQ(parse_error_location({{"shift", {{"full_shift", 2}}}, {"automorphisms", {{"g", {{"builtin", "tau_golden"}}}}}}),
              "/automorphisms/g");
}

TEST(SystemFile, NonInjectiveRuleTableIsRejected) {
    using nlohmann::json;
    json rules = json::array();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) rules.push_back({{"window", {a, b}}, {"output", a ^ b}});
    json sys{{"shift", {{"full_shift", 2}}},
             {"automorphisms", {{"xor", {{"memory", 1}, {"anticipation", 0}, {"rules", rules}}}}}};
    EXPECT_THROW(parse_system(sys), Error);
}

TEST(SystemFile, EveryBuiltinRoundTrips) {
    for (const auto& named : bi::catalog()) {
        auto phi = named.make();
        auto text = serialize_system(phi.shift(), {{named.name, phi}}).dump();
        auto back = parse_system(nlohmann::json::parse(text));
        const auto& psi = back.get(named.name);
        EXPECT_TRUE(back.shift->same_system(*phi.shift())) << named.name;
        EXPECT_TRUE(behaviorally_equal(psi.forward, phi.forward)) << named.name;
        EXPECT_TRUE(behaviorally_equal(psi.inverse, phi.inverse)) << named.name;
    }
}

TEST(Report, JsonIsDeterministic) {
    auto phi = load_system(sample("tau_golden.json")).get("tau");
    AnalyzeOptions opt;
    opt.n_max = 3;
    const auto a = analyze(phi, opt).to_json().dump();
    const auto b = analyze(phi, opt).to_json().dump();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("runtime_ms"), std::string::npos);
    auto j = nlohmann::json::parse(a);
    EXPECT_EQ(j["units"], "logarithms are natural (nats)");
    EXPECT_EQ(j["exit_code"], 0);
    EXPECT_EQ(j["data"]["dimension_action"]["inert"], false);
    EXPECT_EQ(j["data"]["lyapunov_best"]["phi"]["alpha_minus"]["lo"], "0/1");
    EXPECT_EQ(j["data"]["lyapunov_best"]["inverse"]["alpha_minus"]["lo"], "-1/1");
}

TEST(Report, ParallelSuiteMatchesSerial) {
    SuiteOptions serial, parallel;
    parallel.jobs = 4;
    EXPECT_EQ(run_suite("theorem-3", serial).to_json().dump(), run_suite("theorem-3", parallel).to_json().dump());
}

TEST(Analyze, TauGolden) {
    auto rep = analyze(bi::tau_golden());
    EXPECT_FALSE(rep.any_violated());
    const auto& d = rep.data();
    EXPECT_EQ(d["profile"]["W_minus"], (std::vector<long long>{0, 0, 0, 0}));
    EXPECT_EQ(d["profile"]["W_plus"], (std::vector<long long>{1, 2, 3, 4}));
    EXPECT_NEAR(d["dimension_action"]["rho"].get<double>(), std::numbers::phi, 1e-9);
    EXPECT_NEAR(d["product_form"]["exact_entropy"].get<double>(), std::log(std::numbers::phi), 1e-12);
}

TEST(Suites, Spectra) {
    auto rep = run_suite("spectra");
    EXPECT_FALSE(rep.any_violated());
    EXPECT_EQ(rep.data()["conditions"]["net_trace"]["net_traces"][1], "32");
    ASSERT_EQ(rep.checks().size(), 4u);
    EXPECT_EQ(rep.checks()[3].status, Status::Confirmed);

    SuiteOptions o;
    o.poly = {1, 0, 1};  // t^2 + 1: no real dominant root
    auto bad = run_suite("spectra", o);
    EXPECT_EQ(bad.checks()[0].status, Status::Inconclusive);
    EXPECT_FALSE(bad.any_violated());
}

TEST(Suites, Profile) {
    auto rep = run_suite("profile");
    EXPECT_FALSE(rep.any_violated());
    EXPECT_EQ(rep.data()["profile"]["automorphism"], "tau_golden");
    EXPECT_EQ(rep.data()["profile"]["W_minus_inv"], (std::vector<long long>{-1, -2, -3, -4}));
    EXPECT_THROW(run_suite("nope"), InputError);
}

TEST(Suites, LyapunovSweepHasNoViolations) {
    auto rep = run_suite("theorem-4");
    EXPECT_FALSE(rep.any_violated());
    EXPECT_GE(rep.checks().size(), 4 * bi::catalog().size());
}

TEST(Polynomial, ParseText) {
    EXPECT_EQ(parse_polynomial("[1,-5,-6,1]"), (IntPolynomial{1, -5, -6, 1}));
    EXPECT_THROW(parse_polynomial("[1,"), ParseError);
    EXPECT_THROW(parse_polynomial("[1, 0.5]"), ParseError);
    EXPECT_THROW(parse_polynomial("[]"), ParseError);
}
