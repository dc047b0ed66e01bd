#pragma once

// Full analysis of one automorphism. Computed values go to Report::data(); every
// inequality with a definite answer becomes a check record.

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "sftlab/coding_range.hpp"
#include "sftlab/dimension_rep.hpp"
#include "sftlab/entropy_lab.hpp"
#include "sftlab/report.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

struct AnalyzeOptions {
    std::size_t n_max = 4;
    std::size_t w = 1;
    std::size_t steps = 3;
    double tol = kDefaultTol;
    std::uint64_t budget = window_budget();
};

namespace detail {

inline nlohmann::json matrix_json(const QMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline nlohmann::json spectrum_json(const std::vector<std::complex<double>>& zs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& z : zs) out.push_back({z.real(), z.imag()});
    return out;
}

inline nlohmann::json interval_json(const RationalInterval& i) {
    return {{"lo", to_string(i.lo)}, {"hi", to_string(i.hi)}, {"n_lo", i.n_lo}, {"n_hi", i.n_hi}};
}

inline nlohmann::json bounds_json(const LyapunovBounds& b) {
    return {{"alpha_minus", interval_json(b.alpha_minus)},
            {"alpha_plus", interval_json(b.alpha_plus)},
            {"method", b.method},
            {"verdict", to_string(b.verdict)}};
}

inline nlohmann::json profile_json(const CodingRangeProfile& p) {
    return {{"automorphism", p.automorphism}, {"n_max", p.n_max},       {"W_minus", p.w_minus},
            {"W_plus", p.w_plus},             {"W_minus_inv", p.w_minus_inv}, {"W_plus_inv", p.w_plus_inv}};
}

inline nlohmann::json action_json(const DimensionAction& a) {
    nlohmann::json j{{"S", matrix_json(a.S)},
                     {"lambda_phi", a.lambda_phi},
                     {"rho", a.rho},
                     {"inert", a.inert},
                     {"spectrum", spectrum_json(a.spectrum)}};
    j["order"] = a.order_if_finite ? nlohmann::json(*a.order_if_finite) : nlohmann::json(nullptr);
    return j;
}

inline CheckRecord exact_check(std::string name, bool ok, std::string detail = {}) {
    CheckRecord r;
    r.name = std::move(name);
    r.status = ok ? Status::Confirmed : Status::Violated;
    r.detail = std::move(detail);
    return r;
}

}  // namespace detail

/// Sum inequalities for phi and phi^-1 and the reverse identity W^-(n, r*phi) = -W^+(n, phi).
inline Report coding_range_checks(const Automorphism& phi, std::size_t n_max, std::uint64_t budget = window_budget()) {
    Report rep("coding ranges: " + phi.name);
    const auto rev = reverse_automorphism(phi, budget);
    for (std::size_t n = 1; n <= n_max; ++n) {
        const auto ln = static_cast<long long>(n);
        const auto c = coding_ranges(phi, ln, budget);
        const auto r = coding_ranges(rev, ln, budget);
        const std::string at = phi.name + " n=" + std::to_string(n) + ": ";
        rep.add(detail::exact_check(at + "W^-(phi) + W^-(phi^-1) <= 0", c.w_minus + c.w_minus_inv <= 0,
                                    std::to_string(c.w_minus) + " + " + std::to_string(c.w_minus_inv)));
        rep.add(detail::exact_check(at + "W^+(phi) + W^+(phi^-1) >= 0", c.w_plus + c.w_plus_inv >= 0,
                                    std::to_string(c.w_plus) + " + " + std::to_string(c.w_plus_inv)));
        rep.add(detail::exact_check(at + "W^-(r*phi) = -W^+(phi)", r.w_minus == -c.w_plus,
                                    std::to_string(r.w_minus) + " vs " + std::to_string(-c.w_plus)));
    }
    return rep;
}

/// The Lyapunov-exponent bounds for phi, fed by the best available intervals.
inline Report main_bounds_report(const Automorphism& phi, std::size_t n_max, const DimensionAction& action,
                                 std::uint64_t budget = window_budget(), double tol = kDefaultTol) {
    const EdgeShift& s = *phi.shift();
    MainBoundsInput in;
    in.name = phi.name;
    in.phi = best_lyapunov_bounds(phi, n_max, budget);
    in.inverse = best_lyapunov_bounds(phi.inverted(), n_max, budget);
    in.log_rho = std::log(action.rho);
    in.log_rho_reverse = std::log(dimension_matrix(reverse_automorphism(phi, budget), budget, tol).rho);
    in.h = topological_entropy(s);
    in.log_rho_minus = std::log(dimension_data(s).rho_minus);
    in.spectrum = action.spectrum;
    return verify_main_bounds(in, tol);
}

struct EntropyValue {
    double value = 0;
    bool certified = false;
    std::string source;
};

/// Best entropy value for phi: exact for shift powers and product forms, otherwise the
/// census estimate.
inline EntropyValue entropy_value(const Automorphism& phi, std::size_t w, std::size_t n,
                                  std::uint64_t budget = window_budget()) {
    if (auto k = shift_power_offset(phi.forward))
        return {static_cast<double>(std::llabs(*k)) * topological_entropy(*phi.shift()), true, "shift power"};
    if (auto pf = recognize_product_form(phi, budget); pf && pf->exact_entropy)
        return {*pf->exact_entropy, true, "product form"};
    auto c = column_census(phi, w, n, budget);
    return {c.estimate, c.certified, "column census w=" + std::to_string(w) + " n=" + std::to_string(n)};
}

inline Report analyze(const Automorphism& phi, const AnalyzeOptions& opt = {}) {
    const EdgeShift& s = *phi.shift();
    require_positive_entropy(s);
    Report rep("analyze: " + phi.name);
    auto& data = rep.data();
    data["automorphism"] = phi.name;
    data["tol"] = opt.tol;
    data["budget"] = opt.budget;
    data["h_top_shift"] = topological_entropy(s);

    const auto profile = coding_range_profile(phi, opt.n_max, opt.budget);
    data["profile"] = detail::profile_json(profile);
    rep.append(coding_range_checks(phi, opt.n_max, opt.budget));

    data["lyapunov_finite"] = {{"phi", detail::bounds_json(lyapunov_bounds(profile))},
                               {"inverse", detail::bounds_json(lyapunov_bounds(profile.inverted()))}};
    data["lyapunov_best"] = {{"phi", detail::bounds_json(best_lyapunov_bounds(phi, opt.n_max, opt.budget))},
                             {"inverse",
                              detail::bounds_json(best_lyapunov_bounds(phi.inverted(), opt.n_max, opt.budget))}};

    const auto dim = dimension_data(s);
    const auto perron = perron_data(s, opt.tol);
    const auto action = dimension_matrix(phi, dim, perron, opt.budget, opt.tol);
    data["dimension_action"] = detail::action_json(action);

    for (State i = 0; i < s.num_states(); ++i) {
        auto u = single_ray_beam(s, canonical_ray(s, i));
        auto img = apply_automorphism_to_ray(phi, 1, u.rays.front());
        const double mu = unstable_measure(u, perron), mu_img = unstable_measure(img, perron);
        CheckRecord r;
        r.name = phi.name + ": measure ratio at state " + std::to_string(i) + " equals lambda_phi";
        r.lhs = mu_img / mu;
        r.rhs_lo = r.rhs_hi = action.lambda_phi;
        r.tol = 1e-6;
        r.status = std::abs(*r.lhs - action.lambda_phi) <= r.tol ? Status::Confirmed : Status::Violated;
        rep.add(r);
    }

    try {
        const auto census = column_census(phi, opt.w, opt.steps, opt.budget);
        data["census"] = census.to_json();
    } catch (const WindowBudgetExceeded& e) {
        rep.note(std::string("census skipped: ") + e.what());
    }
    if (auto pf = recognize_product_form(phi, opt.budget)) {
        data["product_form"] = {{"left_power", pf->left_power ? nlohmann::json(*pf->left_power) : nlohmann::json()},
                                {"right_power", pf->right_power ? nlohmann::json(*pf->right_power) : nlohmann::json()},
                                {"exact_entropy", pf->exact_entropy ? nlohmann::json(*pf->exact_entropy) : nlohmann::json()}};
    }
    try {
        const auto ent = entropy_value(phi, opt.w, opt.steps, opt.budget);
        auto r = verify_entropy_bound(phi.name, action.lambda_phi, ent.value, ent.certified, opt.tol);
        r.detail += " (" + ent.source + ")";
        rep.add(r);
    } catch (const WindowBudgetExceeded& e) {
        rep.note(std::string("entropy bound skipped: ") + e.what());
    }
    try {
        const auto c = c_phi_count(phi, opt.steps, opt.budget);
        data["c_phi"] = {{"n", c.n}, {"k", c.k}, {"r", c.r}, {"count", c.count.str()}, {"log_rate", c.log_rate}};
        rep.note(c.diagnostic(action.lambda_phi));
    } catch (const WindowBudgetExceeded& e) {
        rep.note(std::string("C^phi skipped: ") + e.what());
    }

    rep.append(main_bounds_report(phi, opt.n_max, action, opt.budget, opt.tol));

    const auto d = distortion_spectrum_check(action, opt.tol);
    data["distortion_spectrum"] = {{"log_rho", d.log_rho},
                                   {"log_rho_zero", d.log_rho_zero},
                                   {"on_unit_circle", d.on_unit_circle},
                                   {"max_deviation", d.max_deviation}};
    return rep;
}

}  // namespace sftlab
