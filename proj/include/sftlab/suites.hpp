#pragma once

// Verification suites. Each suite is a list of independent tasks; with jobs > 1 the
// tasks run on worker threads and their records are merged in task order, so the
// report does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "sftlab/analysis.hpp"
#include "sftlab/builtins.hpp"
#include "sftlab/oracles.hpp"
#include "sftlab/spectra.hpp"

namespace sftlab {

struct SuiteOptions {
    std::size_t jobs = 1;
    std::size_t n_max = 4;
    double tol = kDefaultTol;
    std::uint64_t budget = window_budget();
    std::optional<NonnegIntMatrix> eb_matrix;  // fallback for the realization search
    IntPolynomial poly{1, -5, -6, 1};          // spectra suite input
    std::size_t trace_n = 12;
    std::size_t max_size = 6;
    long long max_entry = 6;
    std::optional<Automorphism> profile_target;  // profile suite input; tau_golden if unset
};

using SuiteTask = std::function<Report()>;

inline Report run_tasks(const std::string& title, const std::vector<SuiteTask>& tasks, std::size_t jobs) {
    std::vector<Report> parts(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    auto run_one = [&](std::size_t i) {
        try {
            parts[i] = tasks[i]();
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };
    const std::size_t workers = std::min(std::max<std::size_t>(jobs, 1), tasks.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < tasks.size(); i = next++) run_one(i);
            });
        for (auto& th : pool) th.join();
    }
    Report rep(title);
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        rep.append(parts[i]);
    }
    return rep;
}

namespace detail {

inline Report single(CheckRecord r) {
    Report rep;
    rep.add(std::move(r));
    return rep;
}

/// Accumulates sub-conditions of one criterion; the first failure is kept as detail.
class Criterion {
public:
    explicit Criterion(std::string name) { rec_.name = std::move(name); }

    void require(bool ok, const std::string& what) {
        if (!ok && failure_.empty()) failure_ = what;
    }
    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }

    Report finish(double tol) {
        rec_.tol = tol;
        rec_.status = failure_.empty() ? Status::Confirmed : Status::Violated;
        rec_.detail = failure_.empty() ? notes_ : "failed: " + failure_ + (notes_.empty() ? "" : "; " + notes_);
        return single(rec_);
    }
    Report inconclusive(const std::string& why) {
        rec_.status = Status::Inconclusive;
        rec_.detail = why + (notes_.empty() ? "" : "; " + notes_);
        return single(rec_);
    }
    CheckRecord& record() { return rec_; }

private:
    CheckRecord rec_;
    std::string failure_;
    std::string notes_;
};

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool all_confirmed(const Report& r, std::string* first_bad = nullptr) {
    for (const auto& c : r.checks())
        if (c.status != Status::Confirmed) {
            if (first_bad) *first_bad = c.name + " is " + to_string(c.status) + " (" + c.detail + ")";
            return false;
        }
    return true;
}

inline std::string num(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace detail

// ---- acceptance criteria ----

inline Report criterion_golden_mean(const SuiteOptions&) {
    detail::Criterion c("1 golden mean entropy and word counts");
    auto g = builtins::golden_mean();
    const double h = topological_entropy(*g);
    c.require(detail::near(h, std::log(std::numbers::phi), 1e-9), "h_top = " + detail::num(h));
    c.require(count_words(*g, 0) == 1, "P(0) != 1");
    c.require(count_words(*g, 2) == 5, "P(2) != 5");
    c.record().lhs = h;
    c.record().rhs_lo = c.record().rhs_hi = std::log(std::numbers::phi);
    return c.finish(1e-9);
}

inline Report criterion_shift_sharpness(const SuiteOptions& o) {
    detail::Criterion c("2 shift on the full 2-shift makes the bounds sharp");
    auto sigma = builtins::shift(builtins::full_shift(2));
    for (long long n = 1; n <= 4; ++n) {
        auto w = coding_ranges(sigma, n, o.budget);
        c.require(w.w_minus == -n && w.w_plus == -n, "W(" + std::to_string(n) + ") != -n");
    }
    auto b = best_lyapunov_bounds(sigma, 4, o.budget);
    c.require(b.alpha_minus.is_point(Rational(-1)) && b.alpha_plus.is_point(Rational(-1)), "alpha intervals not [-1,-1]");
    auto act = dimension_matrix(sigma, o.budget, o.tol);
    c.require(detail::near(act.lambda_phi, 2.0, 1e-9), "lambda_phi = " + detail::num(act.lambda_phi));
    c.require(detail::near(act.rho, 2.0, 1e-9), "rho(S_phi) = " + detail::num(act.rho));
    auto mb = main_bounds_report(sigma, 4, act, o.budget, o.tol);
    std::string bad;
    c.require(detail::all_confirmed(mb, &bad), bad);
    const auto& minus = mb.checks().front();
    const double gap = *minus.rhs_lo - *minus.lhs;
    c.require(std::abs(gap) <= 1e-9, "equality gap " + detail::num(gap));
    c.record().lhs = *minus.lhs;
    c.record().rhs_lo = *minus.rhs_lo;
    c.note("equality gap " + detail::num(gap));
    return c.finish(1e-9);
}

inline Report criterion_tau(const SuiteOptions& o) {
    detail::Criterion c("3 tau example: alpha^-(tau) = 0, alpha^-(tau^-1) = -1, rho(S_tau) = lambda_A");
    auto tau = builtins::tau_golden();
    auto b = best_lyapunov_bounds(tau, 4, o.budget);
    auto bi_ = best_lyapunov_bounds(tau.inverted(), 4, o.budget);
    c.require(b.alpha_minus.is_point(Rational(0)), "alpha^-(tau) != [0,0]");
    c.require(bi_.alpha_minus.is_point(Rational(-1)), "alpha^-(tau^-1) != [-1,-1]");
    auto act = dimension_matrix(tau, o.budget, o.tol);
    const double diff = std::log(act.rho) - std::log(std::numbers::phi);
    c.require(std::abs(diff) <= 1e-6, "log rho(S_tau) - log lambda_A = " + detail::num(diff));
    auto mb = main_bounds_report(tau, 4, act, o.budget, o.tol);
    std::string bad;
    c.require(detail::all_confirmed(mb, &bad), bad);
    c.record().lhs = std::log(act.rho);
    c.record().rhs_lo = c.record().rhs_hi = std::log(std::numbers::phi);
    c.note("intervals via " + b.method);
    return c.finish(1e-6);
}

inline Report criterion_entropy_bound(const SuiteOptions& o) {
    detail::Criterion c("4 sigma x sigma^-1: lambda_phi = 1 and census meets log 4");
    auto phi = builtins::sigma_x_sigma_inv();
    auto act = dimension_matrix(phi, o.budget, o.tol);
    c.require(detail::near(act.lambda_phi, 1.0, 1e-9), "lambda_phi = " + detail::num(act.lambda_phi));
    auto census = column_census(phi, 2, 6, o.budget);
    c.require(census.estimate >= std::log(4.0) - 1e-9, "census estimate " + detail::num(census.estimate));
    auto ent = entropy_value(phi, 2, 6, o.budget);
    auto eb = verify_entropy_bound(phi.name, act.lambda_phi, ent.value, ent.certified, o.tol);
    c.require(eb.status == Status::Confirmed, "entropy bound is " + to_string(eb.status));
    c.record().lhs = census.estimate;
    c.record().rhs_lo = std::log(4.0);
    c.note("census count " + census.count.str() + " via " + census.method);
    return c.finish(1e-9);
}

inline Report criterion_vertex_swap(const SuiteOptions& o) {
    detail::Criterion c("5 vertex_swap_B has order two and is not inert");
    auto phi = builtins::vertex_swap_b();
    auto act = dimension_matrix(phi, o.budget, o.tol);
    QMatrix swap(2, 2);
    swap(0, 1) = swap(1, 0) = Rational(1);
    c.require(act.S == swap, "S_phi != [[0,1],[1,0]]");
    c.require(act.S * act.S == QMatrix::identity(2), "S_phi^2 != I");
    c.require(!act.inert, "reported inert");
    c.require(detail::near(act.lambda_phi, 1.0, 1e-9), "lambda_phi = " + detail::num(act.lambda_phi));
    auto d = distortion_spectrum_check(act, o.tol);
    c.require(d.on_unit_circle, "spectrum leaves the unit circle by " + detail::num(d.max_deviation));
    c.record().lhs = act.lambda_phi;
    c.record().rhs_lo = c.record().rhs_hi = 1.0;
    return c.finish(1e-9);
}

inline Report criterion_sum_inequalities(const SuiteOptions& o) {
    detail::Criterion c("6 sum inequalities and reverse identity, all builtins, n <= 3");
    std::size_t n_checks = 0;
    for (const auto& named : builtins::catalog()) {
        auto rep = coding_range_checks(named.make(), 3, o.budget);
        std::string bad;
        c.require(detail::all_confirmed(rep, &bad), bad);
        n_checks += rep.checks().size();
    }
    c.note(std::to_string(n_checks) + " exact checks");
    return c.finish(0);
}

inline Report criterion_cubic(const SuiteOptions& o) {
    detail::Criterion c("7 cubic t^3 - 5t^2 - 6t + 1: conditions and entropy-bound failure for the inverse");
    const IntPolynomial p{1, -5, -6, 1};
    auto r = check_conditions(p, 12, o.tol);
    c.require(r.traces[0] == 5 && r.traces[1] == 37, "tr_1, tr_2 != 5, 37");
    c.require(r.nets[1] == 32, "net trace at 2 != 32");
    c.require(r.net_trace == Verdict::Holds, "net trace condition fails");
    c.require(r.perron == Verdict::Holds, "Perron condition is " + to_string(r.perron));
    c.require(r.lambda_d > 5.9 && r.lambda_d < 6.0, "lambda_d = " + detail::num(r.lambda_d));
    c.require(r.reciprocal == Verdict::Holds && 1.0 / r.min_modulus > r.lambda_d, "reciprocal condition fails");
    auto search = search_primitive_realization(p, o.max_size, o.max_entry, o.budget);
    std::optional<NonnegIntMatrix> m = search.matrix;
    std::string source = "search (" + search.method + ")";
    if (!m && o.eb_matrix) {
        m = o.eb_matrix;
        source = "supplied matrix";
    }
    if (!m) return c.inconclusive("no primitive realization found within the search bounds");
    auto eb = verify_eb_failure(*m, o.tol);
    c.require(eb.status == Status::Confirmed, "entropy-bound failure is " + to_string(eb.status));
    c.record().lhs = eb.lhs;
    c.record().rhs_lo = eb.rhs_lo;
    c.note("matrix from " + source + ": " + nlohmann::json(m->rows()).dump() + ", gap " + detail::num(*eb.lhs - *eb.rhs_lo));
    return c.finish(o.tol);
}

inline Report criterion_functoriality(const SuiteOptions& o) {
    detail::Criterion c("8 dimension representation is functorial and commutes with delta");
    for (const auto& named : builtins::catalog()) {
        auto phi = named.make();
        const auto dim = dimension_data(*phi.shift());
        auto s1 = dimension_matrix(phi, o.budget, o.tol).S;
        auto s2 = dimension_matrix(power_automorphism(phi, 2, o.budget), o.budget, o.tol).S;
        auto sinv = dimension_matrix(phi.inverted(), o.budget, o.tol).S;
        c.require(s2 == s1 * s1, named.name + ": S_{phi^2} != S_phi^2");
        c.require(s1 * sinv == QMatrix::identity(s1.rows()), named.name + ": S_{phi^-1} != S_phi^-1");
        c.require(s1 * dim.delta == dim.delta * s1, named.name + ": S_phi does not commute with delta");
    }
    std::vector<ShiftPtr> shifts{builtins::full_shift(2), builtins::full_shift(3), builtins::golden_mean(), builtins::matrix_b(),
                                 builtins::sigma_x_sigma_inv().shift(), builtins::five_symbol(builtins::kSwapCompletion).shift()};
    for (const auto& s : shifts) {
        const auto dim = dimension_data(*s);
        for (State i = 0; i < s->num_states(); ++i) {
            auto r = canonical_ray(*s, i);
            const auto base = theta(single_ray_beam(*s, r), dim);
            for (long long L = 1; L <= 4; ++L)
                c.require(theta(refine_ray(*s, r, L), dim) == base, "theta changes under refinement");
        }
    }
    return c.finish(0);
}

inline Report criterion_measure(const SuiteOptions& o) {
    detail::Criterion c("9 unstable measure scales by lambda_phi; pairing identity");
    double worst_ratio = 0, worst_pair = 0;
    for (const auto& named : builtins::catalog()) {
        auto phi = named.make();
        const auto& s = *phi.shift();
        const auto perron = perron_data(s, o.tol);
        const auto dim = dimension_data(s);
        const auto act = dimension_matrix(phi, dim, perron, o.budget, o.tol);
        for (State i = 0; i < s.num_states(); ++i) {
            auto u = single_ray_beam(s, canonical_ray(s, i));
            auto img = apply_automorphism_to_ray(phi, 1, u.rays.front());
            const double mu = unstable_measure(u, perron), mu_img = unstable_measure(img, perron);
            worst_ratio = std::max(worst_ratio, std::abs(mu_img / mu - act.lambda_phi));
            worst_pair = std::max({worst_pair, std::abs(mu - pairing(theta(u, dim), dim, perron)),
                                   std::abs(mu_img - pairing(theta(img, dim), dim, perron))});
        }
    }
    c.require(worst_ratio <= 1e-6, "ratio deviation " + detail::num(worst_ratio));
    c.require(worst_pair <= 1e-9, "pairing deviation " + detail::num(worst_pair));
    c.record().lhs = worst_ratio;
    c.note("max ratio deviation " + detail::num(worst_ratio) + ", max pairing deviation " + detail::num(worst_pair));
    return c.finish(1e-6);
}

inline Report criterion_five_symbol(const SuiteOptions& o) {
    detail::Criterion c("10 five-symbol example: no-c restriction is sigma x sigma^-1, h_top >= log 4");
    auto target = builtins::sigma_x_sigma_inv();
    const auto* fac = target.shift()->factors();
    // Loop 2a+b carries the pair (a, b); on the product it is left track a, right track b.
    std::vector<Edge> map(4);
    for (Edge a = 0; a < 2; ++a)
        for (Edge b = 0; b < 2; ++b) map[2 * a + b] = fac->join[a * 2 + b];
    std::vector<std::string> certifying;
    for (int k = 0; k <= builtins::kSwapCompletion; ++k) {
        const auto name = builtins::five_symbol_completion_name(k);
        auto y = restrict_to_subsystem(builtins::five_symbol_code(k), {0, 1, 2, 3});
        auto moved = transport(y.restricted, target.shift(), map, o.budget);
        c.require(behaviorally_equal(moved.forward, target.forward), name + ": restriction differs from sigma x sigma^-1");
        auto pf = recognize_product_form(moved, o.budget);
        c.require(pf && pf->exact_entropy && detail::near(*pf->exact_entropy, std::log(4.0), 1e-12),
                  name + ": exact entropy of the restriction is not log 4");
        try {
            builtins::five_symbol(k);
            certifying.push_back(name);
        } catch (const NotInverse&) {
        }
    }
    std::string list;
    for (const auto& n : certifying) list += (list.empty() ? "" : ", ") + n;
    c.note("certified lower bound h_top(phi) >= log 4 = " + detail::num(std::log(4.0)));
    c.note("completions certifying as automorphisms: " + (list.empty() ? std::string("none") : list));
    c.record().rhs_lo = std::log(4.0);
    return c.finish(1e-12);
}

inline Report criterion_unit_circle(const SuiteOptions& o) {
    detail::Criterion c("11 unit circle: zero Lyapunov intervals force |eigenvalues of S_phi| = 1");
    for (auto phi : {builtins::identity(builtins::golden_mean()), builtins::vertex_swap_b()}) {
        auto b = best_lyapunov_bounds(phi, o.n_max, o.budget);
        auto bi_ = best_lyapunov_bounds(phi.inverted(), o.n_max, o.budget);
        const Rational zero(0);
        c.require(b.alpha_minus.is_point(zero) && b.alpha_plus.is_point(zero) && bi_.alpha_minus.is_point(zero) &&
                      bi_.alpha_plus.is_point(zero),
                  phi.name + ": alpha intervals are not [0,0]");
        auto d = distortion_spectrum_check(dimension_matrix(phi, o.budget, o.tol), 1e-9);
        c.require(d.on_unit_circle, phi.name + ": deviation " + detail::num(d.max_deviation));
    }
    return c.finish(1e-9);
}

inline Report criterion_oracle(const SuiteOptions& o) {
    detail::Criterion c("12 coded_+/- agree with naive pair enumeration on 500 random cases");
    std::mt19937 rng(20240601);
    const std::vector<ShiftPtr> systems{
        builtins::full_shift(2),
        builtins::full_shift(3),
        builtins::full_shift(4),
        builtins::golden_mean(),
        build_edge_shift(NonnegIntMatrix({{1, 2}, {1, 0}})),
        build_edge_shift(NonnegIntMatrix({{0, 2}, {1, 0}})),
        build_edge_shift(NonnegIntMatrix({{1, 1}, {1, 1}})),
        build_edge_shift(NonnegIntMatrix({{1, 1}, {0, 1}})),
    };
    std::uniform_int_distribution<std::size_t> pick(0, systems.size() - 1), side(0, 6);
    std::uniform_int_distribution<long long> dj(-2, 2);
    std::size_t discrepancies = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const auto& s = systems[pick(rng)];
        std::size_t m = side(rng), a = side(rng);
        while (m + a + 1 > 7) (m > a ? m : a)--;
        auto code = oracles::random_code(s, m, a, rng);
        const long long j = dj(rng);
        if (coded_minus(code, j) != oracles::naive_coded(code, j, false)) ++discrepancies;
        if (coded_plus(code, j) != oracles::naive_coded(code, j, true)) ++discrepancies;
    }
    c.require(discrepancies == 0, std::to_string(discrepancies) + " discrepancies");
    c.record().lhs = static_cast<double>(discrepancies);
    c.record().rhs_lo = c.record().rhs_hi = 0.0;
    return c.finish(0);
}

inline std::vector<SuiteTask> acceptance_tasks(const SuiteOptions& o) {
    using F = Report (*)(const SuiteOptions&);
    const F criteria[] = {criterion_golden_mean,    criterion_shift_sharpness, criterion_tau,
                          criterion_entropy_bound,  criterion_vertex_swap,     criterion_sum_inequalities,
                          criterion_cubic,          criterion_functoriality,   criterion_measure,
                          criterion_five_symbol,    criterion_unit_circle,     criterion_oracle};
    std::vector<SuiteTask> tasks;
    for (F f : criteria)
        tasks.push_back([f, &o] {
            Report r;
            r.add(timed([&] { return f(o).checks().front(); }));
            return r;
        });
    return tasks;
}

// ---- entropy-bound and Lyapunov-bound sweeps over the builtin catalog ----

inline Report entropy_bound_task(const builtins::NamedAutomorphism& named, const SuiteOptions& o) {
    auto phi = named.make();
    auto act = dimension_matrix(phi, o.budget, o.tol);
    auto ent = entropy_value(phi, 1, 3, o.budget);
    auto r = verify_entropy_bound(named.name, act.lambda_phi, ent.value, ent.certified, o.tol);
    r.detail += " (" + ent.source + ")";
    Report rep;
    rep.add(r);
    return rep;
}

inline Report lyapunov_bound_task(const builtins::NamedAutomorphism& named, const SuiteOptions& o) {
    auto phi = named.make();
    auto act = dimension_matrix(phi, o.budget, o.tol);
    return main_bounds_report(phi, o.n_max, act, o.budget, o.tol);
}

inline Report spectra_suite(const SuiteOptions& o) {
    Report rep("suite spectra");
    auto r = check_conditions(o.poly, o.trace_n, o.tol);
    rep.data()["conditions"] = r.to_json();
    auto verdict_record = [&](const std::string& name, Verdict v, std::optional<double> lhs) {
        CheckRecord c;
        c.name = name;
        c.status = v == Verdict::Holds ? Status::Confirmed
                   : v == Verdict::Indeterminate ? Status::Indeterminate
                                                 : Status::Inconclusive;
        c.detail = to_string(v);
        c.lhs = lhs;
        c.tol = o.tol;
        rep.add(c);
    };
    verdict_record("condition (1): real dominant root", r.perron, r.perron_margin);
    verdict_record("condition (2): net traces nonnegative up to N=" + std::to_string(o.trace_n), r.net_trace,
                   std::nullopt);
    verdict_record("condition (3): 1/min|root| > lambda_d", r.reciprocal, r.reciprocal_margin);
    if (!r.realizable_conditions()) {
        rep.note("conditions (1) and (2) do not both hold; no realization search");
        return rep;
    }
    auto search = search_primitive_realization(o.poly, o.max_size, o.max_entry, o.budget);
    rep.data()["search"] = {{"method", search.method}, {"candidates", search.candidates}};
    std::optional<NonnegIntMatrix> m = search.matrix;
    if (m) {
        rep.data()["search"]["matrix"] = m->rows();
        rep.note("realization (" + search.method + ", " + std::to_string(search.candidates) +
                 " candidates): " + nlohmann::json(m->rows()).dump());
    } else if (o.eb_matrix) {
        m = o.eb_matrix;
        rep.note("search found no matrix; using the supplied one");
    } else {
        rep.note("no primitive realization within size " + std::to_string(o.max_size) + " and entry " +
                 std::to_string(o.max_entry));
    }
    if (m) rep.add(verify_eb_failure(*m, o.tol));
    return rep;
}

inline Report profile_suite(const SuiteOptions& o) {
    auto phi = o.profile_target ? *o.profile_target : builtins::tau_golden();
    Report rep("suite profile");
    auto p = coding_range_profile(phi, o.n_max, o.budget);
    rep.data()["profile"] = detail::profile_json(p);
    rep.data()["lyapunov_finite"] = {{"phi", detail::bounds_json(lyapunov_bounds(p))},
                                     {"inverse", detail::bounds_json(lyapunov_bounds(p.inverted()))}};
    rep.append(coding_range_checks(phi, o.n_max, o.budget));
    return rep;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"acceptance", "theorem-3", "theorem-4", "spectra", "profile"};
    return names;
}

inline Report run_suite(const std::string& name, const SuiteOptions& o = {}) {
    Report rep;
    if (name == "acceptance") {
        rep = run_tasks("suite acceptance", acceptance_tasks(o), o.jobs);
    } else if (name == "theorem-3" || name == "theorem-4") {
        std::vector<SuiteTask> tasks;
        for (const auto& named : builtins::catalog())
            tasks.push_back([named, &o, name] { return name == "theorem-3" ? entropy_bound_task(named, o) : lyapunov_bound_task(named, o); });
        rep = run_tasks("suite " + name, tasks, o.jobs);
    } else if (name == "spectra") {
        rep = spectra_suite(o);
    } else if (name == "profile") {
        rep = profile_suite(o);
    } else {
        throw InputError("unknown suite '" + name + "'");
    }
    rep.data()["tol"] = o.tol;
    rep.data()["budget"] = o.budget;
    return rep;
}

}  // namespace sftlab
