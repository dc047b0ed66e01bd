#pragma once

// The dimension representation. A ray is a left-infinite path ending at coordinate
// `level`; a beam is a finite set of rays at one level, and theta sends it into the
// eventual range. S_phi is read off from the beams phi sends rays to.

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sftlab/block_code.hpp"
#include "sftlab/coding_range.hpp"
#include "sftlab/edge_shift.hpp"
#include "sftlab/polynomial.hpp"
#include "sftlab/report.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

/// Left-infinite eventually periodic edge sequence ...cycle cycle transient whose
/// last edge sits at coordinate `level`. Canonical form: primitive cycle, shortest transient.
struct Ray {
    long long level = 0;
    Word cycle;
    Word transient;

    Edge last() const { return transient.empty() ? cycle.back() : transient.back(); }

    /// Edge at coordinate c <= level.
    Edge at(long long c) const {
        const auto t = static_cast<long long>(transient.size());
        if (c > level - t) return transient[static_cast<std::size_t>(t - 1 - (level - c))];
        const auto p = static_cast<long long>(cycle.size());
        const long long d = (level - t) - c;
        return cycle[static_cast<std::size_t>(p - 1 - d % p)];
    }

    auto operator<=>(const Ray&) const = default;
};

namespace detail {

inline void canonicalize(Ray& r) {
    const std::size_t n = r.cycle.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = r.cycle[i] == r.cycle[i - p];
        if (periodic) {
            r.cycle.resize(p);
            break;
        }
    }
    std::size_t absorbed = 0;
    while (absorbed < r.transient.size() && r.transient[absorbed] == r.cycle.front()) {
        std::rotate(r.cycle.begin(), r.cycle.begin() + 1, r.cycle.end());
        ++absorbed;
    }
    r.transient.erase(r.transient.begin(), r.transient.begin() + static_cast<std::ptrdiff_t>(absorbed));
}

}  // namespace detail

inline Ray make_ray(const EdgeShift& s, long long level, Word cycle, Word transient) {
    if (cycle.empty()) throw InputError("ray cycle must be nonempty");
    if (!s.is_admissible(cycle) || s.target(cycle.back()) != s.source(cycle.front()))
        throw InadmissibleWord("ray cycle is not an admissible cycle");
    if (!transient.empty() && (!s.is_admissible(transient) || s.target(cycle.back()) != s.source(transient.front())))
        throw InadmissibleWord("ray transient does not continue the cycle");
    Ray r{level, std::move(cycle), std::move(transient)};
    detail::canonicalize(r);
    return r;
}

/// Distinct rays at one level with their end-state count vector v_{U,m}.
struct Beam {
    long long level = 0;
    std::vector<Ray> rays;          // sorted, distinct
    std::vector<long long> counts;  // counts[J] = rays whose last edge ends at J

    std::size_t size() const noexcept { return rays.size(); }
};

inline Beam make_beam(const EdgeShift& s, long long level, std::vector<Ray> rays) {
    std::sort(rays.begin(), rays.end());
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    if (rays.empty()) throw InputError("beam must contain a ray");
    Beam b{level, std::move(rays), std::vector<long long>(s.num_states(), 0)};
    for (const auto& r : b.rays) {
        if (r.level != level) throw InputError("beam rays must share the beam level");
        ++b.counts[s.target(r.last())];
    }
    return b;
}

inline Beam single_ray_beam(const EdgeShift& s, const Ray& r) { return make_beam(s, r.level, {r}); }

/// theta([U]) = delta^{-k-n}(v_{U,n} A^k), in eventual-range coordinates.
inline QVector theta(const Beam& beam, const DimensionData& dim) {
    QVector v(dim.k);
    for (std::size_t j = 0; j < dim.k; ++j) v[j] = Rational(beam.counts[j]);
    QVector x = times(v, to_rational(dim.a.pow(static_cast<unsigned>(dim.k))));
    return dim.apply_delta(dim.coordinates(x), -(static_cast<long long>(dim.k) + beam.level));
}

namespace detail {

// Every path of `len` edges from `start` whose end state has a future.
template <typename F>
void for_each_extension(const EdgeShift& s, State start, std::size_t len, F&& f) {
    Word path;
    path.reserve(len);
    auto rec = [&](auto&& self, State at) -> void {
        if (path.size() == len) {
            if (s.has_future(at)) f(path);
            return;
        }
        for (Edge e : s.out_edges(at)) {
            path.push_back(e);
            self(self, s.target(e));
            path.pop_back();
        }
    };
    rec(rec, start);
}

}  // namespace detail

inline Beam refine_ray(const EdgeShift& s, const Ray& ray, long long to_level) {
    if (to_level < ray.level) throw InputError("refinement level is below the ray level");
    std::vector<Ray> out;
    detail::for_each_extension(s, s.target(ray.last()), static_cast<std::size_t>(to_level - ray.level),
                               [&](const Word& ext) {
                                   Ray r = ray;
                                   r.level = to_level;
                                   r.transient.insert(r.transient.end(), ext.begin(), ext.end());
                                   detail::canonicalize(r);
                                   out.push_back(std::move(r));
                               });
    return make_beam(s, to_level, std::move(out));
}

inline Beam refine_beam(const EdgeShift& s, const Beam& beam, long long to_level) {
    std::vector<Ray> out;
    for (const auto& r : beam.rays) {
        auto b = refine_ray(s, r, to_level);
        out.insert(out.end(), b.rays.begin(), b.rays.end());
    }
    return make_beam(s, to_level, std::move(out));
}

/// The level-L rays met by code(R(ray)). This is the whole image exactly when
/// L >= ray.level - W^-(n, phi^-1) for code = phi^n.
inline Beam image_beam(const SlidingBlockCode& code, const Ray& ray, long long level,
                       std::uint64_t budget = window_budget()) {
    const EdgeShift& s = *code.source();
    const auto m = static_cast<long long>(code.memory());
    const auto a = static_cast<long long>(code.anticipation());
    const auto p = static_cast<long long>(ray.cycle.size());
    const long long periodic_end = ray.level - static_cast<long long>(ray.transient.size()) - a;
    const long long lo = std::min(periodic_end, level) - p + 1;
    const long long in_lo = lo - m, in_hi = level + a;
    const long long ext_len = std::max(0LL, in_hi - ray.level);

    if (WordIndexer(code.source(), static_cast<std::size_t>(ext_len)).size() > budget)
        throw WindowBudgetExceeded(WordIndexer(code.source(), static_cast<std::size_t>(ext_len)).size(), budget);

    Word input(static_cast<std::size_t>(in_hi - in_lo + 1));
    for (long long c = in_lo; c <= std::min(in_hi, ray.level); ++c)
        input[static_cast<std::size_t>(c - in_lo)] = ray.at(c);
    const std::size_t out_len = static_cast<std::size_t>(level - lo + 1);
    const std::size_t w = code.window();
    std::vector<Ray> rays;
    detail::for_each_extension(s, s.target(ray.last()), static_cast<std::size_t>(ext_len), [&](const Word& ext) {
        for (std::size_t i = 0; i < ext.size(); ++i)
            input[static_cast<std::size_t>(ray.level + 1 + static_cast<long long>(i) - in_lo)] = ext[i];
        Ray r;
        r.level = level;
        for (std::size_t i = 0; i < out_len; ++i) {
            Edge e = code(std::span<const Edge>(input.data() + i, w));
            (static_cast<long long>(i) < p ? r.cycle : r.transient).push_back(e);
        }
        detail::canonicalize(r);
        rays.push_back(std::move(r));
    });
    return make_beam(*code.target(), level, std::move(rays));
}

/// phi^n(R) as a beam at level ray.level - W^-(n, phi^-1).
inline Beam apply_automorphism_to_ray(const Automorphism& phi, long long n, const Ray& ray,
                                      std::uint64_t budget = window_budget()) {
    if (n == 0) return single_ray_beam(*phi.shift(), ray);
    const Automorphism base = n > 0 ? phi : phi.inverted();
    const long long steps = n > 0 ? n : -n;
    const auto ranges = coding_ranges(base, steps, budget);
    return image_beam(power(base, steps, budget), ray, ray.level - ranges.w_minus_inv, budget);
}

namespace detail {

inline std::vector<Edge> past_in_edges(const EdgeShift& s, State st) {
    std::vector<Edge> out;
    for (Edge e : s.in_edges(st))
        if (s.has_past(s.source(e))) out.push_back(e);
    return out;
}

// Greedy smallest in-edge leftwards from `state`, as a level-0 ray.
inline Ray greedy_tail(const EdgeShift& s, State state) {
    std::map<State, std::size_t> seen;
    Word back;  // back[q] is the edge at coordinate -q
    State at = state;
    while (!seen.count(at)) {
        seen[at] = back.size();
        auto in = past_in_edges(s, at);
        if (in.empty()) throw InputError("state has no infinite past");
        back.push_back(in.front());
        at = s.source(in.front());
    }
    const std::size_t u = seen[at];
    Word cycle(back.rbegin(), back.rend() - static_cast<std::ptrdiff_t>(u));
    Word transient(back.rend() - static_cast<std::ptrdiff_t>(u), back.rend());
    return make_ray(s, 0, std::move(cycle), std::move(transient));
}

}  // namespace detail

/// Lexicographically smallest eventually periodic 0-ray ending at `state`
/// (compared from coordinate 0 leftwards).
inline Ray canonical_ray(const EdgeShift& s, State state) { return detail::greedy_tail(s, state); }

/// A second 0-ray ending at `state`: the canonical tail with the first available
/// alternative in-edge taken, then greedy again. Absent when the tail never branches.
inline std::optional<Ray> alternative_ray(const EdgeShift& s, State state) {
    Ray base = canonical_ray(s, state);
    const long long span = static_cast<long long>(base.transient.size() + base.cycle.size());
    for (long long q = 0; q < span; ++q) {
        const State end = s.target(base.at(-q));
        auto in = detail::past_in_edges(s, end);
        if (in.size() < 2) continue;
        Edge alt = in[1];
        Ray r = detail::greedy_tail(s, s.source(alt));
        r.transient.push_back(alt);
        for (long long c = -q + 1; c <= 0; ++c) r.transient.push_back(base.at(c));
        r.level = 0;
        detail::canonicalize(r);
        if (r != base) return r;
    }
    return std::nullopt;
}

/// sum over rays of lambda^{-m} v_r(end state).
inline double unstable_measure(const Beam& beam, const PerronData& perron) {
    double total = 0;
    for (std::size_t j = 0; j < beam.counts.size(); ++j) total += static_cast<double>(beam.counts[j]) * perron.right[j];
    return total * std::pow(perron.lambda, -static_cast<double>(beam.level));
}

/// tau(x) = x . v_r for x in R(A) given in coordinates.
inline double pairing(const QVector& coords, const DimensionData& dim, const PerronData& perron) {
    QVector x = dim.ambient(coords);
    double t = 0;
    for (std::size_t j = 0; j < x.size(); ++j) t += to_double(x[j]) * perron.right[j];
    return t;
}

struct DimensionAction {
    QMatrix S;  // row convention on the eventual-range basis
    double lambda_phi = 0;
    double rho = 0;
    bool inert = false;
    std::optional<int> order_if_finite;
    std::vector<std::complex<double>> spectrum;  // distinct eigenvalues, decreasing modulus
    long long beam_level = 0;                    // level used for the n = 1 images
};

/// lambda_phi: the eigenvalue of S on the Perron eigendirection of delta.
inline double lambda_phi_of(const QMatrix& S, const DimensionData& dim, const PerronData& perron,
                            double tol = kDefaultTol) {
    const std::size_t d = dim.dim();
    std::vector<double> c(d), w(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) c[i] = perron.left[dim.pivots[i]];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) w[j] += c[i] * to_double(S(i, j));
    double num = 0, den = 0;
    for (std::size_t i = 0; i < d; ++i) {
        num += w[i] * c[i];
        den += c[i] * c[i];
    }
    const double lambda = num / den;
    double resid = 0, norm = 0;
    for (std::size_t i = 0; i < d; ++i) {
        resid += std::abs(w[i] - lambda * c[i]);
        norm += std::abs(c[i]);
    }
    if (!(lambda > 0)) throw NonPositiveRatio("lambda_phi is not positive");
    if (resid > 1e3 * tol * norm * std::max(1.0, std::abs(lambda)))
        throw InternalInvariantViolation("Perron direction is not an eigenvector of S_phi");
    return lambda;
}

inline double lambda_phi_of(const DimensionAction& action, const DimensionData& dim, const PerronData& perron,
                            double tol = kDefaultTol) {
    return lambda_phi_of(action.S, dim, perron, tol);
}

inline std::vector<std::complex<double>> matrix_spectrum(const QMatrix& m) {
    return exact_roots(make_monic(char_poly(m))).nonzero;
}

inline DimensionAction dimension_matrix(const Automorphism& phi, const DimensionData& dim, const PerronData& perron,
                                        std::uint64_t budget = window_budget(), double tol = kDefaultTol) {
    const EdgeShift& s = *phi.shift();
    require_positive_entropy(s);
    const std::size_t k = s.num_states(), d = dim.dim();
    const long long level = -coding_ranges(phi, 1, budget).w_minus_inv;

    std::vector<QVector> th(k), img(k);
    for (State i = 0; i < k; ++i) {
        Ray r = canonical_ray(s, i);
        th[i] = theta(single_ray_beam(s, r), dim);
        img[i] = theta(image_beam(phi.forward, r, level, budget), dim);
    }

    // Pick d independent theta rows, solve Theta_sel S = Y_sel, then check every row.
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < k && sel.size() < d; ++i) {
        QMatrix trial(sel.size() + 1, d);
        for (std::size_t r = 0; r < sel.size(); ++r)
            for (std::size_t j = 0; j < d; ++j) trial(r, j) = th[sel[r]][j];
        for (std::size_t j = 0; j < d; ++j) trial(sel.size(), j) = th[i][j];
        if (rank(trial) == sel.size() + 1) sel.push_back(i);
    }
    if (sel.size() != d) throw InconsistentSystem("0-ray classes do not span the eventual range");
    QMatrix t_sel(d, d), y_sel(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t j = 0; j < d; ++j) {
            t_sel(r, j) = th[sel[r]][j];
            y_sel(r, j) = img[sel[r]][j];
        }
    DimensionAction act;
    act.beam_level = level;
    act.S = inverse(t_sel) * y_sel;
    for (std::size_t i = 0; i < k; ++i)
        if (times(th[i], act.S) != img[i])
            throw InconsistentSystem("theta images are inconsistent with a linear S_phi at state " + std::to_string(i));
    if (act.S * dim.delta != dim.delta * act.S) throw InternalInvariantViolation("S_phi does not commute with delta");
    if (!try_inverse(act.S)) throw InternalInvariantViolation("S_phi is singular");

    act.spectrum = matrix_spectrum(act.S);
    act.rho = act.spectrum.empty() ? 0.0 : std::abs(act.spectrum.front());
    act.lambda_phi = lambda_phi_of(act.S, dim, perron, tol);
    const QMatrix id = QMatrix::identity(d);
    act.inert = act.S == id;
    bool on_circle = true;
    for (const auto& z : act.spectrum) on_circle = on_circle && std::abs(std::abs(z) - 1.0) <= tol;
    if (on_circle) {
        // GL_d(Q) torsion at desk-scale d has order well below this bound.
        const int bound = 2 * static_cast<int>((d + 1) * (d + 1));
        QMatrix p = act.S;
        for (int j = 1; j <= bound; ++j, p = p * act.S)
            if (p == id) {
                act.order_if_finite = j;
                break;
            }
    }
    return act;
}

inline DimensionAction dimension_matrix(const Automorphism& phi, std::uint64_t budget = window_budget(),
                                        double tol = kDefaultTol) {
    require_positive_entropy(*phi.shift());
    return dimension_matrix(phi, dimension_data(*phi.shift()), perron_data(*phi.shift(), tol), budget, tol);
}

/// |log lambda_phi| <= h_top(phi), checked against an entropy value that is a certified
/// lower bound (exact or transferred from a subsystem) or a heuristic estimate.
/// Neither kind can refute the inequality.
inline CheckRecord verify_entropy_bound(const std::string& name, double lambda_phi, double entropy, bool certified,
                                        double tol = kDefaultTol) {
    CheckRecord r;
    r.name = name + ": |log lambda_phi| <= h_top(phi)";
    r.lhs = std::abs(std::log(lambda_phi));
    r.rhs_lo = entropy;
    r.tol = tol;
    if (*r.lhs > entropy + tol) {
        r.status = Status::Inconclusive;
        r.detail = "entropy value is below |log lambda_phi| and cannot refute the bound";
    } else {
        r.status = certified ? Status::Confirmed : Status::Consistent;
        r.detail = certified ? "certified entropy lower bound" : "heuristic entropy estimate";
    }
    return r;
}

/// Everything the Lyapunov-exponent bounds consume, for phi on X_A.
struct MainBoundsInput {
    std::string name;
    LyapunovBounds phi;      // alpha^-(phi), alpha^+(phi)
    LyapunovBounds inverse;  // alpha^-(phi^-1), alpha^+(phi^-1)
    double log_rho = 0;          // log rho(S_phi)
    double log_rho_reverse = 0;  // log rho(S_{r*phi}) on X_{A^T}
    double h = 0;                // h_top(sigma_A)
    double log_rho_minus = 0;    // log rho_A^-
    std::vector<std::complex<double>> spectrum;  // of S_phi
};

namespace detail {

// Range of f(a, b) over a in ia, b in ib, for f linear in a and convex piecewise linear
// in b with its only kink at b = 0.
template <typename F>
std::pair<double, double> box_range(const RationalInterval& ia, const RationalInterval& ib, F f) {
    std::vector<double> as{to_double(ia.lo), to_double(ia.hi)};
    std::vector<double> bs{to_double(ib.lo), to_double(ib.hi)};
    if (ib.contains(Rational(0))) bs.push_back(0.0);
    double lo = INFINITY, hi = -INFINITY;
    for (double a : as)
        for (double b : bs) {
            lo = std::min(lo, f(a, b));
            hi = std::max(hi, f(a, b));
        }
    return {lo, hi};
}

inline std::string interval_text(const RationalInterval& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

}  // namespace detail

/// The minus bound uses log rho(S_phi). The plus bounds are the minus bounds for
/// r*(phi) and therefore bound log rho(S_{r*phi}); the form with rho(S_phi) is
/// reported alongside as a diagnostic.
inline Report verify_main_bounds(const MainBoundsInput& in, double tol = kDefaultTol) {
    Report rep("main bounds: " + in.name);
    const double h = in.h, lr = in.log_rho_minus;

    {
        auto [lo, hi] = detail::box_range(in.phi.alpha_minus, in.inverse.alpha_minus, [&](double a, double b) {
            return (std::abs(b) - a) * h + std::abs(b) * lr;
        });
        CheckRecord r{in.name + ": bound(-) log rho(S_phi) <= (|a-(phi^-1)| - a-(phi)) h + |a-(phi^-1)| log rho^-",
                      bound_status(in.log_rho, lo, hi, tol), in.log_rho, lo, hi, tol};
        r.detail = "a-(phi) in " + detail::interval_text(in.phi.alpha_minus) + ", a-(phi^-1) in " +
                   detail::interval_text(in.inverse.alpha_minus) + ", gap " + std::to_string(lo - in.log_rho);
        rep.add(std::move(r));
    }
    {
        auto [lo, hi] = detail::box_range(in.phi.alpha_plus, in.inverse.alpha_plus, [&](double a, double b) {
            return (std::abs(b) + a) * h + std::abs(b) * lr;
        });
        CheckRecord r{in.name + ": bound(+) log rho(S_{r*phi}) <= (|a+(phi^-1)| + a+(phi)) h + |a+(phi^-1)| log rho^-",
                      bound_status(in.log_rho_reverse, lo, hi, tol), in.log_rho_reverse, lo, hi, tol};
        const bool literal = in.log_rho <= hi + tol;
        r.detail = "a+(phi) in " + detail::interval_text(in.phi.alpha_plus) + ", a+(phi^-1) in " +
                   detail::interval_text(in.inverse.alpha_plus) + "; with log rho(S_phi) = " +
                   std::to_string(in.log_rho) + " in place of the reversed action the inequality " +
                   (literal ? "also holds" : "fails");
        rep.add(std::move(r));
    }

    const Rational zero(0);
    // part (1): a-(phi^-1) > 0 forces a-(phi) < 0 and log rho(S_phi) <= -a-(phi) h.
    {
        const auto& hyp = in.inverse.alpha_minus;
        const auto& a = in.phi.alpha_minus;
        CheckRecord r{in.name + ": part(1) a-(phi^-1) > 0 => a-(phi) < 0, log rho(S_phi) <= -a-(phi) h"};
        r.tol = tol;
        r.lhs = in.log_rho;
        if (hyp.hi <= zero) {
            r.status = Status::Confirmed;
            r.detail = "vacuous: a-(phi^-1) <= 0";
        } else if (hyp.lo <= zero) {
            r.status = Status::Inconclusive;
            r.detail = "hypothesis not certified: a-(phi^-1) in " + detail::interval_text(hyp);
        } else {
            r.rhs_lo = -to_double(a.hi) * h;
            r.rhs_hi = -to_double(a.lo) * h;
            Status sign = a.hi < zero ? Status::Confirmed : (a.lo >= zero ? Status::Violated : Status::Consistent);
            Status bound = bound_status(in.log_rho, *r.rhs_lo, *r.rhs_hi, tol);
            r.status = std::max(sign, bound);
            r.detail = "a-(phi) in " + detail::interval_text(a);
        }
        rep.add(std::move(r));
    }
    // part (2): a+(phi^-1) < 0 forces a+(phi) > 0 and log rho(S_{r*phi}) <= a+(phi) h.
    {
        const auto& hyp = in.inverse.alpha_plus;
        const auto& a = in.phi.alpha_plus;
        CheckRecord r{in.name + ": part(2) a+(phi^-1) < 0 => a+(phi) > 0, log rho(S_{r*phi}) <= a+(phi) h"};
        r.tol = tol;
        r.lhs = in.log_rho_reverse;
        if (hyp.lo >= zero) {
            r.status = Status::Confirmed;
            r.detail = "vacuous: a+(phi^-1) >= 0";
        } else if (hyp.hi >= zero) {
            r.status = Status::Inconclusive;
            r.detail = "hypothesis not certified: a+(phi^-1) in " + detail::interval_text(hyp);
        } else {
            r.rhs_lo = to_double(a.lo) * h;
            r.rhs_hi = to_double(a.hi) * h;
            Status sign = a.lo > zero ? Status::Confirmed : (a.hi <= zero ? Status::Violated : Status::Consistent);
            Status bound = bound_status(in.log_rho_reverse, *r.rhs_lo, *r.rhs_hi, tol);
            r.status = std::max(sign, bound);
            r.detail = "a+(phi) in " + detail::interval_text(a);
        }
        rep.add(std::move(r));
    }
    // Full-shift-like case: log rho^- + h = 0 collapses both bounds.
    if (std::abs(lr + h) <= tol) {
        const auto& am = in.phi.alpha_minus;
        CheckRecord r1{in.name + ": full-shift log rho(S_phi) <= -a-(phi) h",
                       bound_status(in.log_rho, -to_double(am.hi) * h, -to_double(am.lo) * h, tol), in.log_rho,
                       -to_double(am.hi) * h, -to_double(am.lo) * h, tol};
        rep.add(std::move(r1));
        const auto& ap = in.phi.alpha_plus;
        CheckRecord r2{in.name + ": full-shift log rho(S_{r*phi}) <= a+(phi) h",
                       bound_status(in.log_rho_reverse, to_double(ap.lo) * h, to_double(ap.hi) * h, tol),
                       in.log_rho_reverse, to_double(ap.lo) * h, to_double(ap.hi) * h, tol};
        rep.add(std::move(r2));
    }
    // Unit circle: phi and phi^-1 both certified range distorted.
    if (in.phi.alpha_minus.is_point(zero) && in.phi.alpha_plus.is_point(zero) && in.inverse.alpha_minus.is_point(zero) &&
        in.inverse.alpha_plus.is_point(zero)) {
        double worst = 0;
        for (const auto& z : in.spectrum) worst = std::max(worst, std::abs(std::abs(z) - 1.0));
        CheckRecord r{in.name + ": unit circle, all |eigenvalues of S_phi| = 1"};
        r.lhs = worst;
        r.rhs_lo = r.rhs_hi = 0.0;
        r.tol = tol;
        r.status = worst <= tol ? Status::Confirmed : Status::Violated;
        rep.add(std::move(r));
    }
    return rep;
}

struct DistortionSpectrum {
    double log_rho = 0;
    bool log_rho_zero = false;
    bool on_unit_circle = false;
    double max_deviation = 0;  // max | |z| - 1 | over the spectrum
};

/// Spectral consequence of group distortion: log rho(S_phi) = 0 and spectrum on |z| = 1.
inline DistortionSpectrum distortion_spectrum_check(const DimensionAction& action, double tol = kDefaultTol) {
    DistortionSpectrum d;
    d.log_rho = std::log(action.rho);
    d.log_rho_zero = std::abs(d.log_rho) <= tol;
    for (const auto& z : action.spectrum) d.max_deviation = std::max(d.max_deviation, std::abs(std::abs(z) - 1.0));
    d.on_unit_circle = d.max_deviation <= tol;
    return d;
}

}  // namespace sftlab
