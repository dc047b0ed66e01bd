// sftlab: command-line front end for the analysis and verification suites.
//
// Exit codes: 0 ok, 1 a Violated check or an internal invariant failure, 2 input
// error, 3 window budget exceeded.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sftlab/sftlab.hpp"

using namespace sftlab;

namespace {

struct Output {
    std::string json_path;
    bool timings = false;
};

std::string fmt(const std::optional<double>& x) {
    if (!x) return "-";
    std::ostringstream os;
    os << std::setprecision(10) << *x;
    return os.str();
}

void print_table(const Report& rep, std::ostream& out) {
    out << rep.title() << "  (logarithms in nats)\n";
    for (const auto& c : rep.checks()) {
        out << "  " << std::left << std::setw(13) << to_string(c.status) << c.name;
        if (c.lhs || c.rhs_lo) {
            out << "  [lhs " << fmt(c.lhs) << ", rhs " << fmt(c.rhs_lo);
            if (c.rhs_hi && c.rhs_hi != c.rhs_lo) out << ".." << fmt(c.rhs_hi);
            out << "]";
        }
        out << "\n";
        if (!c.detail.empty()) out << "               " << c.detail << "\n";
    }
    for (const auto& n : rep.notes()) out << "  note: " << n << "\n";
    const auto summary = rep.to_json()["summary"];
    out << "summary:";
    for (const auto& [k, v] : summary.items())
        if (v.get<std::size_t>() > 0) out << " " << k << "=" << v.get<std::size_t>();
    out << "\n";
}

int emit(const Report& rep, const Output& o) {
    print_table(rep, std::cout);
    if (!o.json_path.empty()) {
        std::ofstream f(o.json_path);
        if (!f) throw InputError("cannot write " + o.json_path);
        f << rep.to_json(o.timings).dump(2) << "\n";
    }
    return rep.exit_code();
}

std::uint64_t budget_from(double value) {
    if (value < 1) throw InputError("--budget must be at least 1");
    return static_cast<std::uint64_t>(value);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automorphisms of shifts of finite type and their dimension representation"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    double budget = static_cast<double>(window_budget());
    double tol = kDefaultTol;
    app.add_option("--budget", budget, "window enumeration budget (SFTLAB_BUDGET overrides the default)");
    app.add_option("--tol", tol, "floating-point tolerance");
    app.add_option("--json", out.json_path, "write the report as JSON to this path");
    app.add_flag("--timings", out.timings, "include runtime_ms in JSON records");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "analyze automorphisms from a system file");
    std::string system_path, auto_name;
    AnalyzeOptions aopt;
    analyze_cmd->add_option("file", system_path, "system JSON file")->required();
    analyze_cmd->add_option("--auto", auto_name, "automorphism name (default: all)");
    analyze_cmd->add_option("--n-max", aopt.n_max, "largest power for coding ranges")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--w", aopt.w, "census column half-width");
    analyze_cmd->add_option("--steps", aopt.steps, "census and C^phi iterate count")->check(CLI::PositiveNumber);

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "run a verification suite");
    std::string suite_name;
    SuiteOptions sopt;
    std::string matrix_path, poly_text, profile_system;
    suite_cmd->add_option("name", suite_name, "acceptance | theorem-3 | theorem-4 | spectra | profile")
        ->required()
        ->check(CLI::IsMember(suite_names()));
    suite_cmd->add_option("--jobs", sopt.jobs, "worker threads")->check(CLI::PositiveNumber);
    suite_cmd->add_option("--n-max", sopt.n_max, "largest power for coding ranges")->check(CLI::PositiveNumber);
    suite_cmd->add_option("--matrix", matrix_path, "matrix file used when the realization search finds nothing");
    suite_cmd->add_option("--poly", poly_text, "polynomial for the spectra suite");
    suite_cmd->add_option("--system", profile_system, "system file for the profile suite");
    suite_cmd->add_option("--auto", auto_name, "automorphism in --system for the profile suite");

    // spectra
    auto* spectra_cmd = app.add_subcommand("spectra", "spectral conditions and realization search");
    spectra_cmd->require_subcommand(1);
    std::size_t trace_n = 12;
    std::size_t max_size = 6;
    long long max_entry = 8;
    auto* check_cmd = spectra_cmd->add_subcommand("check", "check the three spectral conditions");
    check_cmd->add_option("--poly", poly_text, "descending integer coefficients, e.g. [1,-5,-6,1]")->required();
    check_cmd->add_option("--N", trace_n, "net traces checked up to N")->check(CLI::PositiveNumber);
    auto* search_cmd = spectra_cmd->add_subcommand("search", "search for a primitive realization");
    search_cmd->add_option("--poly", poly_text, "descending integer coefficients")->required();
    search_cmd->add_option("--max-size", max_size, "largest matrix size")->check(CLI::PositiveNumber);
    search_cmd->add_option("--max-entry", max_entry, "largest entry")->check(CLI::NonNegativeNumber);
    search_cmd->add_option("--matrix", matrix_path, "verify this matrix if the search finds nothing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::uint64_t b = budget_from(budget);
        if (analyze_cmd->parsed()) {
            const auto sys = load_system(system_path);
            aopt.tol = app.count("--tol") ? tol : sys.tol;
            aopt.budget = app.count("--budget") ? b : sys.budget;
            std::vector<std::string> names = auto_name.empty() ? sys.names : std::vector<std::string>{auto_name};
            if (names.empty()) throw InputError(system_path + " defines no automorphisms");
            Report rep("analyze " + system_path + (auto_name.empty() ? "" : " --auto " + auto_name));
            nlohmann::json per_auto = nlohmann::json::object();
            for (const auto& n : names) {
                auto one = analyze(sys.get(n), aopt);
                per_auto[n] = one.data();
                one.data() = nlohmann::json::object();
                rep.append(one);
            }
            rep.data()["automorphisms"] = std::move(per_auto);
            return emit(rep, out);
        }
        if (suite_cmd->parsed()) {
            sopt.tol = tol;
            sopt.budget = b;
            if (!matrix_path.empty()) sopt.eb_matrix = load_matrix_file(matrix_path);
            if (!poly_text.empty()) sopt.poly = parse_polynomial(poly_text);
            if (!profile_system.empty()) {
                const auto sys = load_system(profile_system);
                if (auto_name.empty() && sys.names.empty()) throw InputError(profile_system + " defines no automorphisms");
                sopt.profile_target = sys.get(auto_name.empty() ? sys.names.front() : auto_name);
            }
            return emit(run_suite(suite_name, sopt), out);
        }
        if (check_cmd->parsed()) {
            sopt.tol = tol;
            sopt.budget = b;
            sopt.poly = parse_polynomial(poly_text);
            sopt.trace_n = trace_n;
            auto r = check_conditions(sopt.poly, trace_n, tol);
            Report rep("spectra check " + poly_text);
            rep.data()["conditions"] = r.to_json();
            std::cout << rep.data()["conditions"].dump(2) << "\n";
            if (!out.json_path.empty()) return emit(rep, out);
            return 0;
        }
        if (search_cmd->parsed()) {
            sopt.tol = tol;
            sopt.budget = b;
            sopt.poly = parse_polynomial(poly_text);
            sopt.max_size = max_size;
            sopt.max_entry = max_entry;
            if (!matrix_path.empty()) sopt.eb_matrix = load_matrix_file(matrix_path);
            return emit(spectra_suite(sopt), out);
        }
    } catch (const WindowBudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const NotInverse& e) {
        std::cerr << "not an automorphism: " << e.what() << "\n";
        return 2;
    } catch (const NotInvariant& e) {
        std::cerr << "not invariant: " << e.what() << "\n";
        return 2;
    } catch (const NotInvertibleWithin& e) {
        std::cerr << "no inverse found: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
