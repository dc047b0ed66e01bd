#pragma once

// JSON system files. A file names one shift and any number of automorphisms of it.
//
//   {"shift": {"builtin": "golden_mean"} | {"matrix": [[1,1],[1,0]]} | {"full_shift": 5}
//             | {"kronecker": [<shift>, <shift>]},
//    "automorphisms": {"name": <automorphism>, ...},
//    "tol": 1e-9, "budget": 5e7}
//
//   <automorphism> = {"builtin": "shift" | "inverse_shift" | "identity" | "vertex_swap_B"
//                                | "tau_golden" | "sigma_x_sigma_inv" | "symbol_permutation"
//                                | "five_symbol" | "product", ...}
//                  | {"memory": m, "anticipation": a, "rules": [{"window": [...], "output": e}, ...],
//                     "inverse": "infer" | {"memory": ..., "anticipation": ..., "rules": [...]},
//                     "r_max": 3}
//
// Every error carries the JSON pointer of the offending value.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sftlab/block_code.hpp"
#include "sftlab/builtins.hpp"
#include "sftlab/edge_shift.hpp"
#include "sftlab/spectral.hpp"

namespace sftlab {

struct SystemFile {
    ShiftPtr shift;
    std::vector<std::string> names;  // sorted, as JSON objects are
    std::map<std::string, Automorphism> automorphisms;
    double tol = kDefaultTol;
    std::uint64_t budget = window_budget();

    const Automorphism& get(const std::string& name) const {
        auto it = automorphisms.find(name);
        if (it == automorphisms.end()) throw InputError("no automorphism named '" + name + "'");
        return it->second;
    }
};

namespace detail {

using nlohmann::json;

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

inline const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(path.empty() ? "/" : path, "missing field '" + key + "'");
    return *it;
}

inline long long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
    return j.get<long long>();
}

inline std::uint64_t count_value(const json& j, const std::string& path) {
    if (j.is_number_integer() && j.get<long long>() >= 1) return j.get<std::uint64_t>();
    if (j.is_number_float() && j.get<double>() >= 1) return static_cast<std::uint64_t>(j.get<double>());
    throw ParseError(path, "expected a positive count");
}

inline std::vector<std::vector<long long>> int_matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array of rows");
    std::vector<std::vector<long long>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto p = child(path, i);
        if (!j[i].is_array()) throw ParseError(p, "expected a row array");
        std::vector<long long> row;
        for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(integer(j[i][k], child(p, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline NonnegIntMatrix parse_matrix(const json& j, const std::string& path) {
    try {
        return NonnegIntMatrix(int_matrix(j, path));
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        throw ParseError(path, e.what());
    }
}

inline ShiftPtr parse_shift(const json& j, const std::string& path) {
    if (!j.is_object() || j.size() != 1) throw ParseError(path, "shift spec must have exactly one of matrix, full_shift, builtin, kronecker");
    const auto& [key, val] = *j.items().begin();
    const auto p = child(path, key);
    if (key == "matrix") return build_edge_shift(parse_matrix(val, p));
    if (key == "full_shift") {
        const long long n = integer(val, p);
        if (n < 1) throw ParseError(p, "full shift needs at least one symbol");
        return builtins::full_shift(static_cast<unsigned>(n));
    }
    if (key == "builtin") {
        if (!val.is_string()) throw ParseError(p, "expected a builtin shift name");
        const auto name = val.get<std::string>();
        if (name == "golden_mean") return builtins::golden_mean();
        if (name == "matrix_B") return builtins::matrix_b();
        throw UnknownBuiltin(name);
    }
    if (key == "kronecker") {
        if (!val.is_array() || val.size() != 2) throw ParseError(p, "kronecker takes two shift specs");
        return kronecker_product(parse_shift(val[0], child(p, 0)), parse_shift(val[1], child(p, 1)));
    }
    throw ParseError(p, "unknown shift spec '" + key + "'");
}

inline SlidingBlockCode parse_rule_code(const json& j, const std::string& path, const ShiftPtr& s,
                                        std::uint64_t budget) {
    const auto m = integer(field(j, path, "memory"), child(path, "memory"));
    const auto a = integer(field(j, path, "anticipation"), child(path, "anticipation"));
    if (m < 0 || a < 0) throw ParseError(path, "memory and anticipation must be nonnegative");
    const std::size_t win = static_cast<std::size_t>(m + a + 1);
    auto idx = checked_indexer(s, win, budget);
    constexpr Edge kUnset = std::numeric_limits<Edge>::max();
    std::vector<Edge> table(idx->size(), kUnset);
    const auto rp = child(path, "rules");
    const json& rules = field(j, path, "rules");
    if (!rules.is_array()) throw ParseError(rp, "expected an array of rules");
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const auto p = child(rp, i);
        const json& wj = field(rules[i], p, "window");
        if (!wj.is_array() || wj.size() != win)
            throw ParseError(child(p, "window"), "window must list " + std::to_string(win) + " edges");
        Word w;
        for (std::size_t k = 0; k < wj.size(); ++k) {
            const long long e = integer(wj[k], child(child(p, "window"), k));
            if (e < 0 || static_cast<std::size_t>(e) >= s->num_edges()) throw ParseError(child(child(p, "window"), k), "no such edge");
            w.push_back(static_cast<Edge>(e));
        }
        if (!s->is_admissible(w)) throw ParseError(child(p, "window"), "window is not an admissible word");
        const long long out = integer(field(rules[i], p, "output"), child(p, "output"));
        if (out < 0 || static_cast<std::size_t>(out) >= s->num_edges()) throw ParseError(child(p, "output"), "no such edge");
        Edge& slot = table[idx->rank(w)];
        if (slot != kUnset && slot != static_cast<Edge>(out)) throw ParseError(p, "conflicting rule for this window");
        slot = static_cast<Edge>(out);
    }
    for (std::size_t r = 0; r < table.size(); ++r)
        if (table[r] == kUnset) {
            std::ostringstream os;
            auto w = idx->unrank(r);
            os << "no rule for window [";
            for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
            os << "]";
            throw ParseError(rp, os.str());
        }
    try {
        return SlidingBlockCode::make(s, s, static_cast<std::size_t>(m), static_cast<std::size_t>(a), std::move(table),
                                      budget);
    } catch (const ParseError&) {
        throw;
    } catch (const InputError& e) {
        throw ParseError(path, e.what());
    }
}

inline void require_shift(const Automorphism& phi, const ShiftPtr& s, const std::string& path) {
    if (!phi.shift()->same_system(*s)) throw ParseError(path, "builtin '" + phi.name + "' lives on a different shift");
}

inline Automorphism parse_automorphism(const json& j, const std::string& path, const ShiftPtr& s,
                                       std::uint64_t budget) {
    if (!j.is_object()) throw ParseError(path, "expected an automorphism object");
    if (j.contains("builtin")) {
        const auto bp = child(path, "builtin");
        if (!j["builtin"].is_string()) throw ParseError(bp, "expected a builtin automorphism name");
        const auto name = j["builtin"].get<std::string>();
        Automorphism phi;
        if (name == "identity") {
            phi = builtins::identity(s);
        } else if (name == "shift") {
            phi = builtins::shift(s);
        } else if (name == "inverse_shift") {
            phi = builtins::inverse_shift(s);
        } else if (name == "vertex_swap_B") {
            phi = builtins::vertex_swap_b();
        } else if (name == "tau_golden") {
            phi = builtins::tau_golden();
        } else if (name == "sigma_x_sigma_inv") {
            phi = builtins::sigma_x_sigma_inv();
        } else if (name == "symbol_permutation") {
            const auto pp = child(path, "perm");
            const json& pj = field(j, path, "perm");
            if (!pj.is_array()) throw ParseError(pp, "expected a permutation array");
            std::vector<Edge> perm;
            for (std::size_t i = 0; i < pj.size(); ++i) {
                const long long v = integer(pj[i], child(pp, i));
                if (v < 0) throw ParseError(child(pp, i), "negative symbol");
                perm.push_back(static_cast<Edge>(v));
            }
            try {
                phi = builtins::full_shift_symbol_permutation(static_cast<unsigned>(perm.size()), perm);
            } catch (const InputError& e) {
                throw ParseError(pp, e.what());
            }
        } else if (name == "five_symbol") {
            int completion = builtins::kSwapCompletion;
            if (j.contains("completion")) {
                const auto cp = child(path, "completion");
                const auto& c = j["completion"];
                if (c.is_string() && c.get<std::string>() == "swap")
                    completion = builtins::kSwapCompletion;
                else if (c.is_number_integer() && c.get<int>() >= 0 && c.get<int>() < builtins::kSwapCompletion)
                    completion = c.get<int>();
                else
                    throw ParseError(cp, "completion must be 0..4 or \"swap\"");
            }
            phi = builtins::five_symbol(completion);
        } else if (name == "product") {
            const auto* fac = s->factors();
            if (fac == nullptr) throw ParseError(bp, "product needs a kronecker shift");
            auto f = parse_automorphism(field(j, path, "left"), child(path, "left"), fac->left, budget);
            auto g = parse_automorphism(field(j, path, "right"), child(path, "right"), fac->right, budget);
            phi = builtins::product(f, g);
        } else {
            throw UnknownBuiltin(name);
        }
        require_shift(phi, s, path);
        return phi;
    }
    auto f = parse_rule_code(j, path, s, budget);
    const json inv = j.value("inverse", json("infer"));
    if (inv.is_string()) {
        if (inv.get<std::string>() != "infer") throw ParseError(child(path, "inverse"), "expected \"infer\" or a rule table");
        int r_max = 3;
        if (j.contains("r_max")) r_max = static_cast<int>(integer(j["r_max"], child(path, "r_max")));
        return automorphism_with_inferred_inverse(f, r_max, {}, budget);
    }
    auto g = parse_rule_code(inv, child(path, "inverse"), s, budget);
    return verify_automorphism(f, g, {}, budget);
}

}  // namespace detail

inline SystemFile parse_system(const nlohmann::json& j) {
    SystemFile sys;
    if (!j.is_object()) throw ParseError("/", "system file must be a JSON object");
    if (j.contains("tol")) {
        if (!j["tol"].is_number() || j["tol"].get<double>() <= 0) throw ParseError("/tol", "expected a positive number");
        sys.tol = j["tol"].get<double>();
    }
    if (j.contains("budget")) sys.budget = detail::count_value(j["budget"], "/budget");
    sys.shift = detail::parse_shift(detail::field(j, "", "shift"), "/shift");
    if (j.contains("automorphisms")) {
        const auto& autos = j["automorphisms"];
        if (!autos.is_object()) throw ParseError("/automorphisms", "expected an object of named automorphisms");
        for (const auto& [name, spec] : autos.items()) {
            auto phi = detail::parse_automorphism(spec, "/automorphisms/" + name, sys.shift, sys.budget);
            phi.name = name;
            sys.names.push_back(name);
            sys.automorphisms.emplace(name, std::move(phi));
        }
    }
    return sys;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + "@" + std::to_string(e.byte), e.what());
    }
}

inline SystemFile load_system(const std::string& path) { return parse_system(read_json_file(path)); }

inline nlohmann::json serialize_shift(const EdgeShift& s) {
    if (const auto* fac = s.factors())
        return {{"kronecker", nlohmann::json::array({serialize_shift(*fac->left), serialize_shift(*fac->right)})}};
    std::vector<std::vector<long long>> rows(s.num_states(), std::vector<long long>(s.num_states()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows.size(); ++k) rows[i][k] = s.matrix()(i, k);
    return {{"matrix", rows}};
}

inline nlohmann::json serialize_code(const SlidingBlockCode& code) {
    nlohmann::json rules = nlohmann::json::array();
    WordIndexer(code.source(), code.window()).for_each([&](const Word& w, std::uint64_t r) {
        rules.push_back({{"window", w}, {"output", code.table()[r]}});
    });
    return {{"memory", code.memory()}, {"anticipation", code.anticipation()}, {"rules", std::move(rules)}};
}

/// Rule-table form with an explicit inverse.
inline nlohmann::json serialize_automorphism(const Automorphism& phi) {
    auto j = serialize_code(phi.forward);
    j["inverse"] = serialize_code(phi.inverse);
    return j;
}

inline nlohmann::json serialize_system(const ShiftPtr& shift, const std::map<std::string, Automorphism>& autos) {
    nlohmann::json j;
    j["shift"] = serialize_shift(*shift);
    j["automorphisms"] = nlohmann::json::object();
    for (const auto& [name, phi] : autos) j["automorphisms"][name] = serialize_automorphism(phi);
    return j;
}

/// {"matrix": [[...]]} on its own, for matrices handed to the spectra tools.
inline NonnegIntMatrix load_matrix_file(const std::string& path) {
    auto j = read_json_file(path);
    return detail::parse_matrix(detail::field(j, "", "matrix"), "/matrix");
}

}  // namespace sftlab
