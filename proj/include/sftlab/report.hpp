#pragma once

// Verification records and reports. Logs are natural logarithms throughout.

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace sftlab {

enum class Status { Confirmed, Consistent, Inconclusive, Violated, NotStrict, Indeterminate };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Confirmed: return "Confirmed";
        case Status::Consistent: return "Consistent";
        case Status::Inconclusive: return "Inconclusive";
        case Status::Violated: return "Violated";
        case Status::NotStrict: return "NotStrict";
        case Status::Indeterminate: return "Indeterminate";
    }
    return "?";
}

struct CheckRecord {
    std::string name;
    Status status = Status::Inconclusive;
    std::optional<double> lhs;
    std::optional<double> rhs_lo;
    std::optional<double> rhs_hi;
    double tol = 0;
    std::string detail;
    double runtime_ms = 0;  // not serialized unless timings are requested

    bool passed() const { return status != Status::Violated; }
};

/// Status of "lhs <= rhs" when rhs is only known to lie in [lo, hi].
inline Status bound_status(double lhs, double lo, double hi, double tol) {
    if (lhs <= lo + tol) return Status::Confirmed;
    if (lhs <= hi + tol) return Status::Consistent;
    return Status::Violated;
}

class Report {
public:
    explicit Report(std::string title = {}) : title_(std::move(title)) {}

    const std::string& title() const noexcept { return title_; }
    const std::vector<CheckRecord>& checks() const noexcept { return checks_; }

    CheckRecord& add(CheckRecord r) {
        checks_.push_back(std::move(r));
        return checks_.back();
    }

    void append(const Report& other) {
        for (const auto& c : other.checks_) checks_.push_back(c);
        for (const auto& n : other.notes_) notes_.push_back(n);
        for (const auto& [k, v] : other.data_.items()) data_[k] = v;
    }

    void note(std::string text) { notes_.push_back(std::move(text)); }
    const std::vector<std::string>& notes() const noexcept { return notes_; }

    /// Free-form computed values (profiles, matrices) carried alongside the checks.
    nlohmann::json& data() { return data_; }
    const nlohmann::json& data() const { return data_; }

    bool any_violated() const {
        for (const auto& c : checks_)
            if (c.status == Status::Violated) return true;
        return false;
    }

    int exit_code() const { return any_violated() ? 1 : 0; }

    nlohmann::json to_json(bool timings = false) const {
        nlohmann::json j;
        j["title"] = title_;
        j["units"] = "logarithms are natural (nats)";
        j["checks"] = nlohmann::json::array();
        std::size_t counts[6] = {};
        for (const auto& c : checks_) {
            nlohmann::json r;
            r["name"] = c.name;
            r["status"] = to_string(c.status);
            r["lhs"] = c.lhs ? nlohmann::json(*c.lhs) : nlohmann::json(nullptr);
            r["rhs_lo"] = c.rhs_lo ? nlohmann::json(*c.rhs_lo) : nlohmann::json(nullptr);
            r["rhs_hi"] = c.rhs_hi ? nlohmann::json(*c.rhs_hi) : nlohmann::json(nullptr);
            r["tol"] = c.tol;
            if (!c.detail.empty()) r["detail"] = c.detail;
            if (timings) r["runtime_ms"] = c.runtime_ms;
            j["checks"].push_back(std::move(r));
            ++counts[static_cast<int>(c.status)];
        }
        nlohmann::json summary;
        for (int s = 0; s < 6; ++s) summary[to_string(static_cast<Status>(s))] = counts[s];
        j["summary"] = summary;
        j["notes"] = notes_;
        j["data"] = data_.is_null() ? nlohmann::json::object() : data_;
        j["exit_code"] = exit_code();
        return j;
    }

private:
    std::string title_;
    std::vector<CheckRecord> checks_;
    std::vector<std::string> notes_;
    nlohmann::json data_ = nlohmann::json::object();
};

/// Runs f() -> CheckRecord and stamps its wall time.
template <typename F>
CheckRecord timed(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    CheckRecord r = f();
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace sftlab
