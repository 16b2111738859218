#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gframe/hilbert_module.hpp"

namespace gframe {

enum class Status { pass, fail, not_applicable };
std::string to_string(Status s);

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

// Outcome of one executable theorem or frame check. Conclusions are recorded
// only after every hypothesis passed.
struct TheoremReport {
    std::string theorem_id;
    Status status = Status::not_applicable;
    std::vector<CheckResult> hypotheses;
    std::vector<CheckResult> conclusions;
    bool conclusion_pass = false;
    double conclusion_residual = 0.0;
    double tolerance = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> values;
    std::vector<std::pair<std::string, std::string>> notes;
    std::optional<ModuleVector> witness;

    TheoremReport() = default;
    TheoremReport(std::string id, double tol, std::uint64_t seed_)
        : theorem_id(std::move(id)), tolerance(tol), seed(seed_) {}

    // Returns pass so callers can stop at the first failing hypothesis.
    bool hypothesis(const std::string& name, bool pass, double residual = 0.0);
    // Pass iff residual <= tolerance (NaN fails).
    void conclusion(const std::string& name, double residual);
    void conclusion(const std::string& name, bool pass, double residual);
    void value(const std::string& name, double v) { values.emplace_back(name, v); }
    void note(const std::string& name, std::string text) { notes.emplace_back(name, std::move(text)); }

    bool hypotheses_hold() const;
    // Sets status from the recorded checks; returns *this for chaining.
    TheoremReport& finish();
    bool passed() const { return status == Status::pass; }
};

}  // namespace gframe
