#pragma once

// The acceptance suite: thirteen self-contained checks, each producing an
// AnalysisReport. Shared by the acceptance test binary and `deltacone suite`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "deltacone/report.hpp"

namespace deltacone {

enum class SuiteProfile { fast, full };
const char* to_string(SuiteProfile p) noexcept;
SuiteProfile parse_profile(const std::string& text);

struct FundamentalReport {
    int n = 0;
    ExponentTable exponents;
    int samples = 0;
    double max_spectrum_error = 0.0;  // relative to gamma (2 - gamma) |x|^{gamma-2}
    double max_abs_F = 0.0;
    double max_fd_error = 0.0;        // FD cross-check, relative
    double tolerance = 1e-10;
    double fd_tolerance = 1e-4;
    Vector worst_point;
    bool pass = false;
};

/// Samples points and checks that D^2|x|^gamma + delta lap |x|^gamma I has
/// spectrum {0, gamma (2-gamma) |x|^{gamma-2} x (n-1)} and that F_delta
/// vanishes, using exact derivatives; FD Hessians cross-check at fd_tolerance.
FundamentalReport verify_fundamental(int n, const Rational& delta, int samples, std::uint64_t seed,
                                     double tolerance = 1e-10, double fd_tolerance = 1e-4);
Json to_json(const FundamentalReport& r);

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string summary;  // one line
    AnalysisReport report;
    bool pass = false;
};

inline constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, SuiteProfile profile, std::uint64_t seed);

/// Runs all criteria in order; `on_done` sees each result as it completes.
std::vector<CriterionResult> run_acceptance(SuiteProfile profile, std::uint64_t seed,
                                            const std::function<void(const CriterionResult&)>& on_done = {});

}  // namespace deltacone
