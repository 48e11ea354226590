#pragma once

// Configuration for `deltacone field-analyze`: a JSON document validated in
// full before any field is sampled.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deltacone/analysis.hpp"
#include "deltacone/report.hpp"

namespace deltacone::cli {

/// Validation failure tied to a config path such as "grid.h".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error("config." + field + ": " + message), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct FieldSpec {
    std::string catalog;  // empty when `csv` is set
    double exponent = 1.0;
    double coeff = 1.0;
    double value = 0.0;
    std::vector<double> center;  // default: grid center
    std::vector<double> slope;   // linear fields
    std::string csv;
};

struct RunConfig {
    int n = 3;
    std::optional<double> delta;
    std::optional<int> k;
    FieldSpec field;
    std::vector<double> grid_center;
    double r0 = 1.0;
    double r_exc = 0.0;
    double h = 1.0 / 32.0;
    std::vector<std::string> operations;
    double p = 2.0;
    double mu = 0.0;
    int order = 1;
    std::optional<double> barrier_radius;
    std::optional<double> center_value;  // W at the grid center, for CSV fields
    std::vector<double> balls;
    ClassifyOptions classify;
    TrendOptions trend;
    std::map<std::string, std::string> expect;  // operation -> verdict
    std::uint64_t seed = 0;
    std::string write_field;  // optional CSV dump of the sampled field

    /// delta from `delta` or from k via (n-k)/(n(k-1)).
    std::optional<double> resolved_delta() const;
    Json to_json() const;
};

const std::vector<std::string>& known_operations();

/// Applies `j` on top of `base` and validates the result. Throws ConfigError.
RunConfig parse_run_config(const Json& j, RunConfig base = {});

}  // namespace deltacone::cli
