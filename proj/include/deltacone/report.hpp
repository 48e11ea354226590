#pragma once

// JSON serialization of analysis results. Reports carry a schema version,
// the inputs and a digest of them, every tolerance used, and the outputs.
// Wall-clock time is kept out of the document so reruns are byte-identical.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "deltacone/analysis.hpp"
#include "deltacone/cones.hpp"
#include "deltacone/fields.hpp"
#include "deltacone/radial.hpp"

namespace deltacone {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;

/// Finite doubles as numbers; +-inf and NaN as the strings "inf", "-inf", "nan".
Json num(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct AnalysisReport {
    std::string operation;
    Json inputs = Json::object();
    Json tolerances = Json::object();
    Json outputs = Json::object();
    bool pass = false;
    std::optional<std::uint64_t> seed;
    double runtime_seconds = 0.0;  // not serialized

    /// {schema, operation, inputs, inputs_digest, tolerances, outputs, pass, seed}
    Json to_json() const;
    std::string dump() const;  // 2-space indented, trailing newline
};

Json to_json(const Rational& r);
Json to_json(const EigenTuple& e);
Json to_json(const ExponentTable& t);
Json to_json(const ConeMargin& m);
Json to_json(const InclusionReport& r);
Json to_json(const HolderEstimate& e);
Json to_json(const BarrierReport& r);
Json to_json(const IntegralTrend& t);
Json to_json(const GrowingBallsReport& r);
Json to_json(const SingularityVerdict& v);
Json to_json(const ScaleInvariantReport& r);
Json to_json(const PLaplacianReport& r);  // per-node values omitted
Json to_json(const EigenBoundsFieldReport& r);
Json to_json(const MollifiedConeReport& r);
Json to_json(const InversionReport& r);
Json to_json(const GrowthConsistency& r);

}  // namespace deltacone
