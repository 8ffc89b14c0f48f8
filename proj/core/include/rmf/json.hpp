#pragma once

#include <nlohmann/json.hpp>

#include "rmf/euler.hpp"
#include "rmf/stats.hpp"
#include "rmf/verify.hpp"

// JSON forms of the records and reports. Keys keep declaration order and
// doubles are written with round-trip precision, so parse(dump(r)) == r.
namespace rmf {

using Json = nlohmann::ordered_json;

void to_json(Json& j, Model m);
void from_json(const Json& j, Model& m);

void to_json(Json& j, const QuadratureSpec& q);
void from_json(const Json& j, QuadratureSpec& q);

void to_json(Json& j, const ExperimentConfig& c);
void from_json(const Json& j, ExperimentConfig& c);

/// JSON Lines record: keys x, seed, re, im, abs, v1, v5 (null when absent).
void to_json(Json& j, const TrialRecord& r);
void from_json(const Json& j, TrialRecord& r);

void to_json(Json& j, const SummaryStats& s);

void to_json(Json& j, const V5Result& r);

void to_json(Json& j, const RoughIntegralReport& r);
void from_json(const Json& j, RoughIntegralReport& r);

void to_json(Json& j, const GaussianityReport& r);
void from_json(const Json& j, GaussianityReport& r);

void to_json(Json& j, const ConcentrationReport& r);
void from_json(const Json& j, ConcentrationReport& r);

}  // namespace rmf
