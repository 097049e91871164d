#pragma once

// JSON forms shared by the HTTP service, the CLI and the on-disk formats.
// One serializer per type keeps CLI --format json and service bodies
// byte-identical.

#include <nlohmann/json.hpp>

#include "artist/corpus.hpp"
#include "artist/diagnostics.hpp"
#include "artist/evalmetrics.hpp"
#include "artist/pipeline.hpp"
#include "artist/readability.hpp"
#include "artist/segmentation.hpp"

namespace artist {

using json = nlohmann::json;

void to_json(json& j, const Span& span);  // [begin, end]
void from_json(const json& j, Span& span);

void to_json(json& j, const TextStats& stats);
void to_json(json& j, const ReadabilityReport& report);

void to_json(json& j, const Finding& finding);
void from_json(const json& j, Finding& finding);
void to_json(json& j, const DiagnosticsConfig& cfg);
void from_json(const json& j, DiagnosticsConfig& cfg);

void to_json(json& j, const SimplificationResult& result);

void to_json(json& j, const SariScore& score);

void to_json(json& j, const CorpusEvalRow& row);
void from_json(const json& j, CorpusEvalRow& row);
void to_json(json& j, const CorpusEvalTable& table);  // {"rows", "failed"}

void to_json(json& j, const RatingRecord& record);
// Validates the 1..5 range; throws Error(invalid_argument).
void from_json(const json& j, RatingRecord& record);
void to_json(json& j, const RatingMeans& means);

void to_json(json& j, const BackendConfig& cfg);
// Throws Error(invalid_argument) on unknown kinds or missing fields.
void from_json(const json& j, BackendConfig& cfg);

// Drops volatile fields (latency_ms) recursively, for golden comparisons.
json without_latency(json j);

// Compact rendering used for every response body and CLI JSON output.
// Invalid UTF-8 is replaced rather than rejected.
std::string dump_json(const json& j);

}  // namespace artist
