#pragma once

#include <string>

#include "holderreg/limits.hpp"
#include "holderreg/regularity.hpp"

namespace holderreg::io {

/// Encodes an extended real for JSON (finite -> number, else "inf"/"-inf").
std::string encode_extended(double v);

/// Report JSON for a norm-like estimate:
///   {"quantity":..., "q":..., "value":..., "verdict":..., "per_scale":[[t,v],...]}.
std::string limit_report_json(const std::string& quantity, double q, const LimitEstimate& est);

/// Report JSON for a modulus estimate (adds modulus/verdict/witness/trace).
std::string regularity_report_json(const std::string& quantity, const RegularityReport& rep);

/// CSV mirror with header "direction_index,t,value", decimal doubles, LF
/// endings. Rung-indexed estimates use direction_index 0.
std::string per_scale_csv(const LimitEstimate& est, bool scale_is_direction);
std::string trace_csv(const RegularityReport& rep);

/// Atomic write (temp file + rename). Creates parent directories.
void write_atomic(const std::string& path, const std::string& content);

/// Writes the report, its CSV mirror, and a sibling .meta.json carrying the
/// wall-clock timestamp (kept out of the report so reruns are byte-identical).
void emit_report(const std::string& out_dir, const std::string& name, const std::string& json_text,
                 const std::string& csv_text);

}  // namespace holderreg::io
