#pragma once

#include <optional>
#include <string>

#include "holderreg/lsip.hpp"
#include "holderreg/penalty.hpp"
#include "holderreg/regularity.hpp"

namespace holderreg::io {

/// A parsed problem file: exactly one of the payloads is set, matching the
/// top-level "kind".
struct ParsedProblem {
  std::string kind;     // "function" | "map"
  std::string family;
  std::optional<ScalarFn> function;
  std::optional<SetValuedMap> map;
  std::optional<SubdiffOracle> subdiff;  // set for subdiff-family maps
  Vec xbar;  // base point (defaults to the origin of the right dimension)
  Vec ybar;
};

/// Builds a scalar function from a family spec:
///   power{exponent,scale}, abs{scale}, abs_power{alpha,scale},
///   domain_power{alpha,scale}, norm{n}, max_affine{rows}.
ScalarFn make_function(const std::string& family, const std::string& params_json);

/// Parses a problem-definition JSON document
///   {"kind":"function"|"map", "family":..., "params":{...},
///    "xbar":[...], "ybar":[...]}.
/// Map families: epigraph{of}, subdiff{of | f+gradient}, explicit_graph{points}.
ParsedProblem parse_problem(const std::string& json_text);

/// Reads and parses a problem file; JSON syntax errors carry line/column.
ParsedProblem load_problem(const std::string& path);

/// LSIP problem files:
///   {"n":2, "c":[1,0],
///    "family":{"kind":"parametric","curve":"circle","b":"const:1",
///              "range":[lo,hi]}, "N":720}
/// or {"family":{"kind":"finite","rows":[[[a...],b],...]}}.
lsip::LsipProblem parse_lsip(const std::string& json_text);
lsip::LsipProblem load_lsip(const std::string& path);

/// Penalty problem files:
///   {"f":{...}, "g":[{...},...], "p":1.0, "r":3.0, "xbar":[0]}.
penalty::PenaltyProblem parse_penalty(const std::string& json_text);
penalty::PenaltyProblem load_penalty(const std::string& path);

/// The same penalty problem under the opposite power convention
/// (abs_power <-> domain_power, power <-> domain_power), when every
/// constraint family supports the swap.
std::optional<penalty::PenaltyProblem> penalty_convention_twin(const std::string& json_text);

/// Reads a whole file into a string.
std::string read_file(const std::string& path);

}  // namespace holderreg::io
