#pragma once

#include <string>
#include <vector>

#include "holderreg/config.hpp"
#include "holderreg/regularity.hpp"

namespace holderreg::verify {

struct PropertyResult {
  std::string property_id;
  std::string law;  // the relation that was checked, in words
  bool pass = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
};

/// Shared fixtures: set-valued mappings with base points and three probe
/// orders (below / at / above the critical one).
struct CatalogMap {
  std::string name;
  SetValuedMap map;
  Vec xbar, ybar;
  std::vector<double> orders;
};

std::vector<CatalogMap> mapping_catalog();

struct CatalogFn {
  std::string name;
  ScalarFn f;
  Vec xbar;
  double critical_q;
};

std::vector<CatalogFn> function_catalog();

std::vector<PropertyResult> suite_calculus(const RunConfig& cfg);
std::vector<PropertyResult> suite_moduli(const RunConfig& cfg);
std::vector<PropertyResult> suite_lsip(const RunConfig& cfg);
std::vector<PropertyResult> suite_penalty(const RunConfig& cfg);

/// name in {calculus, moduli, lsip, penalty, all}.
std::vector<PropertyResult> run_suite(const std::string& name, const RunConfig& cfg);

bool all_pass(const std::vector<PropertyResult>& results);
std::string results_json(const std::vector<PropertyResult>& results);

/// Comparison of two extended-real estimates: equal verdict classes
/// (zero / finite-positive / infinite) and relative agreement when finite.
bool estimates_agree(double a, double b, double rel_slack, double zero_tol = 1e-2);

}  // namespace holderreg::verify
