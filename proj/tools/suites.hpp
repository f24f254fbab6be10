#pragma once

// Verification suites behind `symdom verify`, plus the constants and wallach commands.

#include <string>
#include <vector>

#include "harness.hpp"
#include "symdom/domains.hpp"

namespace symdom::harness {

// Suite names accepted by `verify`, "all" last.
const std::vector<std::string>& suite_names();
// Throws UsageError for an unknown suite.
void run_suite(const std::string& name, const RunConfig& cfg, Report& rep);

void run_constants(const RunConfig& cfg, Report& rep);
void run_wallach(const RunConfig& cfg, Report& rep, const std::string& realization);

// Domain named by the config; throws UsageError on a bad family spec.
Domain config_domain(const RunConfig& cfg);

}  // namespace symdom::harness
