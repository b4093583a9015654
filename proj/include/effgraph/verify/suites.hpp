#ifndef EFFGRAPH_VERIFY_SUITES_HPP
#define EFFGRAPH_VERIFY_SUITES_HPP

// Property suites behind `effgraph verify`. Every random choice is drawn from
// the RunConfig seed, so equal configs give byte-identical reports.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "effgraph/core/oracles.hpp"

namespace effgraph::verify {

struct RunConfig {
  std::uint64_t seed = 7;
  std::size_t instances = 20;       // seeded instances per round-trip suite
  std::size_t ceer_schedules = 10;
  std::size_t ceer_pairs = 100;
  Natural ceer_budget = 1000;
  Natural ceer_brute_bound = 40;
  std::size_t lo_payload_bits = 64;
  Natural lo_prefix = 200;
  std::size_t struct_payload_bits = 32;
  std::size_t struct_stages = 40;
  Natural struct_budget = 10000;
  std::size_t ks_payload_bits = 32;
  std::size_t ks_rounds = 32;
  Natural ks_diff_budget = 10000;
  std::size_t ks_family = 50;
  Natural ks_probe_depth = 64;
};

nlohmann::json to_json(const RunConfig& c);

struct PropertyResult {
  std::string property;
  bool pass = false;
  nlohmann::json counterexample;  // null on pass
};

struct Report {
  std::string suite;
  RunConfig config;
  std::vector<PropertyResult> results;  // sorted by property

  bool all_pass() const;
  nlohmann::json to_json() const;
};

std::vector<std::string> suite_names();

// "all" runs every suite, "" gives an empty report. Throws
// std::invalid_argument for an unknown suite.
Report run_suite(const std::string& selector, const RunConfig& config);

}  // namespace effgraph::verify

#endif  // EFFGRAPH_VERIFY_SUITES_HPP
