// One PASS/FAIL line per acceptance criterion. Every criterion is exact:
// a single failing property fails it. Wall-clock limits are part of the
// criterion and are checked on the same run.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "effgraph/verify/suites.hpp"

using namespace effgraph::verify;

namespace {

// The pinned configuration: seed 7 and the sizes each criterion names.
RunConfig pinned() {
  RunConfig c;
  c.seed = 7;
  c.instances = 20;
  c.ceer_schedules = 10;
  c.ceer_pairs = 100;
  c.ceer_budget = 1000;
  c.ceer_brute_bound = 40;
  c.lo_payload_bits = 64;
  c.lo_prefix = 200;
  c.struct_payload_bits = 32;
  c.struct_stages = 40;
  c.struct_budget = 100000;
  c.ks_payload_bits = 32;
  c.ks_rounds = 32;
  c.ks_diff_budget = 10000;
  c.ks_family = 50;
  c.ks_probe_depth = 64;
  return c;
}

struct Criterion {
  int number;
  std::string name;
  std::vector<std::string> suites;
  double seconds_limit;
};

struct Outcome {
  std::size_t properties = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

Outcome run_suites(const std::vector<std::string>& suites, const RunConfig& cfg) {
  Outcome o;
  for (const auto& s : suites) {
    const Report r = run_suite(s, cfg);
    for (const auto& p : r.results) {
      ++o.properties;
      if (!p.pass) {
        if (o.failures++ == 0) o.first_failure = p.property + " " + p.counterexample.dump();
      }
    }
  }
  return o;
}

bool report(int number, const std::string& name, bool pass, double seconds, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s [%.2f s]\n", pass ? "PASS" : "FAIL", number, name.c_str(), detail.c_str(),
              seconds);
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  const RunConfig cfg = pinned();
  const std::vector<Criterion> criteria{
      {1, "ceer diameter-2 graphing", {"ceer-diameter2"}, 30.0},
      {2, "ceer brute-force equivalence", {"ceer-bruteforce"}, 10.0},
      {3, "linear-order round trip", {"lo-roundtrip"}, 10.0},
      {4, "structure round trip", {"struct-roundtrip"}, 60.0},
      {5, "triviality boundary", {"struct-triviality"}, 10.0},
      {6, "forcing coding soundness", {"ks-coding", "ks-poset-laws"}, 10.0},
      {7, "negative contracts", {"ks-negative"}, 5.0},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    std::string error;
    try {
      o = run_suites(c.suites, cfg);
    } catch (const std::exception& ex) {
      error = ex.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    std::string detail;
    bool pass = false;
    if (!error.empty()) {
      detail = "threw: " + error;
    } else {
      pass = o.failures == 0 && o.properties > 0 && secs < c.seconds_limit;
      detail = std::to_string(o.properties - o.failures) + "/" + std::to_string(o.properties) + " properties";
      if (o.failures > 0) detail += ", first failure " + o.first_failure;
      if (secs >= c.seconds_limit) detail += ", over the " + std::to_string(static_cast<int>(c.seconds_limit)) + " s limit";
    }
    all = report(c.number, c.name, pass, secs, detail) && all;
  }

  // What `verify --suite all --seed 7` runs: the default config.
  {
    const auto start = Clock::now();
    std::string detail;
    bool pass = false;
    try {
      const RunConfig defaults;
      const std::string first = run_suite("all", defaults).to_json().dump();
      const std::string second = run_suite("all", defaults).to_json().dump();
      pass = first == second;
      detail = pass ? "two reports byte-identical (" + std::to_string(first.size()) + " bytes)" : "reports differ";
    } catch (const std::exception& ex) {
      detail = std::string("threw: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    all = report(8, "reproducibility", pass, secs, detail) && all;
  }
  return all ? 0 : 1;
}
