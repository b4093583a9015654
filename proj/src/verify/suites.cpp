#include "effgraph/verify/suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "effgraph/ceer/ceer.hpp"
#include "effgraph/core/generators.hpp"
#include "effgraph/io/json_io.hpp"
#include "effgraph/ks/kumabe_slaman.hpp"
#include "effgraph/lo/linear_order_coding.hpp"
#include "effgraph/structure/structure_coding.hpp"

namespace effgraph::verify {

using nlohmann::json;

json to_json(const RunConfig& c) {
  return {{"seed", c.seed},
          {"instances", c.instances},
          {"ceer_schedules", c.ceer_schedules},
          {"ceer_pairs", c.ceer_pairs},
          {"ceer_budget", c.ceer_budget},
          {"ceer_brute_bound", c.ceer_brute_bound},
          {"lo_payload_bits", c.lo_payload_bits},
          {"lo_prefix", c.lo_prefix},
          {"struct_payload_bits", c.struct_payload_bits},
          {"struct_stages", c.struct_stages},
          {"struct_budget", c.struct_budget},
          {"ks_payload_bits", c.ks_payload_bits},
          {"ks_rounds", c.ks_rounds},
          {"ks_diff_budget", c.ks_diff_budget},
          {"ks_family", c.ks_family},
          {"ks_probe_depth", c.ks_probe_depth}};
}

bool Report::all_pass() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.pass; });
}

json Report::to_json() const {
  json rs = json::array();
  for (const auto& r : results) {
    rs.push_back({{"property", r.property}, {"status", r.pass ? "pass" : "fail"}, {"counterexample", r.counterexample}});
  }
  return {{"suite", suite}, {"config", verify::to_json(config)}, {"results", rs}};
}

namespace {

using Check = std::function<json()>;  // null on success, a counterexample otherwise

class Collector {
 public:
  void run(const std::string& property, const Check& check) {
    PropertyResult r{property, false, nullptr};
    try {
      r.counterexample = check();
      r.pass = r.counterexample.is_null();
    } catch (const std::exception& ex) {
      r.counterexample = {{"error", ex.what()}};
    }
    results.push_back(std::move(r));
  }
  std::vector<PropertyResult> results;
};

std::string numbered(const std::string& base, std::size_t i) {
  std::string n = std::to_string(i);
  if (n.size() < 2) n.insert(0, 2 - n.size(), '0');
  return base + "/" + n;
}

BitStream payload_literal(std::uint64_t seed, std::size_t bits, std::string* text = nullptr) {
  const std::string s = to_bit_string(streams::random(seed), bits);
  if (text) *text = s;
  return BitStream::from_string(s);
}

// ---------------------------------------------------------------- core

void core_oracles(const RunConfig& cfg, Collector& out) {
  out.run("core-oracles/pairing", []() -> json {
    for (Natural k = 0; k < 10000; ++k) {
      const auto [m, n] = CantorPairing::unpair(k);
      if (CantorPairing::pair(m, n) != k) return {{"k", k}};
    }
    for (Natural m = 0; m < 100; ++m) {
      for (Natural n = 0; n < 100; ++n) {
        if (CantorPairing::unpair(CantorPairing::pair(m, n)) != std::pair{m, n}) return {{"m", m}, {"n", n}};
      }
    }
    return nullptr;
  });
  out.run("core-oracles/join", [&cfg]() -> json {
    const BitStream a = streams::random(hash_pair(cfg.seed, 1));
    const BitStream b = streams::random(hash_pair(cfg.seed, 2));
    const BitStream c = join(a, b);
    const BitStream ev = even_part(c);
    const BitStream od = odd_part(c);
    for (Natural n = 0; n < 1000; ++n) {
      if (ev(n) != a(n) || od(n) != b(n)) return {{"n", n}};
    }
    return nullptr;
  });
  for (const auto& kind : order_kinds()) {
    out.run("core-oracles/order-code/" + kind, [&cfg, kind]() -> json {
      const LinearOrderOracle order = make_order({kind, hash_pair(cfg.seed, 3), json::object()});
      if (auto v = check_linear_order(order, 50); !v.empty()) return {{"axiom", v[0].axiom}, {"witness", v[0].witness}};
      const LinearOrderOracle back = decode_order(order_code(order));
      for (Natural m = 0; m < 50; ++m) {
        for (Natural n = 0; n < 50; ++n) {
          if (back.leq(m, n) != order.leq(m, n)) return {{"m", m}, {"n", n}};
        }
      }
      return nullptr;
    });
  }
  for (const auto& kind : structure_kinds()) {
    out.run("core-oracles/structure-table/" + kind, [&cfg, kind]() -> json {
      const StructureOracle m = make_structure({kind, hash_pair(cfg.seed, 4), json{{"size", 3}}});
      const StructureTable table = materialize_prefix(m, 12);
      const StructureOracle back = structure_from_table(table);
      if (!(io::structure_table_from_json(io::table_to_json(table)) == table)) return {{"json", "round trip differs"}};
      for (std::size_t r = 0; r < m.signature().size(); ++r) {
        json bad;
        for_each_tuple(m.signature()[r].arity, 12, [&](std::span<const Natural> t) {
          if (m.holds(r, t) == back.holds(r, t)) return true;
          bad = {{"relation", m.signature()[r].name}, {"tuple", std::vector<Natural>(t.begin(), t.end())}};
          return false;
        });
        if (!bad.is_null()) return bad;
      }
      return nullptr;
    });
  }
}

// ---------------------------------------------------------------- ceer

std::vector<std::pair<std::string, ceer::CeerEnumeration>> sample_ceers(const RunConfig& cfg) {
  std::vector<std::pair<std::string, ceer::CeerEnumeration>> out;
  for (Natural k = 1; k <= 4; ++k) out.emplace_back("mod-" + std::to_string(k), ceer::mod_k_ceer(k));
  for (std::size_t i = 0; i < cfg.ceer_schedules; ++i) {
    out.emplace_back(numbered("merge", i),
                     ceer::merge_schedule_ceer(ceer::random_merge_schedule(hash_pair(cfg.seed, 200 + i))));
  }
  return out;
}

constexpr Natural kCeerSampleBound = 60;

ceer::EquivalenceCertificate reversed(const ceer::EquivalenceCertificate& c) {
  return {c.y, c.x, {c.chain.rbegin(), c.chain.rend()}};
}

void ceer_diameter2(const RunConfig& cfg, Collector& out) {
  std::size_t idx = 0;
  for (const auto& [name, e] : sample_ceers(cfg)) {
    const std::uint64_t seed = hash_pair(cfg.seed, 300 + idx++);
    out.run("ceer-diameter2/" + name, [&, seed]() -> json {
      const auto pairs = ceer::sample_certified_pairs(e, kCeerSampleBound, cfg.ceer_budget, cfg.ceer_pairs, seed);
      if (pairs.empty()) return {{"error", "no certified pairs"}};
      for (const auto& [x, y] : pairs) {
        const ceer::Connection c = ceer::connect(e, x, y, cfg.ceer_budget);
        const json where = {{"x", x}, {"y", y}, {"z", c.z}};
        if (!c.x_side.adjacent || !c.y_side.adjacent) return where;
        if (!c.x_side.certificate || !c.y_side.certificate) return where;
        const auto& xz = *c.x_side.certificate;
        const auto& yz = *c.y_side.certificate;
        if (!ceer::replay(e, xz) || !ceer::replay(e, yz)) return where;
        const auto xy = ceer::compose(xz, reversed(yz));
        if (xy.x != x || xy.y != y || !ceer::replay(e, xy)) return where;
      }
      return nullptr;
    });
  }
}

void ceer_bruteforce(const RunConfig& cfg, Collector& out) {
  for (Natural k = 1; k <= 4; ++k) {
    out.run("ceer-bruteforce/mod-" + std::to_string(k), [&cfg, k]() -> json {
      const auto e = ceer::mod_k_ceer(k);
      for (Natural x = 0; x < cfg.ceer_brute_bound; ++x) {
        for (Natural y = 0; y < cfg.ceer_brute_bound; ++y) {
          if (x == y) continue;
          const bool same = x % k == y % k;
          const auto a = ceer::adjacent(e, x, y);
          if (a.adjacent && (!same || !a.certificate || !ceer::replay(e, *a.certificate))) {
            return {{"x", x}, {"y", y}, {"check", "adjacent"}};
          }
          bool connected = true;
          try {
            ceer::connect(e, x, y, cfg.ceer_budget);
          } catch (const BudgetExhausted&) {
            connected = false;
          }
          if (connected != same) return {{"x", x}, {"y", y}, {"check", "connect"}};
        }
      }
      return nullptr;
    });
  }
}

// ---------------------------------------------------------------- linear orders

void lo_roundtrip(const RunConfig& cfg, Collector& out) {
  const auto kinds = order_kinds();
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.run(numbered("lo-roundtrip", i), [&cfg, &kinds, i]() -> json {
      const std::uint64_t seed = hash_pair(cfg.seed, 400 + i);
      const std::string& kind = kinds[i % kinds.size()];
      const LinearOrderOracle base = make_order({kind, seed, json::object()});
      const BitStream a = payload_literal(seed ^ 1U, cfg.lo_payload_bits);
      const lo::EncodedOrder enc = lo::encode_order(base, a);
      const BitStream c = join(a, order_code(base));
      const Natural prefix = cfg.lo_prefix;

      for (Natural n = 0; n < 2 * cfg.lo_payload_bits; ++n) {
        if (lo::decode_payload(enc.order, n) != c(n)) return {{"kind", kind}, {"check", "payload"}, {"n", n}};
      }
      for (Natural n = 0; n < prefix; ++n) {
        if (enc.iso(enc.iso(n)) != n) return {{"kind", kind}, {"check", "involution"}, {"n", n}};
      }
      for (Natural n = 0; n < prefix; ++n) {
        for (Natural m = 0; m < prefix; ++m) {
          if (enc.order.leq(n, m) != base.leq(enc.iso(n), enc.iso(m))) {
            return {{"kind", kind}, {"check", "isomorphism"}, {"n", n}, {"m", m}};
          }
        }
      }
      const LinearOrderOracle recovered = lo::recover_base_order(enc.order);
      for (Natural n = 0; n < prefix / 2; ++n) {
        for (Natural m = 0; m < prefix / 2; ++m) {
          if (recovered.leq(n, m) != base.leq(n, m)) return {{"kind", kind}, {"check", "base-order"}, {"n", n}, {"m", m}};
        }
      }
      for (Natural n = 0; n < prefix / 2; ++n) {
        const auto [f0, f1] = lo::recover_isomorphism(base, enc.order, n);
        if (f0 != enc.iso(2 * n) || f1 != enc.iso(2 * n + 1)) return {{"kind", kind}, {"check", "recover-iso"}, {"n", n}};
      }
      return nullptr;
    });
  }
}

// ---------------------------------------------------------------- structures

const char* kStructureKinds[] = {"path-graph", "even-predicate", "random-bits"};

void struct_roundtrip(const RunConfig& cfg, Collector& out) {
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.run(numbered("struct-roundtrip", i), [&cfg, i]() -> json {
      using namespace structure;
      const std::uint64_t seed = hash_pair(cfg.seed, 500 + i);
      const std::string kind = kStructureKinds[i % 3];
      const StructureOracle m = make_structure({kind, seed, json::object()});
      std::string bits;
      const BitStream payload = payload_literal(seed ^ 1U, cfg.struct_payload_bits, &bits);
      const StructureEncoding enc = encode_structure(m, payload, cfg.struct_stages, cfg.struct_budget);
      const Natural bound = enc.certificate.max_bound();
      const json where = {{"kind", kind}, {"seed", seed}, {"certificate_bound", bound}};

      const std::vector<bool> expected = io::bits_from_string(bits.substr(0, enc.payload_bits.size()));
      if (enc.payload_bits != expected) return where;

      const auto check_decoded = [&](const DecodedStructure& dec) {
        if (dec.queue != enc.queue || dec.payload_bits != enc.payload_bits) return false;
        if (dec.placement_prefix.size() != enc.recoverable_positions) return false;
        return std::equal(dec.placement_prefix.begin(), dec.placement_prefix.end(), enc.placement.placed.begin());
      };
      const DecodedStructure dec = decode_structure(enc.coded, cfg.struct_stages, bound);
      if (!check_decoded(dec)) return json{{"where", where}, {"check", "decode"}};
      for (const auto& stage : dec.log) {
        if (!replay(enc.coded, stage)) return json{{"where", where}, {"check", "replay"}};
      }
      const StructureOracle table =
          structure_from_table(materialize_prefix(enc.coded, enc.certificate.table_bound));
      if (!check_decoded(decode_structure(table, cfg.struct_stages, bound))) {
        return json{{"where", where}, {"check", "decode-from-table"}};
      }

      const auto& f = enc.placement.placed;
      const Signature& sig = m.signature();
      for (std::size_t r = 0; r < sig.size(); ++r) {
        json bad;
        std::vector<Natural> image;
        for_each_tuple(sig[r].arity, f.size(), [&](std::span<const Natural> t) {
          image.resize(t.size());
          for (std::size_t k = 0; k < t.size(); ++k) image[k] = f[t[k]];
          if (enc.coded.holds(r, t) == m.holds(r, image)) return true;
          bad = {{"relation", sig[r].name}, {"tuple", std::vector<Natural>(t.begin(), t.end())}};
          return false;
        });
        if (!bad.is_null()) return json{{"where", where}, {"check", "pullback"}, {"atom", bad}};
      }
      return nullptr;
    });
  }
}

void struct_triviality(const RunConfig& cfg, Collector& out) {
  using namespace structure;
  out.run("struct-triviality/empty-signature", [&cfg]() -> json {
    try {
      encode_structure(structures::empty_signature(), BitStream::constant(false), 1, cfg.struct_budget);
    } catch (const TrivialityDetected& ex) {
      if (ex.stage() == 0) return nullptr;
      return {{"stage", ex.stage()}};
    }
    return {{"error", "no triviality reported"}};
  });
  out.run("struct-triviality/even-vs-odd", []() -> json {
    try {
      trivial_extend_iso(structures::even_predicate(), structures::odd_predicate(), {}, 10);
    } catch (const IsomorphismCheckFailed& ex) {
      if (ex.witness().relation == "P" && ex.witness().args == std::vector<Natural>{0}) return nullptr;
      return {{"relation", ex.witness().relation}, {"args", ex.witness().args}};
    }
    return {{"error", "no counterexample reported"}};
  });

  constexpr Natural kPrefix = 30;
  const std::size_t trivial_instances = std::max<std::size_t>(1, cfg.instances / 2);
  for (std::size_t i = 0; i < trivial_instances; ++i) {
    out.run(numbered("struct-triviality/marked-set", i), [&cfg, i]() -> json {
      std::mt19937_64 rng(hash_pair(cfg.seed, 600 + i));
      const std::size_t size = i == 0 ? 0 : 1 + rng() % 4;  // instance 0: no marks, a complete graph
      std::vector<Natural> pool(20);
      std::iota(pool.begin(), pool.end(), Natural{0});
      std::shuffle(pool.begin(), pool.end(), rng);
      const std::set<Natural> from(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
      std::shuffle(pool.begin(), pool.end(), rng);
      const std::vector<Natural> to(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
      std::map<Natural, Natural> f;
      std::size_t k = 0;
      for (Natural a : from) f[a] = to[k++];
      const StructureOracle m = structures::marked_set(from);
      const StructureOracle n = structures::marked_set({to.begin(), to.end()});

      trivial_extend_iso(m, n, f, kPrefix);
      if (is_trivial_within(m, {}, 1000) && size == 0) return {{"error", "complete graph reported non-trivial"}};

      // Any bijection agreeing with f on F is an isomorphism.
      std::vector<Natural> rest_src, rest_dst;
      for (Natural x = 0; x < kPrefix; ++x) {
        if (!f.count(x)) rest_src.push_back(x);
        if (std::find(to.begin(), to.end(), x) == to.end()) rest_dst.push_back(x);
      }
      for (int sample = 0; sample < 10; ++sample) {
        std::shuffle(rest_dst.begin(), rest_dst.end(), rng);
        std::vector<Natural> g(kPrefix);
        for (const auto& [a, b] : f) g[a] = b;
        for (std::size_t j = 0; j < rest_src.size(); ++j) g[rest_src[j]] = rest_dst[j];
        if (auto bad = check_isomorphism_table(m, n, g, kPrefix)) {
          return {{"sample", sample}, {"relation", bad->relation}, {"args", bad->args}};
        }
      }
      // A bijection sending a marked element to an unmarked one is caught.
      if (size > 0) {
        std::vector<Natural> g(kPrefix);
        for (const auto& [a, b] : f) g[a] = b;
        for (std::size_t j = 0; j < rest_src.size(); ++j) g[rest_src[j]] = rest_dst[j];
        const Natural a = f.begin()->first;
        const Natural other = rest_src.front();
        std::swap(g[a], g[other]);
        if (!check_isomorphism_table(m, n, g, kPrefix)) return {{"error", "disagreeing bijection accepted"}};
      }
      return nullptr;
    });
  }
}

// ---------------------------------------------------------------- Kumabe-Slaman

json monotonicity_failure(const std::vector<ks::KsCondition>& chain, const std::vector<BitStream>& paths) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!chain[i].depth()) continue;
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      for (std::size_t k = 0; k < paths.size(); ++k) {
        const std::string a = ks::eval_labels(chain[i], paths[k], *chain[i].depth());
        const std::string b = ks::eval_labels(chain[j], paths[k], *chain[j].depth());
        if (b.compare(0, a.size(), a) != 0) return {{"from", i}, {"to", j}, {"path", k}, {"short", a}, {"long", b}};
      }
    }
  }
  return nullptr;
}

void ks_coding(const RunConfig& cfg, Collector& out) {
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    out.run(numbered("ks-coding", i), [&cfg, i]() -> json {
      const std::uint64_t seed = hash_pair(cfg.seed, 700 + i);
      const BitStream x = streams::random(seed);
      std::string bits;
      const BitStream payload = payload_literal(seed ^ 1U, cfg.ks_payload_bits, &bits);
      const std::vector<ks::DenseSelector> sels{ks::selectors::identity(), ks::selectors::label_elsewhere(x),
                                                ks::selectors::add_forbidden(seed ^ 2U)};
      const auto g = ks::build_generic(ks::KsCondition{}, sels, x, payload, cfg.ks_rounds, cfg.ks_diff_budget,
                                       cfg.ks_probe_depth);
      const std::string read = ks::eval_labels(g, x, *g.labelling().depth());
      const std::string want = bits.substr(0, cfg.ks_rounds) + std::string(cfg.ks_rounds > bits.size() ? cfg.ks_rounds - bits.size() : 0, '0');
      if (read != want) return {{"read", read}, {"payload", want}};
      if (auto bad = ks::check_descending(g, cfg.ks_probe_depth)) return {{"descending", *bad}};
      if (auto bad = ks::check_bot_permanence(g)) return {{"bot", *bad}};
      std::vector<BitStream> paths{x};
      for (std::uint64_t k = 0; k < 3; ++k) paths.push_back(streams::random(hash_pair(seed, k)));
      if (json bad = monotonicity_failure(g.chain, paths); !bad.is_null()) return {{"monotonicity", bad}};
      return nullptr;
    });
  }
}

void ks_poset_laws(const RunConfig& cfg, Collector& out) {
  const auto family = ks::condition_family(hash_pair(cfg.seed, 800), cfg.ks_family);
  const std::size_t n = family.size();
  std::vector<std::vector<char>> ext(n, std::vector<char>(n));  // ext[q][p] = extends(q, p)
  for (std::size_t q = 0; q < n; ++q) {
    for (std::size_t p = 0; p < n; ++p) ext[q][p] = ks::extends(family[q], family[p], cfg.ks_probe_depth);
  }
  out.run("ks-poset-laws/reflexivity", [&]() -> json {
    for (std::size_t p = 0; p < n; ++p) {
      if (!ext[p][p]) return {{"condition", p}};
    }
    return nullptr;
  });
  out.run("ks-poset-laws/transitivity", [&]() -> json {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!ext[b][a]) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (ext[c][b] && !ext[c][a]) return {{"p", a}, {"q", b}, {"r", c}};
        }
      }
    }
    return nullptr;
  });
  out.run("ks-poset-laws/strict-pairs-present", [&]() -> json {
    std::size_t strict = 0;
    std::size_t incomparable = 0;
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t p = 0; p < n; ++p) {
        if (ext[q][p] && !ext[p][q]) ++strict;
        if (!ext[q][p] && !ext[p][q]) ++incomparable;
      }
    }
    if (strict == 0 || incomparable == 0) return {{"strict", strict}, {"incomparable", incomparable}};
    return nullptr;
  });
  out.run("ks-poset-laws/label-monotonicity", [&]() -> json {
    std::vector<BitStream> paths;
    for (std::uint64_t k = 0; k < 4; ++k) paths.push_back(streams::random(hash_pair(cfg.seed, 810 + k)));
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t p = 0; p < n; ++p) {
        if (!ext[q][p] || p == q) continue;
        if (json bad = monotonicity_failure({family[p], family[q]}, paths); !bad.is_null()) {
          return {{"p", p}, {"q", q}, {"detail", bad}};
        }
      }
    }
    return nullptr;
  });
}

void ks_negative(const RunConfig& cfg, Collector& out) {
  const BitStream x = streams::random(hash_pair(cfg.seed, 900));
  const auto expect_violation = [&](std::vector<ks::DenseSelector> sels, std::size_t round) -> json {
    try {
      ks::build_generic(ks::KsCondition{}, sels, x, BitStream::constant(true), round + 3, cfg.ks_diff_budget,
                        cfg.ks_probe_depth);
    } catch (const ks::SelectorContractViolation& ex) {
      if (ex.round() == round) return nullptr;
      return {{"round", ex.round()}, {"expected", round}};
    }
    return {{"error", "no violation reported"}};
  };
  out.run("ks-negative/label-along-round-0",
          [&]() { return expect_violation({ks::selectors::label_along(x)}, 0); });
  out.run("ks-negative/label-along-round-1",
          [&]() { return expect_violation({ks::selectors::identity(), ks::selectors::label_along(x)}, 1); });
  out.run("ks-negative/forbidden-path", [&]() -> json {
    const std::uint64_t s = hash_pair(cfg.seed, 900);
    const ks::KsCondition same(std::nullopt, {}, {{x, std::nullopt}});
    const ks::KsCondition equal(std::nullopt, {}, {{streams::random(s), std::nullopt}});
    for (Natural budget = 1; budget <= cfg.ks_diff_budget; budget *= 10) {
      for (const auto* p : {&same, &equal}) {
        try {
          ks::encode_bit_along(*p, x, true, budget);
          return {{"budget", budget}};
        } catch (const ks::DiffBudgetExhausted&) {
        }
      }
    }
    return nullptr;
  });
}

const std::map<std::string, void (*)(const RunConfig&, Collector&)>& registry() {
  static const std::map<std::string, void (*)(const RunConfig&, Collector&)> suites{
      {"core-oracles", core_oracles},       {"ceer-diameter2", ceer_diameter2},
      {"ceer-bruteforce", ceer_bruteforce}, {"lo-roundtrip", lo_roundtrip},
      {"struct-roundtrip", struct_roundtrip}, {"struct-triviality", struct_triviality},
      {"ks-coding", ks_coding},             {"ks-poset-laws", ks_poset_laws},
      {"ks-negative", ks_negative}};
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

Report run_suite(const std::string& selector, const RunConfig& config) {
  Report report{selector, config, {}};
  if (selector.empty()) return report;
  Collector collector;
  if (selector == "all") {
    for (const auto& [name, fn] : registry()) fn(config, collector);
  } else {
    const auto it = registry().find(selector);
    if (it == registry().end()) throw std::invalid_argument("unknown suite '" + selector + "'");
    it->second(config, collector);
  }
  report.results = std::move(collector.results);
  std::sort(report.results.begin(), report.results.end(),
            [](const PropertyResult& a, const PropertyResult& b) { return a.property < b.property; });
  return report;
}

}  // namespace effgraph::verify
