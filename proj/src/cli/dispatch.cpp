#include "effgraph/cli/dispatch.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "effgraph/ceer/ceer.hpp"
#include "effgraph/core/generators.hpp"
#include "effgraph/io/json_io.hpp"
#include "effgraph/ks/kumabe_slaman.hpp"
#include "effgraph/lo/linear_order_coding.hpp"
#include "effgraph/structure/structure_coding.hpp"
#include "effgraph/verify/suites.hpp"

namespace effgraph::cli {

namespace {

using nlohmann::json;

// Thrown for malformed arguments found after parsing (bad JSON, bad bits).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_json(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text = arg;
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[')) {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read JSON file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& ex) {
    throw UsageError(std::string("invalid JSON: ") + ex.what());
  }
}

BitStream bits_arg(const std::string& bits) {
  if (bits.find_first_not_of("01") != std::string::npos) throw UsageError("payload must be a string of 0/1");
  return BitStream::from_string(bits);
}

struct Globals {
  std::uint64_t seed = 7;
  std::string out_path;
  std::string format = "json";
};

// Each subcommand leaves its result here; dispatch writes it once.
struct Output {
  std::string text;
  bool failed = false;  // a verification report with failures
};

std::string render(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- ceer-graph

void add_ceer(CLI::App& app, Globals& g, Output& result) {
  auto* cmd = app.add_subcommand("ceer-graph", "Diameter-2 graphing of a ceer");
  cmd->require_subcommand(1);

  struct Args {
    std::string ceer;
    Natural x = 0, y = 0, budget = 1000;
    std::string dot;
    std::size_t pairs = 100;
  };
  auto args = std::make_shared<Args>();

  auto* adj = cmd->add_subcommand("adjacent", "Decide adjacency of x and y");
  adj->add_option("--ceer", args->ceer, "ceer descriptor (JSON or file)")->required();
  adj->add_option("--x", args->x)->required();
  adj->add_option("--y", args->y)->required();
  adj->add_option("--dot", args->dot, "also write the witness graph as DOT");
  adj->callback([args, &g, &result] {
    const auto e = ceer::make_ceer(parse_descriptor(load_json(args->ceer)));
    const auto a = ceer::adjacent(e, args->x, args->y);
    if (!args->dot.empty()) {
      std::ofstream(args->dot) << ceer::to_dot(a.graph, args->x, args->y);
    }
    result.text = g.format == "dot" ? ceer::to_dot(a.graph, args->x, args->y) : render(io::adjacency_to_json(a));
  });

  auto* con = cmd->add_subcommand("connect", "Find a common neighbour of equivalent x and y");
  con->add_option("--ceer", args->ceer)->required();
  con->add_option("--x", args->x)->required();
  con->add_option("--y", args->y)->required();
  con->add_option("--budget", args->budget, "column indices searched")->required();
  con->callback([args, &g, &result] {
    const auto e = ceer::make_ceer(parse_descriptor(load_json(args->ceer)));
    const auto c = ceer::connect(e, args->x, args->y, args->budget);
    if (g.format == "dot") {
      result.text = ceer::to_dot(c.x_side.graph, args->x, c.z) + ceer::to_dot(c.y_side.graph, args->y, c.z);
      return;
    }
    result.text = render({{"x", args->x},
                          {"y", args->y},
                          {"z", c.z},
                          {"bound", c.bound},
                          {"found_at", c.found_at},
                          {"searched_from_y", c.searched_from_y},
                          {"x_side", io::adjacency_to_json(c.x_side)},
                          {"y_side", io::adjacency_to_json(c.y_side)}});
  });

  auto* ver = cmd->add_subcommand("verify", "Check connect on sampled equivalent pairs");
  ver->add_option("--ceer", args->ceer)->required();
  ver->add_option("--pairs", args->pairs);
  ver->add_option("--budget", args->budget);
  ver->callback([args, &g, &result] {
    const auto e = ceer::make_ceer(parse_descriptor(load_json(args->ceer)));
    json failures = json::array();
    const auto pairs = ceer::sample_certified_pairs(e, 60, args->budget, args->pairs, g.seed);
    for (const auto& [x, y] : pairs) {
      try {
        const auto c = ceer::connect(e, x, y, args->budget);
        if (!c.x_side.certificate || !ceer::replay(e, *c.x_side.certificate) || !c.y_side.certificate ||
            !ceer::replay(e, *c.y_side.certificate)) {
          failures.push_back({{"x", x}, {"y", y}, {"z", c.z}});
        }
      } catch (const BudgetExhausted&) {
        failures.push_back({{"x", x}, {"y", y}, {"error", "budget"}});
      }
    }
    result.failed = !failures.empty();
    result.text = render({{"pairs", args->pairs}, {"seed", g.seed}, {"budget", args->budget}, {"failures", failures}});
  });
}

// ---------------------------------------------------------------- lo-code

void add_lo(CLI::App& app, Globals& g, Output& result) {
  auto* cmd = app.add_subcommand("lo-code", "Code bits into a copy of a linear order");
  cmd->require_subcommand(1);
  struct Args {
    std::string order, payload, table;
    Natural prefix = 20, bits = 8;
    std::size_t seeds = 20;
  };
  auto args = std::make_shared<Args>();

  auto* enc = cmd->add_subcommand("encode", "Materialise the coded order and its isomorphism");
  enc->add_option("--order", args->order, "order descriptor (JSON or file)")->required();
  enc->add_option("--payload", args->payload)->required();
  enc->add_option("--prefix", args->prefix);
  enc->callback([args, &result] {
    const LinearOrderOracle base = make_order(parse_descriptor(load_json(args->order)));
    const auto e = lo::encode_order(base, bits_arg(args->payload));
    std::vector<Natural> f(args->prefix);
    for (Natural n = 0; n < args->prefix; ++n) f[n] = e.iso(n);
    result.text = render({{"prefix", args->prefix},
                          {"order", io::table_to_json(materialize_prefix(e.order, args->prefix))},
                          {"isomorphism", f},
                          {"coded_stream", to_bit_string(e.payload, args->prefix / 2)}});
  });

  auto* dec = cmd->add_subcommand("decode", "Read the coded stream from an order table");
  dec->add_option("--order-table", args->table, "rows of 0/1 (JSON or file)")->required();
  dec->add_option("--bits", args->bits)->required();
  dec->callback([args, &result] {
    const OrderTable t = io::order_table_from_json(load_json(args->table));
    if (2 * args->bits > t.size()) throw UsageError("table too small for the requested number of bits");
    const auto coded = order_from_table(t);
    std::string stream, payload, code;
    for (Natural n = 0; n < args->bits; ++n) {
      const bool b = lo::decode_payload(coded, n);
      stream.push_back(b ? '1' : '0');
      (n % 2 == 0 ? payload : code).push_back(b ? '1' : '0');
    }
    result.text = render({{"stream", stream}, {"payload", payload}, {"order_code", code}});
  });

  auto* ver = cmd->add_subcommand("verify", "Round-trip seeded instances");
  ver->add_option("--seeds", args->seeds);
  ver->add_option("--prefix", args->prefix);
  ver->callback([args, &g, &result] {
    verify::RunConfig cfg;
    cfg.seed = g.seed;
    cfg.instances = args->seeds;
    cfg.lo_prefix = std::max<Natural>(args->prefix, 2);
    const auto r = verify::run_suite("lo-roundtrip", cfg);
    result.failed = !r.all_pass();
    result.text = render(r.to_json());
  });
}

// ---------------------------------------------------------------- struct-code

json stage_log_json(const structure::DecodedStructure& d, const Signature& sig) {
  json log = json::array();
  for (const auto& s : d.log) {
    log.push_back({{"first_position", s.first_position},
                   {"bit", s.bit},
                   {"distinguisher", io::distinguisher_to_json(s.distinguisher, sig)}});
  }
  return log;
}

void add_struct(CLI::App& app, Output& result) {
  auto* cmd = app.add_subcommand("struct-code", "Code bits into a copy of a non-trivial structure");
  cmd->require_subcommand(1);
  struct Args {
    std::string structure, target, payload, table, map = "{}";
    std::size_t stages = 8;
    Natural budget = 10000, prefix = 10;
  };
  auto args = std::make_shared<Args>();

  auto* enc = cmd->add_subcommand("encode", "Build the coded copy");
  enc->add_option("--structure", args->structure, "structure descriptor (JSON or file)")->required();
  enc->add_option("--payload", args->payload)->required();
  enc->add_option("--stages", args->stages);
  enc->add_option("--budget", args->budget);
  enc->callback([args, &result] {
    const auto desc = parse_descriptor(load_json(args->structure));
    const StructureOracle m = make_structure(desc);
    const auto e = structure::encode_structure(m, bits_arg(args->payload), args->stages, args->budget);
    json log = json::array();
    for (const auto& s : e.placement.log) {
      log.push_back({{"first_position", s.first_position},
                     {"bit", s.bit},
                     {"placed", s.coded},
                     {"filler", s.filler},
                     {"distinguisher", io::distinguisher_to_json(s.distinguisher, m.signature())}});
    }
    result.text = render({{"structure", to_json(desc)},
                          {"stages", args->stages},
                          {"budget", args->budget},
                          {"table", io::table_to_json(materialize_prefix(e.coded, e.certificate.table_bound))},
                          {"placement", e.placement.placed},
                          {"certificate", io::certificate_to_json(e.certificate)},
                          {"queue", io::bits_to_string(e.queue)},
                          {"payload_bits", io::bits_to_string(e.payload_bits)},
                          {"recoverable_positions", e.recoverable_positions},
                          {"stage_log", log}});
  });

  auto* dec = cmd->add_subcommand("decode", "Decode a coded copy given as a table");
  dec->add_option("--table", args->table, "structure table, or an encode result (JSON or file)")->required();
  dec->add_option("--stages", args->stages)->required();
  dec->add_option("--budget", args->budget, "tuples per formula, usually the certificate bound")->required();
  dec->callback([args, &result] {
    json j = load_json(args->table);
    if (j.contains("table")) j = j.at("table");
    const StructureOracle n = structure_from_table(io::structure_table_from_json(j));
    const auto d = structure::decode_structure(n, args->stages, args->budget);
    result.text = render({{"queue", io::bits_to_string(d.queue)},
                          {"payload_bits", io::bits_to_string(d.payload_bits)},
                          {"placement_prefix", d.placement_prefix},
                          {"stage_log", stage_log_json(d, n.signature())}});
  });

  auto* triv = cmd->add_subcommand("trivial-check", "Extend a partial map to an isomorphism of trivial structures");
  triv->add_option("--structure", args->structure)->required();
  triv->add_option("--target", args->target)->required();
  triv->add_option("--map", args->map, "partial map as {\"a\": b, ...}");
  triv->add_option("--prefix", args->prefix);
  triv->callback([args, &result] {
    const StructureOracle m = make_structure(parse_descriptor(load_json(args->structure)));
    const StructureOracle n = make_structure(parse_descriptor(load_json(args->target)));
    std::map<Natural, Natural> f;
    if (!args->map.empty()) {
      const json partial = load_json(args->map);
      for (const auto& [k, v] : partial.items()) f[std::stoull(k)] = v.get<Natural>();
    }
    result.text = render({{"prefix", args->prefix}, {"map", structure::trivial_extend_iso(m, n, f, args->prefix)}});
  });
}

// ---------------------------------------------------------------- ks-force

void add_ks(CLI::App& app, Globals& g, Output& result) {
  auto* cmd = app.add_subcommand("ks-force", "Kumabe-Slaman conditions and path coding");
  cmd->require_subcommand(1);
  struct Args {
    std::string payload, path, condition, selectors = "identity";
    std::size_t rounds = 0;
    Natural diff_budget = 10000, depth = 64;
  };
  auto args = std::make_shared<Args>();

  auto* enc = cmd->add_subcommand("encode", "Code a payload along a path");
  enc->add_option("--payload", args->payload)->required();
  enc->add_option("--path", args->path, "path descriptor (JSON or file)")->required();
  enc->add_option("--rounds", args->rounds);
  enc->add_option("--diff-budget", args->diff_budget);
  enc->add_option("--selectors", args->selectors, "comma list of identity, label-elsewhere, add-forbidden");
  enc->callback([args, &g, &result] {
    const BitStream x = make_bit_stream(parse_descriptor(load_json(args->path)));
    std::vector<ks::DenseSelector> sels;
    std::stringstream names(args->selectors);
    for (std::string name; std::getline(names, name, ',');) {
      if (name == "identity") {
        sels.push_back(ks::selectors::identity());
      } else if (name == "label-elsewhere") {
        sels.push_back(ks::selectors::label_elsewhere(x));
      } else if (name == "add-forbidden") {
        sels.push_back(ks::selectors::add_forbidden(g.seed));
      } else if (!name.empty()) {
        throw UsageError("unknown selector '" + name + "'");
      }
    }
    const std::size_t rounds = args->rounds ? args->rounds : args->payload.size();
    const auto gen = ks::build_generic(ks::KsCondition{}, sels, x, bits_arg(args->payload), rounds, args->diff_budget);
    json chain = json::array();
    for (const auto& c : gen.chain) chain.push_back(io::condition_to_json(c));
    result.text = render({{"rounds", rounds},
                          {"coded", io::bits_to_string(gen.coded)},
                          {"labels", ks::eval_labels(gen, x, gen.labelling().depth().value_or(0))},
                          {"chain", chain}});
  });

  auto* ev = cmd->add_subcommand("eval", "Read the labels along a path");
  ev->add_option("--condition", args->condition, "condition (JSON or file)")->required();
  ev->add_option("--path", args->path)->required();
  ev->add_option("--depth", args->depth);
  ev->callback([args, &result] {
    const auto c = io::condition_from_json(load_json(args->condition));
    const BitStream x = make_bit_stream(parse_descriptor(load_json(args->path)));
    result.text = render({{"labels", ks::eval_labels(c, x, args->depth)}});
  });
}

// ---------------------------------------------------------------- verify

void add_verify(CLI::App& app, Globals& g, Output& result) {
  auto* cmd = app.add_subcommand("verify", "Run property suites");
  auto suite = std::make_shared<std::string>("all");
  auto instances = std::make_shared<std::size_t>(verify::RunConfig{}.instances);
  cmd->add_option("--suite", *suite, "suite name, 'all', or '' for none");
  cmd->add_option("--instances", *instances, "seeded instances per round-trip suite");
  cmd->callback([suite, instances, &g, &result] {
    verify::RunConfig cfg;
    cfg.seed = g.seed;
    cfg.instances = *instances;
    std::vector<std::string> known = verify::suite_names();
    if (!suite->empty() && *suite != "all" && std::find(known.begin(), known.end(), *suite) == known.end()) {
      throw UsageError("unknown suite '" + *suite + "'");
    }
    const auto r = verify::run_suite(*suite, cfg);
    result.failed = !r.all_pass();
    result.text = render(r.to_json());
  });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective constructions on oracles: ceer graphings, coding into copies, forcing conditions",
               "effgraph"};
  app.require_subcommand(1);
  Globals g;
  Output result;
  app.add_option("--seed", g.seed, "seed for every random choice")->capture_default_str();
  app.add_option("--out", g.out_path, "write the result to this file");
  app.add_option("--format", g.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  // Global flags may appear after the subcommand too.
  app.fallthrough();

  add_ceer(app, g, result);
  add_lo(app, g, result);
  add_struct(app, result);
  add_ks(app, g, result);
  add_verify(app, g, result);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return static_cast<int>(ExitCode::kOk);
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << "\n" << app.help();
    return static_cast<int>(ExitCode::kUsage);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const json::exception& ex) {
    err << "usage error: " << ex.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const PreconditionViolation& ex) {
    err << "usage error: " << ex.what() << "\n";
    return static_cast<int>(ExitCode::kUsage);
  } catch (const BudgetExhausted& ex) {
    err << "budget exhausted: " << ex.what() << "\n";
    return static_cast<int>(ExitCode::kBudgetExhausted);
  } catch (const Error& ex) {
    err << "contradiction: " << ex.what() << "\n";
    return static_cast<int>(ExitCode::kContradiction);
  }

  if (g.out_path.empty()) {
    out << result.text;
  } else {
    std::ofstream file(g.out_path, std::ios::binary);
    if (!file) {
      err << "cannot write '" << g.out_path << "'\n";
      return static_cast<int>(ExitCode::kUsage);
    }
    file << result.text;
  }
  return static_cast<int>(result.failed ? ExitCode::kContradiction : ExitCode::kOk);
}

}  // namespace effgraph::cli
