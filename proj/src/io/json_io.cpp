#include "effgraph/io/json_io.hpp"

#include <stdexcept>

#include "effgraph/core/generators.hpp"

namespace effgraph::io {

std::string bits_to_string(const std::vector<bool>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::vector<bool> bits_from_string(const std::string& text) {
  std::vector<bool> bits;
  for (char ch : text) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit string may contain only '0' and '1'");
    bits.push_back(ch == '1');
  }
  return bits;
}

json signature_to_json(const Signature& sig) {
  json out = json::array();
  for (const auto& r : sig.relations()) out.push_back({{"name", r.name}, {"arity", r.arity}});
  return out;
}

Signature signature_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("signature must be an array");
  std::vector<RelationSymbol> rels;
  for (const auto& r : j) rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<std::size_t>()});
  return Signature(std::move(rels));
}

json table_to_json(const StructureTable& table) {
  json rels = json::object();
  for (std::size_t r = 0; r < table.signature.size(); ++r) {
    rels[table.signature[r].name] = bits_to_string(table.relations[r]);
  }
  return {{"signature", signature_to_json(table.signature)}, {"bound", table.bound}, {"relations", rels}};
}

StructureTable structure_table_from_json(const json& j) {
  StructureTable t;
  t.signature = signature_from_json(j.at("signature"));
  t.bound = j.at("bound").get<Natural>();
  for (const auto& rel : t.signature.relations()) {
    auto bits = bits_from_string(j.at("relations").at(rel.name).get<std::string>());
    Natural expected = 1;
    for (std::size_t i = 0; i < rel.arity; ++i) expected *= t.bound;
    if (bits.size() != expected) throw std::invalid_argument("relation " + rel.name + " has the wrong table size");
    t.relations.push_back(std::move(bits));
  }
  return t;
}

json table_to_json(const OrderTable& table) {
  json rows = json::array();
  for (const auto& row : table) rows.push_back(bits_to_string(row));
  return rows;
}

OrderTable order_table_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("order table must be an array of rows");
  OrderTable t;
  for (const auto& row : j) {
    t.push_back(bits_from_string(row.get<std::string>()));
    if (t.back().size() != j.size()) throw std::invalid_argument("order table must be square");
  }
  return t;
}

json condition_to_json(const ks::KsCondition& c) {
  json labels = json::object();
  for (const auto& [node, bit] : c.labels()) labels[node] = bit ? 1 : 0;
  json forbidden = json::array();
  for (const auto& fp : c.forbidden()) {
    if (fp.origin) {
      forbidden.push_back(to_json(*fp.origin));
    } else {
      forbidden.push_back(
          {{"kind", "literal"}, {"seed", 0}, {"params", {{"bits", to_bit_string(fp.path, 64)}, {"tail", 0}}}});
    }
  }
  return {{"depth", c.depth() ? json(*c.depth()) : json(nullptr)},
          {"labels", labels},
          {"bot_fill", true},
          {"forbidden", forbidden}};
}

namespace {
ks::Label parse_label(const json& v) {
  if (v.is_string() && v.get<std::string>() == "bot") return ks::Label::kBot;
  if (v.is_number_integer()) {
    const auto n = v.get<int>();
    if (n == 0) return ks::Label::kZero;
    if (n == 1) return ks::Label::kOne;
  }
  throw std::invalid_argument("label must be 0, 1 or \"bot\"");
}
}  // namespace

ks::KsCondition condition_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("condition must be a JSON object");
  std::vector<ks::ForbiddenPath> forbidden;
  if (j.contains("forbidden")) {
    for (const auto& f : j.at("forbidden")) {
      GeneratorDescriptor d = parse_descriptor(f);
      forbidden.push_back({make_bit_stream(d), d});
    }
  }
  const json labels = j.value("labels", json::object());
  std::optional<Natural> depth;
  if (j.contains("depth") && j.at("depth").is_number_integer()) depth = j.at("depth").get<Natural>();

  if (j.value("bot_fill", false)) {
    std::map<std::string, bool> sparse;
    for (const auto& [node, v] : labels.items()) {
      const ks::Label l = parse_label(v);
      if (l != ks::Label::kBot) sparse.emplace(node, l == ks::Label::kOne);
    }
    return ks::KsCondition(depth, std::move(sparse), std::move(forbidden));
  }
  std::map<std::string, ks::Label> full;
  for (const auto& [node, v] : labels.items()) full.emplace(node, parse_label(v));
  ks::KsCondition c = ks::make_condition(full, std::move(forbidden));
  if (j.contains("depth") && c.depth() != depth) {
    throw ks::DomainNotFull("declared depth does not match the labelled tree");
  }
  return c;
}

json certificate_to_json(const ceer::EquivalenceCertificate& c) {
  json chain = json::array();
  for (const auto& p : c.chain) chain.push_back({p.column, p.index});
  return {{"x", c.x}, {"y", c.y}, {"chain", chain}};
}

json graph_to_json(const ceer::FiniteWitnessGraph& g) {
  json edges = json::array();
  for (const auto& [uv, p] : g.edges) edges.push_back({{"u", uv.first}, {"v", uv.second}, {"column", p.column}, {"index", p.index}});
  return {{"bound", g.bound}, {"vertices", g.vertices}, {"edges", edges}};
}

json adjacency_to_json(const ceer::Adjacency& a) {
  return {{"adjacent", a.adjacent},
          {"graph", graph_to_json(a.graph)},
          {"certificate", a.certificate ? certificate_to_json(*a.certificate) : json(nullptr)}};
}

json distinguisher_to_json(const structure::Distinguisher& d, const Signature& sig) {
  return {{"formula", d.formula.to_string(sig)},
          {"index", d.formula.index},
          {"free", d.formula.free},
          {"satisfied", d.satisfied},
          {"refuted", d.refuted},
          {"tuples_examined", d.tuples_examined}};
}

json certificate_to_json(const structure::EncodingCertificate& c) {
  return {{"stage_bounds", c.stage_bounds}, {"max_bound", c.max_bound()}, {"table_bound", c.table_bound}};
}

}  // namespace effgraph::io
