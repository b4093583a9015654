#include "effgraph/core/oracles.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace effgraph {

BitStream::BitStream(Fn fn) : fn_(std::make_shared<const Fn>(std::move(fn))) {}

BitStream BitStream::from_string(const std::string& bits, bool tail) {
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("bit string may only contain '0' and '1'");
  }
  return BitStream([bits, tail](Natural n) { return n < bits.size() ? bits[n] == '1' : tail; });
}

BitStream BitStream::constant(bool value) {
  return BitStream([value](Natural) { return value; });
}

std::string to_bit_string(const BitStream& stream, Natural count) {
  std::string out;
  out.reserve(count);
  for (Natural i = 0; i < count; ++i) out.push_back(stream(i) ? '1' : '0');
  return out;
}

LinearOrderOracle::LinearOrderOracle(Fn leq) : leq_(std::make_shared<const Fn>(std::move(leq))) {}

Natural CantorPairing::pair(Natural m, Natural n) {
  const Natural s = m + n;
  // One of s, s + 1 is even; halve that one first to delay overflow.
  const Natural tri = (s % 2 == 0) ? (s / 2) * (s + 1) : s * ((s + 1) / 2);
  return tri + n;
}

std::pair<Natural, Natural> CantorPairing::unpair(Natural k) {
  // w = floor((sqrt(8k + 1) - 1) / 2), corrected for floating-point error.
  auto tri = [](Natural w) { return (w % 2 == 0) ? (w / 2) * (w + 1) : w * ((w + 1) / 2); };
  const long double root = std::sqrt(8.0L * static_cast<long double>(k) + 1.0L);
  Natural w = static_cast<Natural>((root - 1.0L) / 2.0L);
  while (w > 0 && tri(w) > k) --w;
  while (tri(w + 1) <= k) ++w;
  const Natural n = k - tri(w);
  return {w - n, n};
}

Signature::Signature(std::vector<RelationSymbol> relations) : relations_(std::move(relations)) {
  std::set<std::string> seen;
  for (const auto& rel : relations_) {
    if (rel.arity == 0) throw std::invalid_argument("relation '" + rel.name + "' has arity 0");
    if (rel.name.empty()) throw std::invalid_argument("relation name must be non-empty");
    if (!seen.insert(rel.name).second) throw std::invalid_argument("duplicate relation name '" + rel.name + "'");
  }
}

std::size_t Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  throw std::out_of_range("unknown relation '" + name + "'");
}

std::size_t Signature::max_arity() const {
  std::size_t best = 0;
  for (const auto& rel : relations_) best = std::max(best, rel.arity);
  return best;
}

StructureOracle::StructureOracle(Signature signature, Fn holds)
    : signature_(std::make_shared<const Signature>(std::move(signature))),
      holds_(std::make_shared<const Fn>(std::move(holds))) {}

bool StructureOracle::holds(std::size_t relation, std::span<const Natural> args) const {
  if (relation >= signature_->size()) throw std::out_of_range("relation index out of range");
  if (args.size() != (*signature_)[relation].arity) {
    throw std::invalid_argument("tuple length does not match arity of '" + (*signature_)[relation].name + "'");
  }
  return (*holds_)(relation, args);
}

bool StructureOracle::holds(const std::string& relation, std::span<const Natural> args) const {
  return holds(signature_->index_of(relation), args);
}

BitStream join(const BitStream& a, const BitStream& b) {
  return BitStream([a, b](Natural n) { return n % 2 == 0 ? a(n / 2) : b(n / 2); });
}

BitStream even_part(const BitStream& c) {
  return BitStream([c](Natural n) { return c(2 * n); });
}

BitStream odd_part(const BitStream& c) {
  return BitStream([c](Natural n) { return c(2 * n + 1); });
}

BitStream order_code(const LinearOrderOracle& order) {
  return BitStream([order](Natural k) {
    const auto [m, n] = CantorPairing::unpair(k);
    return order.leq(m, n);
  });
}

LinearOrderOracle decode_order(const BitStream& code) {
  return LinearOrderOracle([code](Natural m, Natural n) { return code(CantorPairing::pair(m, n)); });
}

namespace {

Natural int_pow(Natural base, std::size_t exp) {
  Natural out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

// Lexicographic rank of a tuple in [0, bound)^arity.
Natural tuple_rank(std::span<const Natural> args, Natural bound) {
  Natural rank = 0;
  for (Natural a : args) rank = rank * bound + a;
  return rank;
}

}  // namespace

bool StructureTable::holds(std::size_t relation, std::span<const Natural> args) const {
  if (relation >= relations.size()) throw std::out_of_range("relation index out of range");
  if (args.size() != signature[relation].arity) throw std::invalid_argument("tuple length does not match arity");
  for (Natural a : args) {
    if (a >= bound) throw std::out_of_range("structure table queried outside its bound");
  }
  return relations[relation][tuple_rank(args, bound)];
}

void for_each_tuple(std::size_t arity, Natural bound,
                    const std::function<bool(std::span<const Natural>)>& visit) {
  if (arity == 0) {
    visit({});
    return;
  }
  if (bound == 0) return;
  std::vector<Natural> tuple(arity, 0);
  while (true) {
    if (!visit(tuple)) return;
    std::size_t pos = arity;
    while (pos > 0) {
      --pos;
      if (++tuple[pos] < bound) break;
      tuple[pos] = 0;
      if (pos == 0) return;
    }
  }
}

BitTable materialize_prefix(const BitStream& stream, Natural bound) {
  BitTable out(bound);
  for (Natural i = 0; i < bound; ++i) out[i] = stream(i);
  return out;
}

OrderTable materialize_prefix(const LinearOrderOracle& order, Natural bound) {
  OrderTable out(bound, std::vector<bool>(bound));
  for (Natural m = 0; m < bound; ++m) {
    for (Natural n = 0; n < bound; ++n) out[m][n] = order.leq(m, n);
  }
  return out;
}

StructureTable materialize_prefix(const StructureOracle& structure, Natural bound) {
  StructureTable out;
  out.signature = structure.signature();
  out.bound = bound;
  for (std::size_t r = 0; r < out.signature.size(); ++r) {
    std::vector<bool> rows;
    rows.reserve(int_pow(bound, out.signature[r].arity));
    for_each_tuple(out.signature[r].arity, bound, [&](std::span<const Natural> t) {
      rows.push_back(structure.holds_unchecked(r, t));
      return true;
    });
    out.relations.push_back(std::move(rows));
  }
  return out;
}

LinearOrderOracle order_from_table(OrderTable table) {
  const Natural bound = table.size();
  for (const auto& row : table) {
    if (row.size() != bound) throw std::invalid_argument("order table must be square");
  }
  return LinearOrderOracle([table = std::move(table), bound](Natural m, Natural n) {
    if (m >= bound || n >= bound) throw std::out_of_range("order table queried outside its bound");
    return static_cast<bool>(table[m][n]);
  });
}

StructureOracle structure_from_table(StructureTable table) {
  if (table.relations.size() != table.signature.size()) {
    throw std::invalid_argument("structure table does not match its signature");
  }
  for (std::size_t r = 0; r < table.signature.size(); ++r) {
    if (table.relations[r].size() != int_pow(table.bound, table.signature[r].arity)) {
      throw std::invalid_argument("structure table for '" + table.signature[r].name + "' has the wrong size");
    }
  }
  Signature sig = table.signature;
  auto shared = std::make_shared<const StructureTable>(std::move(table));
  return StructureOracle(std::move(sig), [shared](std::size_t r, std::span<const Natural> args) {
    return shared->holds(r, args);
  });
}

std::vector<OrderAxiomViolation> check_linear_order(const LinearOrderOracle& order, Natural bound,
                                                    std::size_t max_reports) {
  std::vector<OrderAxiomViolation> out;
  auto report = [&](std::string axiom, std::vector<Natural> witness) {
    out.push_back({std::move(axiom), std::move(witness)});
    return out.size() >= max_reports;
  };
  const OrderTable t = materialize_prefix(order, bound);
  for (Natural m = 0; m < bound; ++m) {
    if (!t[m][m] && report("reflexive", {m})) return out;
  }
  for (Natural m = 0; m < bound; ++m) {
    for (Natural n = m + 1; n < bound; ++n) {
      if (t[m][n] && t[n][m] && report("antisymmetric", {m, n})) return out;
      if (!t[m][n] && !t[n][m] && report("total", {m, n})) return out;
    }
  }
  for (Natural a = 0; a < bound; ++a) {
    for (Natural b = 0; b < bound; ++b) {
      if (!t[a][b]) continue;
      for (Natural c = 0; c < bound; ++c) {
        if (t[b][c] && !t[a][c] && report("transitive", {a, b, c})) return out;
      }
    }
  }
  return out;
}

}  // namespace effgraph
