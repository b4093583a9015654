#ifndef EFFGRAPH_CORE_ORACLES_HPP
#define EFFGRAPH_CORE_ORACLES_HPP

// Countably infinite objects as total deterministic oracles.
//
// Every oracle type is a cheap-to-copy handle around an immutable callable.
// Copies share the callable, so `identity()` can be used to recognise the
// same oracle object after it has been passed around.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace effgraph {

using Natural = std::uint64_t;

// A total function N -> {0,1}.
class BitStream {
 public:
  using Fn = std::function<bool(Natural)>;

  explicit BitStream(Fn fn);

  bool query(Natural n) const { return (*fn_)(n); }
  bool operator()(Natural n) const { return query(n); }

  const void* identity() const { return fn_.get(); }

  // Streams from bit strings: character i is query(i). Past the end the
  // stream reads `tail`.
  static BitStream from_string(const std::string& bits, bool tail = false);
  static BitStream constant(bool value);

 private:
  std::shared_ptr<const Fn> fn_;
};

// Renders query(0) .. query(count - 1) as '0'/'1' characters.
std::string to_bit_string(const BitStream& stream, Natural count);

// Comparison oracle for a linear order on N.
class LinearOrderOracle {
 public:
  using Fn = std::function<bool(Natural, Natural)>;

  explicit LinearOrderOracle(Fn leq);

  bool leq(Natural m, Natural n) const { return (*leq_)(m, n); }
  // Strict comparison; assumes antisymmetry.
  bool less(Natural m, Natural n) const { return m != n && leq(m, n); }

  const void* identity() const { return leq_.get(); }

 private:
  std::shared_ptr<const Fn> leq_;
};

// Cantor pairing: pair(m, n) = (m + n)(m + n + 1) / 2 + n.
struct CantorPairing {
  static Natural pair(Natural m, Natural n);
  static std::pair<Natural, Natural> unpair(Natural k);
};

struct RelationSymbol {
  std::string name;
  std::size_t arity = 1;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

// Finite relational signature. Validated on construction: names distinct,
// arities >= 1.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<RelationSymbol> relations);

  const std::vector<RelationSymbol>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }
  const RelationSymbol& operator[](std::size_t i) const { return relations_[i]; }

  // Throws std::out_of_range for an unknown name.
  std::size_t index_of(const std::string& name) const;
  std::size_t max_arity() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<RelationSymbol> relations_;
};

// Atomic-diagram oracle for a structure with domain N.
class StructureOracle {
 public:
  using Fn = std::function<bool(std::size_t relation, std::span<const Natural> args)>;

  StructureOracle(Signature signature, Fn holds);

  const Signature& signature() const { return *signature_; }

  // Tuple length must equal the relation's arity (std::invalid_argument).
  bool holds(std::size_t relation, std::span<const Natural> args) const;
  bool holds(const std::string& relation, std::span<const Natural> args) const;

  // Unchecked variant for inner search loops.
  bool holds_unchecked(std::size_t relation, std::span<const Natural> args) const {
    return (*holds_)(relation, args);
  }

 private:
  std::shared_ptr<const Signature> signature_;
  std::shared_ptr<const Fn> holds_;
};

// c(2n) = a(n), c(2n + 1) = b(n).
BitStream join(const BitStream& a, const BitStream& b);
BitStream even_part(const BitStream& c);
BitStream odd_part(const BitStream& c);

// result(pair(m, n)) = 1 iff leq(m, n).
BitStream order_code(const LinearOrderOracle& order);
// leq(m, n) = b(pair(m, n)). No validation; see check_linear_order.
LinearOrderOracle decode_order(const BitStream& code);

// Finite tables of oracle answers on indices < bound.
using BitTable = std::vector<bool>;
using OrderTable = std::vector<std::vector<bool>>;  // [m][n] = leq(m, n)

struct StructureTable {
  Signature signature;
  Natural bound = 0;
  // relations[r][i]: truth of relation r on the i-th tuple of [0, bound)^arity
  // in lexicographic order.
  std::vector<std::vector<bool>> relations;

  bool holds(std::size_t relation, std::span<const Natural> args) const;

  friend bool operator==(const StructureTable&, const StructureTable&) = default;
};

BitTable materialize_prefix(const BitStream& stream, Natural bound);
OrderTable materialize_prefix(const LinearOrderOracle& order, Natural bound);
StructureTable materialize_prefix(const StructureOracle& structure, Natural bound);

// Oracles backed by finite tables. Queries outside the table throw
// std::out_of_range.
LinearOrderOracle order_from_table(OrderTable table);
StructureOracle structure_from_table(StructureTable table);

// Calls `visit(tuple)` for every tuple in [0, bound)^arity in lexicographic
// order. Stops early when `visit` returns false.
void for_each_tuple(std::size_t arity, Natural bound,
                    const std::function<bool(std::span<const Natural>)>& visit);

// First violation of the linear-order axioms on [0, bound), if any.
struct OrderAxiomViolation {
  std::string axiom;  // "reflexive", "antisymmetric", "transitive", "total"
  std::vector<Natural> witness;
};
std::vector<OrderAxiomViolation> check_linear_order(const LinearOrderOracle& order, Natural bound,
                                                    std::size_t max_reports = 1);

}  // namespace effgraph

#endif  // EFFGRAPH_CORE_ORACLES_HPP
