#ifndef EFFGRAPH_STRUCTURE_FORMULA_HPP
#define EFFGRAPH_STRUCTURE_FORMULA_HPP

// Quantifier-free formulas phi(a_0..a_{p-1}; y_1..y_l) over a finite
// relational signature, with a canonical enumeration.
//
// Canonical order: by size (atoms and equalities count 1, each connective
// adds 1), then by the number l of free variables, then by rank inside the
// (size, l) class. Within a class: relation atoms (signature order, argument
// tuples lexicographic), then equalities t_i = t_j with i < j, then
// negations, then conjunctions and disjunctions by (left size, left rank,
// right rank). Terms are ordered y_1..y_l before a_0..a_{p-1}.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effgraph/core/oracles.hpp"

namespace effgraph::structure {

struct Term {
  enum class Kind : std::uint8_t { kFree, kParam };
  Kind kind = Kind::kFree;
  std::size_t index = 0;  // y_{index + 1} or a_index

  friend bool operator==(const Term&, const Term&) = default;
};

struct FormulaNode {
  enum class Op : std::uint8_t { kAtom, kEq, kNot, kAnd, kOr };
  Op op = Op::kAtom;
  std::size_t relation = 0;          // kAtom
  std::vector<Term> args;            // kAtom, kEq (two terms)
  std::vector<FormulaNode> children; // kNot: 1, kAnd/kOr: 2

  std::size_t size() const;
  bool mentions_free(std::size_t free_index) const;
  bool mentions_any_free() const;

  friend bool operator==(const FormulaNode&, const FormulaNode&) = default;
};

struct QfFormula {
  Natural index = 0;       // canonical index in its FormulaSpace
  std::size_t params = 0;  // p
  std::size_t free = 0;    // l
  FormulaNode tree;

  std::string to_string(const Signature& sig) const;
};

bool evaluate(const StructureOracle& m, const FormulaNode& phi, std::span<const Natural> params,
              std::span<const Natural> free);

// Formulas over p parameters and at most `max_free` free variables.
// Class sizes saturate at 2^64 - 1; indices are exact while they fit.
class FormulaSpace {
 public:
  FormulaSpace(Signature signature, std::size_t params, std::size_t max_free);

  const Signature& signature() const { return signature_; }
  std::size_t params() const { return params_; }
  std::size_t max_free() const { return max_free_; }

  // Number of formulas of the given size over p + l terms.
  Natural class_size(std::size_t size, std::size_t free) const;
  // Global position of the first formula of class (size, free).
  Natural class_offset(std::size_t size, std::size_t free) const;

  QfFormula at(Natural index) const;
  Natural index_of(const FormulaNode& tree, std::size_t free) const;

 private:
  Natural count(std::size_t size, std::size_t terms) const;
  FormulaNode unrank(std::size_t size, std::size_t free, Natural rank) const;
  Natural rank(const FormulaNode& node, std::size_t free) const;
  Term term(std::size_t id, std::size_t free) const;
  std::size_t term_id(const Term& t, std::size_t free) const;

  Signature signature_;
  std::size_t params_;
  std::size_t max_free_;
  mutable std::vector<std::vector<std::optional<Natural>>> memo_;  // [terms][size]
};

// Tuples of distinct indices of length l, ordered by largest entry, then
// lexicographically: (0,1),(1,0),(0,2),(1,2),(2,0),(2,1),...
class TupleWalker {
 public:
  explicit TupleWalker(std::size_t length);
  const std::vector<Natural>& next();

 private:
  bool uses(std::size_t upto, Natural v) const;
  void complete(std::size_t from);

  std::size_t length_;
  Natural max_ = 0;
  std::vector<Natural> current_;
  bool started_ = false;
};

// A formula phi with M |= phi(a, satisfied) and M |/= phi(a, refuted).
struct Distinguisher {
  QfFormula formula;
  std::vector<Natural> satisfied;
  std::vector<Natural> refuted;
  Natural tuples_examined = 0;  // tuples walked for phi until both were seen
};

// Least formula in canonical order with a satisfying and a refuting tuple of
// distinct elements outside `params`, each formula allowed `budget` tuples.
// Only atoms that mention y_l need to be walked: equalities are constant on
// tuples of distinct fresh elements, and any compound formula separating two
// tuples contains an atom that separates them, which comes earlier.
std::optional<Distinguisher> find_distinguishing(const StructureOracle& m, std::span<const Natural> params,
                                                 Natural budget);

// Walks one atom only: its first satisfying and refuting fresh tuples within budget.
std::optional<Distinguisher> separate(const StructureOracle& m, std::span<const Natural> params,
                                      const QfFormula& atom, Natural budget);

}  // namespace effgraph::structure

#endif  // EFFGRAPH_STRUCTURE_FORMULA_HPP
