#include <doctest.h>

#include <algorithm>
#include <set>

#include "effgraph/core/generators.hpp"
#include "effgraph/errors.hpp"
#include "effgraph/structure/formula.hpp"

using namespace effgraph;
using namespace effgraph::structure;

namespace {

// The walker order by filtering [0, max]^l: every tuple of distinct entries
// whose largest entry is max, lexicographically, for max = 0, 1, ...
std::vector<std::vector<Natural>> filtered_tuples(std::size_t length, std::size_t count) {
  std::vector<std::vector<Natural>> out;
  for (Natural max = 0; out.size() < count; ++max) {
    for_each_tuple(length, max + 1, [&](std::span<const Natural> t) {
      const std::set<Natural> distinct(t.begin(), t.end());
      if (distinct.size() == length && *distinct.rbegin() == max) out.emplace_back(t.begin(), t.end());
      return out.size() < count;
    });
  }
  return out;
}

std::vector<Natural> fresh_elements(std::span<const Natural> params, std::size_t count) {
  std::vector<Natural> out;
  for (Natural v = 0; out.size() < count; ++v) {
    if (std::find(params.begin(), params.end(), v) == params.end()) out.push_back(v);
  }
  return out;
}

struct Found {
  Natural index;
  std::vector<Natural> satisfied, refuted;
};

// Walks every formula in canonical order, compound ones included, and
// evaluates each one on `budget` tuples.
std::optional<Found> least_by_brute_force(const StructureOracle& m, std::span<const Natural> params, Natural budget,
                                          std::size_t max_size) {
  const std::size_t max_free = m.signature().max_arity();
  if (max_free == 0) return std::nullopt;
  const FormulaSpace space(m.signature(), params.size(), max_free);
  const Natural end = space.class_offset(max_size + 1, 1);
  const auto fresh = fresh_elements(params, budget + 1);
  std::vector<std::vector<std::vector<Natural>>> tuples(max_free + 1);
  for (std::size_t l = 1; l <= max_free; ++l) tuples[l] = filtered_tuples(l, budget);

  for (Natural i = 0; i < end; ++i) {
    const QfFormula phi = space.at(i);
    std::optional<std::vector<Natural>> sat, ref;
    for (const auto& idx : tuples[phi.free]) {
      std::vector<Natural> t;
      for (Natural k : idx) t.push_back(fresh.at(k));
      auto& slot = evaluate(m, phi.tree, params, t) ? sat : ref;
      if (!slot) slot = t;
      if (sat && ref) break;
    }
    if (sat && ref) return Found{i, *sat, *ref};
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("tuple walker matches the filtered enumeration") {
  for (std::size_t l = 1; l <= 3; ++l) {
    CAPTURE(l);
    const auto expected = filtered_tuples(l, 3000);
    TupleWalker walker(l);
    for (const auto& t : expected) REQUIRE(walker.next() == t);
  }
  TupleWalker pairs(2);
  CHECK(pairs.next() == std::vector<Natural>{0, 1});
  CHECK(pairs.next() == std::vector<Natural>{1, 0});
  CHECK(pairs.next() == std::vector<Natural>{0, 2});
  CHECK(pairs.next() == std::vector<Natural>{1, 2});
  CHECK(pairs.next() == std::vector<Natural>{2, 0});
  CHECK(pairs.next() == std::vector<Natural>{2, 1});
}

TEST_CASE("formula space counts and order") {
  const Signature graph({{"E", 2}});
  const FormulaSpace space(graph, 0, 2);
  // Two terms: four atoms and one equality; then negations; then double
  // negations and the 2 * 5 * 5 binary connectives.
  CHECK(space.class_size(1, 2) == 5);
  CHECK(space.class_size(2, 2) == 5);
  CHECK(space.class_size(3, 2) == 55);
  // One term: E(y1,y1) alone, since y1=y1 is not an equality of distinct terms.
  CHECK(space.class_size(1, 1) == 1);

  const Natural first = space.class_offset(1, 2);
  std::vector<std::string> names;
  for (Natural i = 0; i < 5; ++i) names.push_back(space.at(first + i).to_string(graph));
  CHECK(names == std::vector<std::string>{"E(y1,y1)", "E(y1,y2)", "E(y2,y1)", "E(y2,y2)", "y1=y2"});
  CHECK(space.at(first + 5).to_string(graph) == "~E(y1,y1)");

  const FormulaSpace with_param(Signature({{"P", 1}, {"E", 2}}), 1, 2);
  for (Natural i = 0; i < 3000; ++i) {
    const QfFormula phi = with_param.at(i);
    REQUIRE(phi.index == i);
    REQUIRE(with_param.index_of(phi.tree, phi.free) == i);
  }
  CHECK(with_param.at(with_param.class_offset(1, 1)).to_string(with_param.signature()) == "P(y1)");
}

TEST_CASE("least distinguishing formulas on named structures") {
  const auto path = find_distinguishing(structures::path_graph(), {}, 1000);
  REQUIRE(path);
  CHECK(path->formula.to_string(structures::path_graph().signature()) == "E(y1,y2)");
  CHECK(path->satisfied == std::vector<Natural>{0, 1});
  CHECK(path->refuted == std::vector<Natural>{0, 2});

  const auto even = find_distinguishing(structures::even_predicate(), {}, 10);
  REQUIRE(even);
  CHECK(even->formula.to_string(structures::even_predicate().signature()) == "P(y1)");
  CHECK(even->satisfied == std::vector<Natural>{0});
  CHECK(even->refuted == std::vector<Natural>{1});

  CHECK_FALSE(find_distinguishing(structures::empty_signature(), {}, 1000));
  CHECK_FALSE(find_distinguishing(structures::complete_graph(), {}, 1000));
  CHECK_THROWS_AS(find_distinguishing(structures::path_graph(), {}, 0), PreconditionViolation);
}

TEST_CASE("the least distinguishing formula is an atom found by the brute-force walk") {
  const std::vector<std::pair<StructureOracle, std::vector<Natural>>> cases{
      {structures::path_graph(), {}},
      {structures::path_graph(), {0, 1, 2}},
      {structures::even_predicate(), {4}},
      {structures::grid_graph(), {0}},
      {structures::random_relation(5), {}},
      {structures::random_relation(6), {3, 1}},
      {structures::marked_set({2, 5}), {2}},
      {structures::complete_graph(), {0}},
  };
  for (const auto& [m, params] : cases) {
    const auto fast = find_distinguishing(m, params, 500);
    const auto slow = least_by_brute_force(m, params, 500, 3);
    REQUIRE(fast.has_value() == slow.has_value());
    if (!fast) continue;
    CHECK(fast->formula.index == slow->index);
    CHECK(fast->formula.tree.op == FormulaNode::Op::kAtom);
    CHECK(fast->satisfied == slow->satisfied);
    CHECK(fast->refuted == slow->refuted);
    CHECK(evaluate(m, fast->formula.tree, params, fast->satisfied));
    CHECK_FALSE(evaluate(m, fast->formula.tree, params, fast->refuted));
  }
}

TEST_CASE("separate walks a single atom") {
  const auto m = structures::path_graph();
  const std::vector<Natural> params{5};
  const FormulaSpace space(m.signature(), 1, 2);
  // E(y1,a0) with a0 = 5: satisfied first by 4 among fresh elements.
  QfFormula atom;
  FormulaNode tree{FormulaNode::Op::kAtom, 0, {{Term::Kind::kFree, 0}, {Term::Kind::kParam, 0}}, {}};
  atom = space.at(space.index_of(tree, 1));
  const auto d = separate(m, params, atom, 100);
  REQUIRE(d);
  CHECK(d->refuted == std::vector<Natural>{0});
  CHECK(d->satisfied == std::vector<Natural>{4});
  CHECK(d->tuples_examined == 5);
  CHECK_FALSE(separate(m, params, atom, 3));
  CHECK_THROWS_AS(separate(m, {}, atom, 100), PreconditionViolation);
}
