#ifndef EFFGRAPH_CEER_CEER_HPP
#define EFFGRAPH_CEER_CEER_HPP

// Diameter-2 computable graphing of ceers whose classes are all infinite.
//
// A ceer is presented by its enumeration function enumerate(x, n): column x
// lists x's class without duplicates. Adjacency of x < y is decided by
// building the finite graph of everything enumerated by columns z < y at
// indices 0..y and asking whether x and y are connected in it. Because that
// graph is a subset of the relation, adjacency implies equivalence; and for
// equivalent x, y the element z chosen by `connect` is adjacent to both.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "effgraph/core/generators.hpp"
#include "effgraph/core/oracles.hpp"
#include "effgraph/errors.hpp"

namespace effgraph::ceer {

class CeerEnumeration {
 public:
  using EnumerateFn = std::function<Natural(Natural x, Natural n)>;
  using ColumnFn = std::function<std::vector<Natural>(Natural x, Natural count)>;

  // `column` is an optional batch form of `enumerate`; it must agree with it.
  explicit CeerEnumeration(EnumerateFn enumerate, ColumnFn column = nullptr);

  Natural enumerate(Natural x, Natural n) const { return (*enumerate_)(x, n); }
  // enumerate(x, 0), ..., enumerate(x, count - 1).
  std::vector<Natural> column(Natural x, Natural count) const;

 private:
  std::shared_ptr<const EnumerateFn> enumerate_;
  std::shared_ptr<const ColumnFn> column_;
};

// Edge provenance: enumerate(column, index) == the other endpoint.
struct Provenance {
  Natural column = 0;
  Natural index = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct FiniteWitnessGraph {
  Natural bound = 0;  // the larger argument y; columns z < bound, indices 0..bound
  std::vector<Natural> vertices;                                 // sorted
  std::map<std::pair<Natural, Natural>, Provenance> edges;       // key (u, v) with u < v
};

// Positive witness that x E y. Replaying walks from x: a step (c, i) moves
// from the current element w to enumerate(c, i) when c == w, or to c when
// enumerate(c, i) == w.
struct EquivalenceCertificate {
  Natural x = 0;
  Natural y = 0;
  std::vector<Provenance> chain;
};

bool replay(const CeerEnumeration& e, const EquivalenceCertificate& cert);

// Concatenates certificates for x E y and y E z into one for x E z.
EquivalenceCertificate compose(const EquivalenceCertificate& first, const EquivalenceCertificate& second);

struct Adjacency {
  bool adjacent = false;
  FiniteWitnessGraph graph;
  // Present iff adjacent: the path through the witness graph, as a certificate.
  std::optional<EquivalenceCertificate> certificate;
};

// Throws PreconditionViolation when x == y. Symmetric in x, y.
Adjacency adjacent(const CeerEnumeration& e, Natural x, Natural y);

struct Connection {
  Natural z = 0;
  Natural bound = 0;            // N: least with y found before index N and x, y < N
  Natural found_at = 0;         // index of y in the searched column
  bool searched_from_y = false; // x was found in y's column instead
  Adjacency x_side;
  Adjacency y_side;
};

// Finds z adjacent to both x and y. Searches column x for y (and, failing
// that, column y for x) over `budget` indices. Throws BudgetExhausted when
// neither search succeeds and InternalContradiction if an adjacency check fails.
Connection connect(const CeerEnumeration& e, Natural x, Natural y, Natural budget);

// Searches enumerate(x, 0..budget) for y. Never returns a false certificate.
std::optional<EquivalenceCertificate> witness_equivalent(const CeerEnumeration& e, Natural x, Natural y,
                                                          Natural budget);

// enumerate(x, n) = x + k n.
CeerEnumeration mod_k_ceer(Natural k);

struct MergeEvent {
  Natural stage = 0;
  Natural column_a = 0;
  Natural column_b = 0;
};

// Element pair(i, n) lies in column i; events merge whole columns from their
// stage on. Column x lists x first, then at each stage s every not-yet-listed
// pair(j, t) with t <= s for each column j currently merged with x's column.
// Throws std::invalid_argument when stages decrease.
CeerEnumeration merge_schedule_ceer(std::vector<MergeEvent> schedule);
std::vector<MergeEvent> random_merge_schedule(std::uint64_t seed, Natural columns = 8, std::size_t events = 4,
                                              Natural max_stage = 12);

// {"kind": "mod-k", "params": {"k": 2}} or
// {"kind": "merge-schedule", "seed": s, "params": {"schedule": [[stage, a, b], ...]}}
CeerEnumeration make_ceer(const GeneratorDescriptor& d);

// Duplicate-freeness of columns < column_bound over indices < index_bound.
std::optional<std::pair<Natural, std::pair<Natural, Natural>>> find_duplicate(const CeerEnumeration& e,
                                                                              Natural column_bound,
                                                                              Natural index_bound);

// `count` pairs (x, y), x != y < bound, drawn with replacement from those
// whose equivalence one column search certifies within `budget` indices.
// Empty when no pair qualifies.
std::vector<std::pair<Natural, Natural>> sample_certified_pairs(const CeerEnumeration& e, Natural bound,
                                                                Natural budget, std::size_t count,
                                                                std::uint64_t seed);

std::string to_dot(const FiniteWitnessGraph& g, Natural x, Natural y);

}  // namespace effgraph::ceer

#endif  // EFFGRAPH_CEER_CEER_HPP
