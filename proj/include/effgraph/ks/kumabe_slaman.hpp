#ifndef EFFGRAPH_KS_KUMABE_SLAMAN_HPP
#define EFFGRAPH_KS_KUMABE_SLAMAN_HPP

// Kumabe-Slaman conditions: a {0, 1, bot} labelling of the full binary tree
// up to some depth, together with finitely many forbidden infinite paths.
//
// Labels are kept sparsely: a string of length <= depth that has no entry
// is labelled bot. The empty condition has no depth at all.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "effgraph/core/generators.hpp"
#include "effgraph/core/oracles.hpp"
#include "effgraph/errors.hpp"

namespace effgraph::ks {

enum class Label : std::uint8_t { kZero, kOne, kBot };

class DomainNotFull : public PreconditionViolation {
 public:
  using PreconditionViolation::PreconditionViolation;
};

class DiffBudgetExhausted : public BudgetExhausted {
 public:
  using BudgetExhausted::BudgetExhausted;
};

class SelectorContractViolation : public Error {
 public:
  SelectorContractViolation(std::size_t round, const std::string& what);
  std::size_t round() const { return round_; }

 private:
  std::size_t round_;
};

struct ForbiddenPath {
  BitStream path;
  std::optional<GeneratorDescriptor> origin;  // kept for export
};

class KsCondition {
 public:
  KsCondition() = default;  // the empty condition
  // `labels` holds only 0/1 entries; every key must have length <= depth.
  KsCondition(std::optional<Natural> depth, std::map<std::string, bool> labels, std::vector<ForbiddenPath> forbidden);

  const std::optional<Natural>& depth() const { return depth_; }
  const std::map<std::string, bool>& labels() const { return labels_; }
  const std::vector<ForbiddenPath>& forbidden() const { return forbidden_; }

  bool covers(const std::string& node) const { return depth_ && node.size() <= *depth_; }
  // nullopt outside the domain.
  std::optional<Label> label(const std::string& node) const;

 private:
  std::optional<Natural> depth_;
  std::map<std::string, bool> labels_;
  std::vector<ForbiddenPath> forbidden_;
};

// Full explicit labelling. Throws DomainNotFull unless the keys are exactly
// the strings of length <= n for some n.
KsCondition make_condition(const std::map<std::string, Label>& labels, std::vector<ForbiddenPath> forbidden);

// Forbidden paths of p are matched in q by identity or by agreement on the
// first probe_depth bits.
bool extends(const KsCondition& q, const KsCondition& p, Natural probe_depth);

// Non-bot labels met on x|0, x|1, ... up to min(max_depth, depth).
std::string eval_labels(const KsCondition& g, const BitStream& x, Natural max_depth);

std::string prefix_of(const BitStream& x, Natural length);

// Throws DiffBudgetExhausted when some forbidden path agrees with x on the
// first diff_budget bits.
KsCondition encode_bit_along(const KsCondition& p, const BitStream& x, bool bit, Natural diff_budget);

struct DenseSelector {
  std::string name;
  std::function<KsCondition(const KsCondition&)> apply;
  bool protects_path = true;
  // When set, supplies the bit coded in round k instead of the payload.
  std::function<bool(const KsCondition&, std::size_t round)> decide;
};

struct GenericLabelingPrefix {
  std::vector<KsCondition> chain;
  std::vector<bool> coded;  // bit coded in each round

  const KsCondition& labelling() const { return chain.back(); }
};

std::string eval_labels(const GenericLabelingPrefix& g, const BitStream& x, Natural max_depth);

inline constexpr Natural kDefaultProbeDepth = 64;

GenericLabelingPrefix build_generic(const KsCondition& p0, const std::vector<DenseSelector>& selectors,
                                    const BitStream& x, const BitStream& payload, std::size_t rounds,
                                    Natural diff_budget, Natural probe_depth = kDefaultProbeDepth);

// Audits. Each returns a description of the first failure.
std::optional<std::string> check_descending(const GenericLabelingPrefix& g, Natural probe_depth);
std::optional<std::string> check_bot_permanence(const GenericLabelingPrefix& g);

namespace selectors {
DenseSelector identity();
// Extends the depth by one and labels the least new string that is off x and
// off every forbidden path.
DenseSelector label_elsewhere(BitStream x);
// Forbids a fresh seeded random path.
DenseSelector add_forbidden(std::uint64_t seed);
// Codes decide(k) in round k.
DenseSelector deciding(BitStream bits);
// Breaks the contract: labels x|(depth + 1).
DenseSelector label_along(BitStream x);
}  // namespace selectors

// A seeded family of conditions: several descending chains grown from the
// empty condition, so that the family contains comparable and incomparable
// pairs.
std::vector<KsCondition> condition_family(std::uint64_t seed, std::size_t count);

}  // namespace effgraph::ks

#endif  // EFFGRAPH_KS_KUMABE_SLAMAN_HPP
