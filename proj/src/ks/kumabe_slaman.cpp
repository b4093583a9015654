#include "effgraph/ks/kumabe_slaman.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace effgraph::ks {

SelectorContractViolation::SelectorContractViolation(std::size_t round, const std::string& what)
    : Error("selector contract violated in round " + std::to_string(round) + ": " + what), round_(round) {}

KsCondition::KsCondition(std::optional<Natural> depth, std::map<std::string, bool> labels,
                         std::vector<ForbiddenPath> forbidden)
    : depth_(depth), labels_(std::move(labels)), forbidden_(std::move(forbidden)) {
  for (const auto& [node, bit] : labels_) {
    if (!covers(node)) throw DomainNotFull("label on \"" + node + "\" lies outside the condition's depth");
    if (node.find_first_not_of("01") != std::string::npos) {
      throw PreconditionViolation("\"" + node + "\" is not a binary string");
    }
  }
}

std::optional<Label> KsCondition::label(const std::string& node) const {
  if (!covers(node)) return std::nullopt;
  const auto it = labels_.find(node);
  if (it == labels_.end()) return Label::kBot;
  return it->second ? Label::kOne : Label::kZero;
}

KsCondition make_condition(const std::map<std::string, Label>& labels, std::vector<ForbiddenPath> forbidden) {
  if (labels.empty()) return KsCondition(std::nullopt, {}, std::move(forbidden));
  Natural depth = 0;
  for (const auto& [node, value] : labels) {
    if (node.find_first_not_of("01") != std::string::npos) {
      throw PreconditionViolation("\"" + node + "\" is not a binary string");
    }
    depth = std::max<Natural>(depth, node.size());
  }
  if (depth >= 63 || labels.size() != (Natural{1} << (depth + 1)) - 1) {
    // Keys are distinct binary strings of length <= depth, so a full tree is
    // exactly a count match. Name one missing node.
    std::string missing;
    for (Natural len = 0; len <= depth && missing.empty(); ++len) {
      for (Natural v = 0; v < (Natural{1} << len); ++v) {
        std::string s(len, '0');
        for (Natural i = 0; i < len; ++i) s[len - 1 - i] = ((v >> i) & 1U) ? '1' : '0';
        if (!labels.count(s)) {
          missing = s;
          break;
        }
      }
    }
    throw DomainNotFull("labelling is not total up to depth " + std::to_string(depth) + "; missing \"" + missing +
                        "\"");
  }
  std::map<std::string, bool> sparse;
  for (const auto& [node, value] : labels) {
    if (value != Label::kBot) sparse.emplace(node, value == Label::kOne);
  }
  return KsCondition(depth, std::move(sparse), std::move(forbidden));
}

std::string prefix_of(const BitStream& x, Natural length) {
  std::string s(length, '0');
  for (Natural i = 0; i < length; ++i) s[i] = x(i) ? '1' : '0';
  return s;
}

namespace {

bool lies_along(const std::string& node, const BitStream& x) {
  for (std::size_t i = 0; i < node.size(); ++i) {
    if ((node[i] == '1') != x(i)) return false;
  }
  return true;
}

bool same_path(const BitStream& a, const BitStream& b, Natural probe_depth) {
  if (a.identity() == b.identity()) return true;
  for (Natural i = 0; i < probe_depth; ++i) {
    if (a(i) != b(i)) return false;
  }
  return true;
}

Natural next_length(const KsCondition& p) { return p.depth() ? *p.depth() + 1 : 0; }

}  // namespace

bool extends(const KsCondition& q, const KsCondition& p, Natural probe_depth) {
  if (p.depth()) {
    if (!q.depth() || *q.depth() < *p.depth()) return false;
    for (const auto& [node, bit] : p.labels()) {
      const auto it = q.labels().find(node);
      if (it == q.labels().end() || it->second != bit) return false;
    }
    for (const auto& [node, bit] : q.labels()) {
      if (node.size() <= *p.depth() && !p.labels().count(node)) return false;  // bot relabelled
    }
  }
  for (const auto& fp : p.forbidden()) {
    const bool kept = std::any_of(q.forbidden().begin(), q.forbidden().end(),
                                  [&](const ForbiddenPath& fq) { return same_path(fp.path, fq.path, probe_depth); });
    if (!kept) return false;
  }
  const Natural fresh_from = next_length(p);
  for (const auto& [node, bit] : q.labels()) {
    if (node.size() < fresh_from) continue;
    for (const auto& fp : p.forbidden()) {
      if (lies_along(node, fp.path)) return false;
    }
  }
  return true;
}

std::string eval_labels(const KsCondition& g, const BitStream& x, Natural max_depth) {
  std::string out;
  if (!g.depth()) return out;
  const Natural limit = std::min(max_depth, *g.depth());
  std::string node;
  for (Natural len = 0;; ++len) {
    if (const auto it = g.labels().find(node); it != g.labels().end()) out.push_back(it->second ? '1' : '0');
    if (len == limit) break;
    node.push_back(x(len) ? '1' : '0');
  }
  return out;
}

std::string eval_labels(const GenericLabelingPrefix& g, const BitStream& x, Natural max_depth) {
  return eval_labels(g.labelling(), x, max_depth);
}

KsCondition encode_bit_along(const KsCondition& p, const BitStream& x, bool bit, Natural diff_budget) {
  Natural length = p.depth() ? *p.depth() + 1 : 1;
  for (std::size_t k = 0; k < p.forbidden().size(); ++k) {
    const BitStream& y = p.forbidden()[k].path;
    std::optional<Natural> diff;
    if (y.identity() != x.identity()) {
      for (Natural i = 0; i < diff_budget; ++i) {
        if (x(i) != y(i)) {
          diff = i;
          break;
        }
      }
    }
    if (!diff) {
      throw DiffBudgetExhausted("path agrees with forbidden path " + std::to_string(k) + " on the first " +
                                std::to_string(diff_budget) + " bits");
    }
    length = std::max(length, *diff + 1);
  }
  auto labels = p.labels();
  labels[prefix_of(x, length)] = bit;
  return KsCondition(length, std::move(labels), p.forbidden());
}

GenericLabelingPrefix build_generic(const KsCondition& p0, const std::vector<DenseSelector>& selectors,
                                    const BitStream& x, const BitStream& payload, std::size_t rounds,
                                    Natural diff_budget, Natural probe_depth) {
  GenericLabelingPrefix out;
  out.chain.push_back(p0);
  bool all_protect = true;
  for (std::size_t k = 0; k < rounds; ++k) {
    const KsCondition current = out.chain.back();
    bool bit = payload(k);
    if (!selectors.empty()) {
      const DenseSelector& sel = selectors[k % selectors.size()];
      KsCondition next = sel.apply(current);
      if (!extends(next, current, probe_depth)) {
        throw SelectorContractViolation(k, sel.name + " did not extend its input");
      }
      if (sel.protects_path) {
        for (const auto& [node, b] : next.labels()) {
          if (!current.covers(node) && lies_along(node, x)) {
            throw SelectorContractViolation(k, sel.name + " labelled \"" + node + "\" along the protected path");
          }
        }
      } else {
        all_protect = false;
      }
      if (sel.decide) bit = sel.decide(next, k);
      out.chain.push_back(std::move(next));
    }
    KsCondition coded = encode_bit_along(out.chain.back(), x, bit, diff_budget);
    if (!extends(coded, out.chain.back(), probe_depth)) throw InternalContradiction("coding step did not extend");
    out.chain.push_back(std::move(coded));
    out.coded.push_back(bit);
  }

  if (all_protect) {
    const Natural depth = out.labelling().depth().value_or(0);
    std::string expected = eval_labels(p0, x, depth);
    for (bool b : out.coded) expected.push_back(b ? '1' : '0');
    if (eval_labels(out, x, depth) != expected) {
      throw InternalContradiction("labels along the path differ from the coded bits");
    }
  }
  return out;
}

std::optional<std::string> check_descending(const GenericLabelingPrefix& g, Natural probe_depth) {
  for (std::size_t i = 1; i < g.chain.size(); ++i) {
    if (!extends(g.chain[i], g.chain[i - 1], probe_depth)) {
      return "condition " + std::to_string(i) + " does not extend condition " + std::to_string(i - 1);
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_bot_permanence(const GenericLabelingPrefix& g) {
  const KsCondition& last = g.labelling();
  for (std::size_t i = 0; i < g.chain.size(); ++i) {
    const KsCondition& c = g.chain[i];
    if (!c.depth()) continue;
    for (const auto& [node, bit] : last.labels()) {
      if (c.covers(node) && !c.labels().count(node)) {
        return "\"" + node + "\" is bot in condition " + std::to_string(i) + " but labelled in the union";
      }
    }
  }
  return std::nullopt;
}

namespace selectors {

DenseSelector identity() {
  return DenseSelector{"identity", [](const KsCondition& p) { return p; }, true, {}};
}

DenseSelector label_elsewhere(BitStream x) {
  auto apply = [x](const KsCondition& p) {
    const Natural length = next_length(p);
    auto labels = p.labels();
    std::set<std::string> blocked{prefix_of(x, length)};
    for (const auto& fp : p.forbidden()) blocked.insert(prefix_of(fp.path, length));
    // Strings of this length in lexicographic order; at most |blocked| are skipped.
    for (Natural v = 0; v <= blocked.size() && (length >= 64 || v < (Natural{1} << length)); ++v) {
      std::string s(length, '0');
      for (Natural i = 0; i < std::min<Natural>(length, 64); ++i) s[length - 1 - i] = ((v >> i) & 1U) ? '1' : '0';
      if (!blocked.count(s)) {
        labels[s] = true;
        break;
      }
    }
    return KsCondition(length, std::move(labels), p.forbidden());
  };
  return DenseSelector{"label-elsewhere", apply, true, {}};
}

DenseSelector add_forbidden(std::uint64_t seed) {
  auto apply = [seed](const KsCondition& p) {
    auto forbidden = p.forbidden();
    const std::uint64_t s = hash_pair(seed, forbidden.size());
    forbidden.push_back(ForbiddenPath{streams::random(s), GeneratorDescriptor{"random", s, nlohmann::json::object()}});
    return KsCondition(p.depth(), p.labels(), std::move(forbidden));
  };
  return DenseSelector{"add-forbidden", apply, true, {}};
}

DenseSelector deciding(BitStream bits) {
  return DenseSelector{"deciding", [](const KsCondition& p) { return p; }, true,
                       [bits](const KsCondition&, std::size_t round) { return bits(round); }};
}

DenseSelector label_along(BitStream x) {
  auto apply = [x](const KsCondition& p) {
    const Natural length = next_length(p);
    auto labels = p.labels();
    labels[prefix_of(x, length)] = true;
    return KsCondition(length, std::move(labels), p.forbidden());
  };
  return DenseSelector{"label-along", apply, true, {}};
}

}  // namespace selectors

std::vector<KsCondition> condition_family(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<KsCondition> family;
  while (family.size() < count) {
    KsCondition current = (family.empty() || rng() % 2 == 0) ? KsCondition{} : family[rng() % family.size()];
    if (family.empty() || !current.depth()) family.push_back(current);
    for (int step = 0; step < 6 && family.size() < count; ++step) {
      const BitStream path = streams::random(rng());
      switch (rng() % 3) {
        case 0:
          try {
            current = encode_bit_along(current, path, (rng() & 1U) != 0, 256);
          } catch (const DiffBudgetExhausted&) {
            continue;
          }
          break;
        case 1:
          current = selectors::label_elsewhere(path).apply(current);
          break;
        default:
          current = selectors::add_forbidden(rng()).apply(current);
          break;
      }
      family.push_back(current);
    }
  }
  return family;
}

}  // namespace effgraph::ks
