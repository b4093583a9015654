#include "effgraph/structure/formula.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "effgraph/errors.hpp"

namespace effgraph::structure {

namespace {

constexpr Natural kSaturated = std::numeric_limits<Natural>::max();

Natural sat_add(Natural a, Natural b) { return (a > kSaturated - b) ? kSaturated : a + b; }

Natural sat_mul(Natural a, Natural b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<Natural>(p);
}

Natural sat_pow(Natural base, std::size_t exp) {
  Natural out = 1;
  for (std::size_t i = 0; i < exp; ++i) out = sat_mul(out, base);
  return out;
}

}  // namespace

std::size_t FormulaNode::size() const {
  std::size_t s = 1;
  for (const auto& c : children) s += c.size();
  return s;
}

bool FormulaNode::mentions_free(std::size_t free_index) const {
  for (const auto& t : args) {
    if (t.kind == Term::Kind::kFree && t.index == free_index) return true;
  }
  return std::any_of(children.begin(), children.end(),
                     [&](const FormulaNode& c) { return c.mentions_free(free_index); });
}

bool FormulaNode::mentions_any_free() const {
  for (const auto& t : args) {
    if (t.kind == Term::Kind::kFree) return true;
  }
  return std::any_of(children.begin(), children.end(), [](const FormulaNode& c) { return c.mentions_any_free(); });
}

namespace {

std::string term_string(const Term& t) {
  return t.kind == Term::Kind::kFree ? "y" + std::to_string(t.index + 1) : "a" + std::to_string(t.index);
}

void render(const FormulaNode& n, const Signature& sig, std::ostringstream& out) {
  switch (n.op) {
    case FormulaNode::Op::kAtom:
      out << sig[n.relation].name << '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) out << (i ? "," : "") << term_string(n.args[i]);
      out << ')';
      break;
    case FormulaNode::Op::kEq:
      out << term_string(n.args[0]) << '=' << term_string(n.args[1]);
      break;
    case FormulaNode::Op::kNot:
      out << '~';
      render(n.children[0], sig, out);
      break;
    case FormulaNode::Op::kAnd:
    case FormulaNode::Op::kOr:
      out << '(';
      render(n.children[0], sig, out);
      out << (n.op == FormulaNode::Op::kAnd ? " & " : " | ");
      render(n.children[1], sig, out);
      out << ')';
      break;
  }
}

Natural resolve(const Term& t, std::span<const Natural> params, std::span<const Natural> free) {
  return t.kind == Term::Kind::kFree ? free[t.index] : params[t.index];
}

}  // namespace

std::string QfFormula::to_string(const Signature& sig) const {
  std::ostringstream out;
  render(tree, sig, out);
  return out.str();
}

bool evaluate(const StructureOracle& m, const FormulaNode& phi, std::span<const Natural> params,
              std::span<const Natural> free) {
  switch (phi.op) {
    case FormulaNode::Op::kAtom: {
      std::vector<Natural> values;
      values.reserve(phi.args.size());
      for (const auto& t : phi.args) values.push_back(resolve(t, params, free));
      return m.holds(phi.relation, values);
    }
    case FormulaNode::Op::kEq:
      return resolve(phi.args[0], params, free) == resolve(phi.args[1], params, free);
    case FormulaNode::Op::kNot:
      return !evaluate(m, phi.children[0], params, free);
    case FormulaNode::Op::kAnd:
      return evaluate(m, phi.children[0], params, free) && evaluate(m, phi.children[1], params, free);
    case FormulaNode::Op::kOr:
      return evaluate(m, phi.children[0], params, free) || evaluate(m, phi.children[1], params, free);
  }
  return false;
}

FormulaSpace::FormulaSpace(Signature signature, std::size_t params, std::size_t max_free)
    : signature_(std::move(signature)), params_(params), max_free_(max_free) {}

Natural FormulaSpace::count(std::size_t size, std::size_t terms) const {
  if (size == 0) return 0;
  if (memo_.size() <= terms) memo_.resize(terms + 1);
  auto& row = memo_[terms];
  if (row.size() <= size) row.resize(size + 1);
  if (row[size]) return *row[size];
  Natural total = 0;
  if (size == 1) {
    for (const auto& rel : signature_.relations()) total = sat_add(total, sat_pow(terms, rel.arity));
    total = sat_add(total, terms * (terms > 0 ? terms - 1 : 0) / 2);
  } else {
    total = count(size - 1, terms);
    Natural binary = 0;
    for (std::size_t left = 1; left + 1 < size; ++left) {
      binary = sat_add(binary, sat_mul(count(left, terms), count(size - 1 - left, terms)));
    }
    total = sat_add(total, sat_mul(2, binary));
  }
  memo_[terms][size] = total;
  return total;
}

Natural FormulaSpace::class_size(std::size_t size, std::size_t free) const {
  return count(size, params_ + free);
}

Natural FormulaSpace::class_offset(std::size_t size, std::size_t free) const {
  Natural offset = 0;
  for (std::size_t s = 1; s <= size; ++s) {
    for (std::size_t l = 0; l <= max_free_; ++l) {
      if (s == size && l == free) return offset;
      offset = sat_add(offset, class_size(s, l));
    }
  }
  return offset;
}

Term FormulaSpace::term(std::size_t id, std::size_t free) const {
  return id < free ? Term{Term::Kind::kFree, id} : Term{Term::Kind::kParam, id - free};
}

std::size_t FormulaSpace::term_id(const Term& t, std::size_t free) const {
  if (t.kind == Term::Kind::kFree) {
    if (t.index >= free) throw std::invalid_argument("free variable outside the declared arity");
    return t.index;
  }
  if (t.index >= params_) throw std::invalid_argument("parameter outside the formula space");
  return free + t.index;
}

FormulaNode FormulaSpace::unrank(std::size_t size, std::size_t free, Natural r) const {
  const std::size_t terms = params_ + free;
  FormulaNode node;
  if (size == 1) {
    for (std::size_t ri = 0; ri < signature_.size(); ++ri) {
      const std::size_t arity = signature_[ri].arity;
      const Natural n = sat_pow(terms, arity);
      if (r < n) {
        node.op = FormulaNode::Op::kAtom;
        node.relation = ri;
        node.args.resize(arity);
        for (std::size_t k = arity; k-- > 0;) {
          node.args[k] = term(r % terms, free);
          r /= terms;
        }
        return node;
      }
      r -= n;
    }
    for (std::size_t i = 0; i < terms; ++i) {
      const Natural row = terms - 1 - i;
      if (r < row) {
        node.op = FormulaNode::Op::kEq;
        node.args = {term(i, free), term(i + 1 + r, free)};
        return node;
      }
      r -= row;
    }
    throw std::out_of_range("formula rank out of range");
  }
  const Natural negations = count(size - 1, terms);
  if (r < negations) {
    node.op = FormulaNode::Op::kNot;
    node.children.push_back(unrank(size - 1, free, r));
    return node;
  }
  r -= negations;
  for (auto op : {FormulaNode::Op::kAnd, FormulaNode::Op::kOr}) {
    for (std::size_t left = 1; left + 1 < size; ++left) {
      const Natural cl = count(left, terms);
      const Natural cr = count(size - 1 - left, terms);
      const Natural block = sat_mul(cl, cr);
      if (r < block) {
        node.op = op;
        node.children.push_back(unrank(left, free, r / cr));
        node.children.push_back(unrank(size - 1 - left, free, r % cr));
        return node;
      }
      r -= block;
    }
  }
  throw std::out_of_range("formula rank out of range");
}

Natural FormulaSpace::rank(const FormulaNode& node, std::size_t free) const {
  const std::size_t terms = params_ + free;
  const std::size_t size = node.size();
  switch (node.op) {
    case FormulaNode::Op::kAtom: {
      if (node.relation >= signature_.size() || node.args.size() != signature_[node.relation].arity) {
        throw std::invalid_argument("atom does not match the signature");
      }
      Natural r = 0;
      for (std::size_t ri = 0; ri < node.relation; ++ri) r = sat_add(r, sat_pow(terms, signature_[ri].arity));
      Natural digits = 0;
      for (const auto& t : node.args) digits = digits * terms + term_id(t, free);
      return r + digits;
    }
    case FormulaNode::Op::kEq: {
      const std::size_t i = term_id(node.args[0], free);
      const std::size_t j = term_id(node.args[1], free);
      if (i >= j) throw std::invalid_argument("equalities are canonical only as t_i = t_j with i < j");
      Natural r = 0;
      for (const auto& rel : signature_.relations()) r = sat_add(r, sat_pow(terms, rel.arity));
      for (std::size_t k = 0; k < i; ++k) r += terms - 1 - k;
      return r + (j - i - 1);
    }
    case FormulaNode::Op::kNot:
      return rank(node.children[0], free);
    case FormulaNode::Op::kAnd:
    case FormulaNode::Op::kOr: {
      Natural r = count(size - 1, terms);
      const std::size_t left_size = node.children[0].size();
      for (auto op : {FormulaNode::Op::kAnd, FormulaNode::Op::kOr}) {
        for (std::size_t left = 1; left + 1 < size; ++left) {
          const Natural cr = count(size - 1 - left, terms);
          if (op == node.op && left == left_size) {
            return r + rank(node.children[0], free) * cr + rank(node.children[1], free);
          }
          r = sat_add(r, sat_mul(count(left, terms), cr));
        }
      }
      break;
    }
  }
  throw std::logic_error("unreachable formula node");
}

QfFormula FormulaSpace::at(Natural index) const {
  if (count(1, params_ + max_free_) == 0) throw std::out_of_range("formula space is empty");
  const Natural original = index;
  for (std::size_t size = 1;; ++size) {
    for (std::size_t free = 0; free <= max_free_; ++free) {
      const Natural c = class_size(size, free);
      if (index < c) return QfFormula{original, params_, free, unrank(size, free, index)};
      index -= c;
    }
  }
}

Natural FormulaSpace::index_of(const FormulaNode& tree, std::size_t free) const {
  return class_offset(tree.size(), free) + rank(tree, free);
}

TupleWalker::TupleWalker(std::size_t length) : length_(length) {
  if (length == 0) throw std::invalid_argument("tuple length must be positive");
}

bool TupleWalker::uses(std::size_t upto, Natural v) const {
  return std::find(current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(upto), v) !=
         current_.begin() + static_cast<std::ptrdiff_t>(upto);
}

// Smallest completion of current_[0, from): fresh values in increasing order,
// with max_ forced into the last slot if the prefix lacks it.
void TupleWalker::complete(std::size_t from) {
  bool has_max = uses(from, max_);
  Natural v = 0;
  for (std::size_t i = from; i < length_; ++i) {
    if (i + 1 == length_ && !has_max) {
      current_[i] = max_;
      break;
    }
    while (uses(i, v)) ++v;
    current_[i] = v;
    if (v == max_) has_max = true;
  }
}

const std::vector<Natural>& TupleWalker::next() {
  if (!started_) {
    started_ = true;
    max_ = length_ - 1;
    current_.assign(length_, 0);
    complete(0);
    return current_;
  }
  for (std::size_t pos = length_; pos-- > 0;) {
    const bool prefix_has_max = uses(pos, max_);
    for (Natural v = current_[pos] + 1; v <= max_; ++v) {
      if (uses(pos, v)) continue;
      if (pos + 1 == length_ && !prefix_has_max && v != max_) continue;
      current_[pos] = v;
      complete(pos + 1);
      return current_;
    }
  }
  ++max_;
  complete(0);
  return current_;
}

namespace {

// Elements outside the parameters, ascending, materialised on demand.
class FreshElements {
 public:
  explicit FreshElements(std::span<const Natural> params) : placed_(params.begin(), params.end()) {}

  Natural at(Natural i) {
    while (fresh_.size() <= i) {
      while (placed_.count(cursor_)) ++cursor_;
      fresh_.push_back(cursor_++);
    }
    return fresh_[i];
  }

 private:
  std::unordered_set<Natural> placed_;
  std::vector<Natural> fresh_;
  Natural cursor_ = 0;
};

std::optional<Distinguisher> walk_atom(const StructureOracle& m, std::span<const Natural> params,
                                       const QfFormula& phi, Natural budget, FreshElements& fresh) {
  const FormulaNode& atom = phi.tree;
  const std::size_t free = phi.free;
  // Parameter arguments are fixed; only the free slots change per tuple.
  std::vector<Natural> values(atom.args.size());
  std::vector<std::pair<std::size_t, std::size_t>> free_slots;  // (argument, free index)
  for (std::size_t k = 0; k < atom.args.size(); ++k) {
    if (atom.args[k].kind == Term::Kind::kParam) {
      values[k] = params[atom.args[k].index];
    } else {
      free_slots.emplace_back(k, atom.args[k].index);
    }
  }
  std::optional<std::vector<Natural>> sat, ref;
  std::vector<Natural> tuple(free);
  TupleWalker walker(free);
  for (Natural step = 0; step < budget; ++step) {
    const auto& idx = walker.next();
    for (std::size_t k = 0; k < free; ++k) tuple[k] = fresh.at(idx[k]);
    for (const auto& [arg, var] : free_slots) values[arg] = tuple[var];
    const bool truth = m.holds_unchecked(atom.relation, values);
    if (truth && !sat) sat = tuple;
    if (!truth && !ref) ref = tuple;
    if (sat && ref) return Distinguisher{phi, *sat, *ref, step + 1};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Distinguisher> separate(const StructureOracle& m, std::span<const Natural> params,
                                      const QfFormula& atom, Natural budget) {
  if (atom.tree.op != FormulaNode::Op::kAtom || atom.params != params.size()) {
    throw PreconditionViolation("separate needs an atom over the given parameters");
  }
  FreshElements fresh(params);
  return walk_atom(m, params, atom, budget, fresh);
}

std::optional<Distinguisher> find_distinguishing(const StructureOracle& m, std::span<const Natural> params,
                                                 Natural budget) {
  if (budget == 0) throw PreconditionViolation("find_distinguishing needs budget >= 1");
  const Signature& sig = m.signature();
  const std::size_t max_free = sig.max_arity();
  if (max_free == 0) return std::nullopt;

  FreshElements fresh(params);
  const FormulaSpace space(sig, params.size(), max_free);
  for (std::size_t free = 1; free <= max_free; ++free) {
    Natural atoms = 0;
    for (const auto& rel : sig.relations()) atoms = sat_add(atoms, sat_pow(params.size() + free, rel.arity));
    const Natural offset = space.class_offset(1, free);
    for (Natural r = 0; r < atoms; ++r) {
      const QfFormula phi = space.at(offset + r);
      if (!phi.tree.mentions_free(free - 1)) continue;
      if (auto d = walk_atom(m, params, phi, budget, fresh)) return d;
    }
  }
  return std::nullopt;
}

}  // namespace effgraph::structure
