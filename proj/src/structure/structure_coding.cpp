#include "effgraph/structure/structure_coding.hpp"

#include <algorithm>
#include <bit>
#include <memory>
#include <numeric>
#include <unordered_set>

namespace effgraph::structure {

namespace {

// j-th element (from 0) of N minus `sorted`, which is ascending and duplicate-free.
Natural nth_outside(const std::vector<Natural>& sorted, Natural j) {
  Natural candidate = j;
  for (Natural e : sorted) {
    if (e <= candidate) {
      ++candidate;
    } else {
      break;
    }
  }
  return candidate;
}

std::vector<Natural> positions_below(Natural k) {
  std::vector<Natural> out(k);
  std::iota(out.begin(), out.end(), Natural{0});
  return out;
}

// Largest index a walker of this length reaches within `steps` tuples.
Natural walker_reach(std::size_t length, Natural steps) {
  TupleWalker walker(length);
  Natural reach = 0;
  for (Natural s = 0; s < steps; ++s) {
    for (Natural v : walker.next()) reach = std::max(reach, v);
  }
  return reach;
}

std::vector<bool> slots(const std::vector<bool>& queue, std::size_t parity) {
  std::vector<bool> out;
  for (std::size_t i = parity; i < queue.size(); i += 2) out.push_back(queue[i]);
  return out;
}

}  // namespace

TrivialityDetected::TrivialityDetected(std::size_t stage, Natural budget)
    : BudgetExhausted("no distinguishing formula at stage " + std::to_string(stage) + " within budget " +
                      std::to_string(budget)),
      stage_(stage) {}

namespace {
std::string describe(const AtomWitness& w) {
  std::string s = "isomorphism check failed at " + w.relation + "(";
  for (std::size_t i = 0; i < w.args.size(); ++i) s += (i ? "," : "") + std::to_string(w.args[i]);
  return s + ")";
}
}  // namespace

IsomorphismCheckFailed::IsomorphismCheckFailed(AtomWitness witness)
    : Error(describe(witness)), witness_(std::move(witness)) {}

Natural EncodingCertificate::max_bound() const {
  Natural best = 0;
  for (Natural b : stage_bounds) best = std::max(best, b);
  return best;
}

std::vector<bool> frame_natural(Natural value) {
  const auto width = static_cast<std::size_t>(std::bit_width(value));
  std::vector<bool> out(width, true);
  out.push_back(false);
  for (std::size_t i = width; i-- > 0;) out.push_back(((value >> i) & 1U) != 0);
  return out;
}

std::vector<bool> placement_record(bool bit, std::span<const Natural> elements) {
  std::vector<bool> out{bit};
  auto append = [&out](Natural v) {
    const auto framed = frame_natural(v);
    out.insert(out.end(), framed.begin(), framed.end());
  };
  append(elements.size());
  for (Natural e : elements) append(e);
  return out;
}

std::vector<ParsedRecord> parse_records(const std::vector<bool>& stream) {
  std::vector<ParsedRecord> records;
  std::size_t pos = 0;
  auto read_natural = [&](Natural& value) {
    std::size_t width = 0;
    while (pos < stream.size() && stream[pos]) {
      ++width;
      ++pos;
    }
    if (pos >= stream.size()) return false;
    ++pos;  // terminating 0
    if (width > 64 || stream.size() - pos < width) return false;
    value = 0;
    for (std::size_t i = 0; i < width; ++i) value = (value << 1U) | (stream[pos++] ? 1U : 0U);
    return true;
  };
  while (pos < stream.size()) {
    ParsedRecord rec;
    rec.bit = stream[pos++];
    Natural count = 0;
    if (!read_natural(count)) break;
    bool complete = true;
    for (Natural i = 0; i < count && complete; ++i) {
      Natural e = 0;
      complete = read_natural(e);
      if (complete) rec.elements.push_back(e);
    }
    if (!complete) break;
    records.push_back(std::move(rec));
  }
  return records;
}

StructureEncoding encode_structure(const StructureOracle& m, const BitStream& payload, std::size_t stages,
                                   Natural budget) {
  PlacementState state;
  std::unordered_set<Natural> placed_set;
  std::vector<bool> queue;
  std::vector<bool> records;
  Natural least_unplaced = 0;

  for (std::size_t s = 0; s < stages; ++s) {
    auto d = find_distinguishing(m, state.placed, budget);
    if (!d) throw TrivialityDetected(s, budget);

    bool bit = false;
    if (s % 2 == 0) {
      bit = payload(s / 2);
    } else {
      if (records.size() <= s / 2) throw InternalContradiction("record stream ran dry");
      bit = records[s / 2];
    }
    queue.push_back(bit);

    StageRecord rec;
    rec.first_position = state.placed.size();
    rec.bit = bit;
    rec.coded = bit ? d->refuted : d->satisfied;
    rec.distinguisher = std::move(*d);
    for (Natural e : rec.coded) {
      state.placed.push_back(e);
      placed_set.insert(e);
    }
    while (placed_set.count(least_unplaced)) ++least_unplaced;
    rec.filler = least_unplaced;
    state.placed.push_back(least_unplaced);
    placed_set.insert(least_unplaced);

    const std::span<const Natural> stage_elems(state.placed.begin() + static_cast<std::ptrdiff_t>(rec.first_position),
                                               state.placed.end());
    const auto framed = placement_record(bit, stage_elems);
    records.insert(records.end(), framed.begin(), framed.end());
    state.log.push_back(std::move(rec));
  }

  auto placed = std::make_shared<const std::vector<Natural>>(state.placed);
  auto sorted = std::make_shared<std::vector<Natural>>(state.placed);
  std::sort(sorted->begin(), sorted->end());
  auto f = [placed, sorted](Natural pos) {
    if (pos < placed->size()) return (*placed)[pos];
    return nth_outside(*sorted, pos - placed->size());
  };
  StructureOracle coded(m.signature(), [m, f](std::size_t rel, std::span<const Natural> args) {
    std::vector<Natural> image(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) image[i] = f(args[i]);
    return m.holds_unchecked(rel, image);
  });

  // The decoder walks N with positions as parameters. Each stage's bound is
  // the number of tuples it needs to see the encoder's atom separate two
  // tuples; the full decoder is then replayed at the largest bound, where it
  // must pick the same atom at every stage.
  EncodingCertificate cert;
  for (const StageRecord& rec : state.log) {
    const auto params = positions_below(rec.first_position);
    auto d = separate(coded, params, rec.distinguisher.formula, budget);
    if (!d) {
      throw InternalContradiction("stage " + std::to_string(cert.stage_bounds.size()) +
                                  ": atom does not separate tuples of the copy within budget");
    }
    cert.stage_bounds.push_back(d->tuples_examined);
  }
  const Natural bound = cert.max_bound();
  std::vector<DecodedStage> seen;
  if (stages > 0) {
    seen = decode_structure(coded, stages, bound).log;
    for (std::size_t s = 0; s < stages; ++s) {
      const StageRecord& rec = state.log[s];
      if (seen[s].distinguisher.formula.index != rec.distinguisher.formula.index ||
          seen[s].distinguisher.formula.free != rec.distinguisher.formula.free || seen[s].bit != rec.bit) {
        throw InternalContradiction("decoder diverges at stage " + std::to_string(s) + " with budget " +
                                    std::to_string(bound));
      }
    }
  }
  std::vector<std::optional<Natural>> reach(m.signature().max_arity() + 1);
  Natural table_bound = state.placed.size();
  for (const DecodedStage& stage : seen) {
    for (std::size_t l = 1; l <= stage.distinguisher.formula.free; ++l) {
      if (!reach[l]) reach[l] = walker_reach(l, bound);
      table_bound = std::max(table_bound, stage.first_position + *reach[l] + 1);
    }
  }
  cert.table_bound = table_bound;

  StructureEncoding out{std::move(coded), std::move(state), std::move(cert), queue, slots(queue, 0), records, 0};
  const auto consumed = slots(queue, 1);
  for (const auto& r : parse_records(consumed)) out.recoverable_positions += r.elements.size();
  return out;
}

DecodedStructure decode_structure(const StructureOracle& coded, std::size_t stages, Natural budget) {
  DecodedStructure out;
  Natural k = 0;
  for (std::size_t s = 0; s < stages; ++s) {
    const auto params = positions_below(k);
    auto d = find_distinguishing(coded, params, budget);
    if (!d) throw BudgetExhausted("stage " + std::to_string(s) + " did not converge within budget " +
                                  std::to_string(budget));
    DecodedStage stage{k, std::move(*d), false};
    std::vector<Natural> tuple(stage.distinguisher.formula.free);
    std::iota(tuple.begin(), tuple.end(), k);
    stage.bit = !evaluate(coded, stage.distinguisher.formula.tree, params, tuple);
    out.queue.push_back(stage.bit);
    k += stage.distinguisher.formula.free + 1;
    out.log.push_back(std::move(stage));
  }
  out.payload_bits = slots(out.queue, 0);

  const auto records = parse_records(slots(out.queue, 1));
  for (std::size_t r = 0; r < records.size(); ++r) {
    const DecodedStage& stage = out.log[r];
    if (records[r].bit != stage.bit || records[r].elements.size() != stage.distinguisher.formula.free + 1) {
      throw InternalContradiction("placement record " + std::to_string(r) + " disagrees with the decoded stage");
    }
    out.placement_prefix.insert(out.placement_prefix.end(), records[r].elements.begin(), records[r].elements.end());
  }
  return out;
}

bool replay(const StructureOracle& coded, const DecodedStage& stage) {
  const auto params = positions_below(stage.first_position);
  const auto& phi = stage.distinguisher.formula.tree;
  if (!evaluate(coded, phi, params, stage.distinguisher.satisfied)) return false;
  if (evaluate(coded, phi, params, stage.distinguisher.refuted)) return false;
  std::vector<Natural> tuple(stage.distinguisher.formula.free);
  std::iota(tuple.begin(), tuple.end(), stage.first_position);
  return evaluate(coded, phi, params, tuple) != stage.bit;
}

std::optional<AtomWitness> check_isomorphism_table(const StructureOracle& m, const StructureOracle& n,
                                                   std::span<const Natural> g, Natural prefix) {
  if (!(m.signature() == n.signature())) throw PreconditionViolation("structures have different signatures");
  if (g.size() < prefix) throw PreconditionViolation("map table shorter than prefix");
  const Signature& sig = m.signature();
  std::optional<AtomWitness> failure;
  std::vector<Natural> image;
  for (std::size_t r = 0; r < sig.size() && !failure; ++r) {
    for_each_tuple(sig[r].arity, prefix, [&](std::span<const Natural> t) {
      image.resize(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = g[t[i]];
      if (m.holds_unchecked(r, t) != n.holds_unchecked(r, image)) {
        failure = AtomWitness{sig[r].name, std::vector<Natural>(t.begin(), t.end())};
        return false;
      }
      return true;
    });
  }
  return failure;
}

std::vector<Natural> trivial_extend_iso(const StructureOracle& m, const StructureOracle& n,
                                        const std::map<Natural, Natural>& f_on_f, Natural prefix) {
  std::vector<Natural> domain;
  std::vector<Natural> range;
  for (const auto& [a, b] : f_on_f) {
    domain.push_back(a);
    range.push_back(b);
  }
  std::sort(range.begin(), range.end());
  if (std::adjacent_find(range.begin(), range.end()) != range.end()) {
    throw PreconditionViolation("partial map is not injective");
  }

  std::vector<Natural> g(prefix);
  for (Natural x = 0; x < prefix; ++x) {
    if (auto it = f_on_f.find(x); it != f_on_f.end()) {
      g[x] = it->second;
    } else {
      const auto below = static_cast<Natural>(std::lower_bound(domain.begin(), domain.end(), x) - domain.begin());
      g[x] = nth_outside(range, x - below);
    }
  }
  if (auto failure = check_isomorphism_table(m, n, g, prefix)) throw IsomorphismCheckFailed(*failure);
  return g;
}

std::optional<Distinguisher> is_trivial_within(const StructureOracle& m, std::span<const Natural> f,
                                               Natural budget) {
  return find_distinguishing(m, f, budget);
}

}  // namespace effgraph::structure
