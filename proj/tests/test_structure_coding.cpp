#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "effgraph/core/generators.hpp"
#include "effgraph/structure/structure_coding.hpp"

using namespace effgraph;
using namespace effgraph::structure;

namespace {

std::vector<bool> bits(std::initializer_list<int> xs) {
  std::vector<bool> out;
  for (int x : xs) out.push_back(x != 0);
  return out;
}

struct Reference {
  std::vector<Natural> placed;
  std::vector<bool> queue;
};

// The stage loop written out directly: the queue is rebuilt from scratch
// each stage by interleaving payload bits with the framed records so far.
Reference reference_encoding(const StructureOracle& m, const BitStream& payload, std::size_t stages) {
  Reference ref;
  std::vector<bool> records;
  for (std::size_t s = 0; s < stages; ++s) {
    const auto d = find_distinguishing(m, ref.placed, 100000);
    REQUIRE(d);
    const bool bit = s % 2 == 0 ? payload(s / 2) : records.at(s / 2);
    ref.queue.push_back(bit);
    const std::size_t start = ref.placed.size();
    for (Natural e : bit ? d->refuted : d->satisfied) ref.placed.push_back(e);
    Natural least = 0;
    while (std::find(ref.placed.begin(), ref.placed.end(), least) != ref.placed.end()) ++least;
    ref.placed.push_back(least);

    records.push_back(bit);
    const Natural count = ref.placed.size() - start;
    std::vector<Natural> fields{count};
    fields.insert(fields.end(), ref.placed.begin() + static_cast<std::ptrdiff_t>(start), ref.placed.end());
    for (Natural v : fields) {
      std::string binary;
      for (Natural x = v; x > 0; x /= 2) binary.insert(binary.begin(), x % 2 ? '1' : '0');
      for (std::size_t i = 0; i < binary.size(); ++i) records.push_back(true);
      records.push_back(false);
      for (char c : binary) records.push_back(c == '1');
    }
  }
  return ref;
}

}  // namespace

TEST_CASE("framing") {
  CHECK(frame_natural(0) == bits({0}));
  CHECK(frame_natural(1) == bits({1, 0, 1}));
  CHECK(frame_natural(5) == bits({1, 1, 1, 0, 1, 0, 1}));
  const std::vector<Natural> three{3};
  CHECK(placement_record(true, three) == bits({1, 1, 0, 1, 1, 1, 0, 1, 1}));

  std::mt19937_64 rng(3);
  std::vector<ParsedRecord> expected;
  std::vector<bool> stream;
  for (int r = 0; r < 50; ++r) {
    ParsedRecord rec{rng() % 2 == 1, {}};
    for (auto n = rng() % 5; n > 0; --n) rec.elements.push_back(rng() % 1000);
    const auto framed = placement_record(rec.bit, rec.elements);
    stream.insert(stream.end(), framed.begin(), framed.end());
    expected.push_back(std::move(rec));
  }
  const auto parsed = parse_records(stream);
  REQUIRE(parsed.size() == expected.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].bit == expected[i].bit);
    CHECK(parsed[i].elements == expected[i].elements);
  }
  stream.pop_back();
  CHECK(parse_records(stream).size() == expected.size() - 1);
}

TEST_CASE("first stages on the path graph") {
  const auto m = structures::path_graph();
  const auto enc = encode_structure(m, streams::periodic("", "10"), 1, 10000);
  REQUIRE(enc.placement.log.size() == 1);
  const StageRecord& first = enc.placement.log[0];
  CHECK(first.distinguisher.formula.to_string(m.signature()) == "E(y1,y2)");
  CHECK(first.distinguisher.satisfied == std::vector<Natural>{0, 1});
  CHECK(first.distinguisher.refuted == std::vector<Natural>{0, 2});
  CHECK(first.bit);
  CHECK(first.filler == 1);
  CHECK(enc.placement.placed == std::vector<Natural>{0, 2, 1});
  // Position 0 holds 0 and position 2 holds 1: adjacent in M.
  const std::vector<Natural> edge{0, 2};
  CHECK(enc.coded.holds("E", edge));
}

TEST_CASE("the encoder agrees with the written-out stage loop") {
  const std::vector<StructureOracle> ms{structures::path_graph(), structures::even_predicate(),
                                        structures::random_relation(4), structures::grid_graph()};
  std::uint64_t seed = 0;
  for (const auto& m : ms) {
    const BitStream payload = streams::random(++seed);
    const auto enc = encode_structure(m, payload, 12, 100000);
    const auto ref = reference_encoding(m, payload, 12);
    CHECK(enc.placement.placed == ref.placed);
    CHECK(enc.queue == ref.queue);
    for (std::size_t i = 0; i < enc.payload_bits.size(); ++i) CHECK(enc.payload_bits[i] == payload(i));
  }
}

TEST_CASE("placement invariants and isomorphism on the placed prefix") {
  const auto m = structures::random_relation(9);
  const auto enc = encode_structure(m, streams::random(2), 20, 100000);
  const auto& placed = enc.placement.placed;
  CHECK(std::set<Natural>(placed.begin(), placed.end()).size() == placed.size());
  for (Natural k = 0; k < 20; ++k) CHECK(std::find(placed.begin(), placed.end(), k) != placed.end());
  CHECK_FALSE(check_isomorphism_table(enc.coded, m, placed, placed.size()));
  // Beyond the placement N continues with the rest of M in increasing order.
  std::vector<Natural> g;
  for (Natural p = 0; p < placed.size() + 30; ++p) {
    if (p < placed.size()) {
      g.push_back(placed[p]);
      continue;
    }
    Natural v = 0;
    for (std::size_t seen = 0;; ++v) {
      if (std::find(placed.begin(), placed.end(), v) != placed.end()) continue;
      if (seen++ == p - placed.size()) break;
    }
    g.push_back(v);
  }
  CHECK_FALSE(check_isomorphism_table(enc.coded, m, g, g.size()));
}

TEST_CASE("decoding") {
  const auto m = structures::path_graph();
  const auto enc = encode_structure(m, streams::periodic("", "10"), 8, 10000);
  const Natural bound = enc.certificate.max_bound();
  const auto dec = decode_structure(enc.coded, 8, bound);
  CHECK(dec.queue == enc.queue);
  CHECK(dec.payload_bits == bits({1, 0, 1, 0}));
  REQUIRE(dec.placement_prefix.size() == enc.recoverable_positions);
  for (std::size_t p = 0; p < dec.placement_prefix.size(); ++p) CHECK(dec.placement_prefix[p] == enc.placement.placed[p]);
  for (const auto& stage : dec.log) CHECK(replay(enc.coded, stage));

  // The decoder reads nothing past table_bound.
  const auto table = structure_from_table(materialize_prefix(enc.coded, enc.certificate.table_bound));
  const auto from_table = decode_structure(table, 8, bound);
  CHECK(from_table.queue == enc.queue);

  CHECK_THROWS_AS(decode_structure(enc.coded, 8, 1), BudgetExhausted);
  const auto empty = decode_structure(enc.coded, 0, 1);
  CHECK(empty.queue.empty());
  CHECK(empty.placement_prefix.empty());
}

TEST_CASE("round trips over seeded instances") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = seed % 2 == 0 ? structures::random_relation(seed) : structures::even_predicate();
    const auto enc = encode_structure(m, streams::random(100 + seed), 16, 100000);
    const auto dec = decode_structure(enc.coded, 16, enc.certificate.max_bound());
    REQUIRE(dec.queue == enc.queue);
    REQUIRE(dec.payload_bits == enc.payload_bits);
    REQUIRE(std::equal(dec.placement_prefix.begin(), dec.placement_prefix.end(), enc.placement.placed.begin()));
  }
}

TEST_CASE("zero stages and trivial structures") {
  const auto enc = encode_structure(structures::path_graph(), BitStream::constant(false), 0, 10);
  CHECK(enc.placement.placed.empty());
  CHECK(enc.queue.empty());
  CHECK(enc.certificate.max_bound() == 0);

  try {
    encode_structure(structures::empty_signature(), BitStream::constant(false), 3, 1000);
    FAIL("expected TrivialityDetected");
  } catch (const TrivialityDetected& e) {
    CHECK(e.stage() == 0);
  }
  CHECK_THROWS_AS(encode_structure(structures::complete_graph(), BitStream::constant(false), 1, 1000),
                  BudgetExhausted);

  // A finite marked set becomes trivial once every marked element is placed.
  try {
    encode_structure(structures::marked_set({1, 4, 9}), BitStream::constant(false), 20, 1000);
    FAIL("expected TrivialityDetected");
  } catch (const TrivialityDetected& e) {
    CHECK(e.stage() > 0);
  }
}

TEST_CASE("triviality witnesses") {
  CHECK_FALSE(is_trivial_within(structures::empty_signature(), {}, 1000));
  const std::vector<Natural> f{0, 3};
  CHECK_FALSE(is_trivial_within(structures::complete_graph(), f, 1000));
  const auto path = is_trivial_within(structures::path_graph(), {}, 1000);
  REQUIRE(path);
  CHECK(path->satisfied == std::vector<Natural>{0, 1});
  const auto even = is_trivial_within(structures::even_predicate(), {}, 10);
  REQUIRE(even);
  CHECK(even->satisfied == std::vector<Natural>{0});
  CHECK(even->refuted == std::vector<Natural>{1});
}

TEST_CASE("extending maps on trivial structures") {
  const auto empty = structures::empty_signature();
  const auto id = trivial_extend_iso(empty, empty, {}, 10);
  std::vector<Natural> expected(10);
  std::iota(expected.begin(), expected.end(), Natural{0});
  CHECK(id == expected);

  const auto even = structures::even_predicate();
  CHECK_NOTHROW(trivial_extend_iso(even, even, {{0, 0}, {1, 1}}, 30));

  try {
    trivial_extend_iso(even, structures::odd_predicate(), {}, 30);
    FAIL("expected IsomorphismCheckFailed");
  } catch (const IsomorphismCheckFailed& e) {
    CHECK(e.witness().relation == "P");
    CHECK(e.witness().args == std::vector<Natural>{0});
  }

  // Any bijection agreeing with f on F is an isomorphism of trivial structures.
  const auto complete = structures::complete_graph();
  std::mt19937_64 rng(17);
  for (int instance = 0; instance < 5; ++instance) {
    std::map<Natural, Natural> f_on_f{{rng() % 20, rng() % 20}};
    CHECK_NOTHROW(trivial_extend_iso(complete, complete, f_on_f, 20));
    for (int sample = 0; sample < 10; ++sample) {
      std::vector<Natural> g(20);
      std::iota(g.begin(), g.end(), Natural{0});
      std::shuffle(g.begin(), g.end(), rng);
      const auto [from, to] = *f_on_f.begin();
      std::swap(g[from], *std::find(g.begin(), g.end(), to));
      REQUIRE(g[from] == to);
      CHECK_FALSE(check_isomorphism_table(complete, complete, g, 20));
    }
  }
}
