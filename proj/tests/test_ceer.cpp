#include <doctest.h>

#include <numeric>
#include <random>

#include "effgraph/ceer/ceer.hpp"

using namespace effgraph;
using namespace effgraph::ceer;

namespace {

struct UnionFind {
  std::map<Natural, Natural> parent;
  Natural find(Natural a) {
    auto it = parent.find(a);
    if (it == parent.end() || it->second == a) return a;
    return parent[a] = find(it->second);
  }
  void unite(Natural a, Natural b) { parent[find(a)] = find(b); }
};

// The witness-graph components computed independently of adjacent().
bool connected_by_brute_force(const CeerEnumeration& e, Natural x, Natural y) {
  const Natural hi = std::max(x, y);
  UnionFind uf;
  for (Natural u = 0; u < hi; ++u) {
    for (Natural n = 0; n <= hi; ++n) uf.unite(u, e.enumerate(u, n));
  }
  return uf.find(x) == uf.find(y);
}

// Column classes of a merge schedule after all events.
Natural final_column_class(const std::vector<MergeEvent>& schedule, Natural column) {
  UnionFind uf;
  for (const auto& ev : schedule) uf.unite(ev.column_a, ev.column_b);
  return uf.find(column);
}

}  // namespace

TEST_CASE("mod-k columns") {
  CHECK(mod_k_ceer(2).column(0, 4) == std::vector<Natural>{0, 2, 4, 6});
  CHECK(mod_k_ceer(1).column(5, 3) == std::vector<Natural>{5, 6, 7});
  CHECK_FALSE(find_duplicate(mod_k_ceer(3), 50, 50));
  CHECK_THROWS(mod_k_ceer(0));
}

TEST_CASE("adjacency on the mod-2 ceer") {
  const auto e = mod_k_ceer(2);
  const Adjacency a = adjacent(e, 0, 2);
  CHECK(a.adjacent);
  REQUIRE(a.certificate);
  CHECK(replay(e, *a.certificate));
  CHECK(a.graph.edges.at({0, 2}) == Provenance{0, 1});
  CHECK(a.graph.bound == 2);

  const Adjacency b = adjacent(e, 0, 1);
  CHECK_FALSE(b.adjacent);
  CHECK_FALSE(b.certificate);
  CHECK_THROWS_AS(adjacent(e, 3, 3), PreconditionViolation);
}

TEST_CASE("adjacency agrees with a brute-force component search and is symmetric") {
  const std::vector<CeerEnumeration> ceers{mod_k_ceer(1), mod_k_ceer(3),
                                           merge_schedule_ceer({{1, 0, 2}, {4, 1, 3}})};
  for (const auto& e : ceers) {
    for (Natural x = 0; x < 25; ++x) {
      for (Natural y = 0; y < 25; ++y) {
        if (x == y) continue;
        const Adjacency a = adjacent(e, x, y);
        REQUIRE(a.adjacent == connected_by_brute_force(e, x, y));
        REQUIRE(a.adjacent == adjacent(e, y, x).adjacent);
        if (a.adjacent) REQUIRE(replay(e, *a.certificate));
      }
    }
  }
}

TEST_CASE("connect traces") {
  const auto e = mod_k_ceer(2);
  const Connection c = connect(e, 0, 4, 100);
  CHECK(c.found_at == 2);
  CHECK(c.bound == 5);
  CHECK(c.z == 6);
  CHECK(adjacent(e, 0, 6).adjacent);
  CHECK(adjacent(e, 4, 6).adjacent);
  CHECK_FALSE(c.searched_from_y);

  CHECK_THROWS_AS(connect(e, 0, 1, 100), BudgetExhausted);
  CHECK_THROWS_AS(connect(e, 2, 2, 100), PreconditionViolation);

  // Column 6 never lists 2, so the search falls back to column 2.
  const Connection back = connect(e, 6, 2, 100);
  CHECK(back.searched_from_y);
  CHECK(adjacent(e, 6, back.z).adjacent);
  CHECK(adjacent(e, 2, back.z).adjacent);
}

TEST_CASE("connect is total on equivalent pairs and fails on inequivalent ones") {
  for (Natural k = 1; k <= 4; ++k) {
    const auto e = mod_k_ceer(k);
    for (Natural x = 0; x < 40; ++x) {
      for (Natural y = 0; y < 40; ++y) {
        if (x == y) continue;
        if (x % k == y % k) {
          const Connection c = connect(e, x, y, 1000);
          REQUIRE(c.x_side.adjacent);
          REQUIRE(c.y_side.adjacent);
        } else {
          REQUIRE_THROWS_AS(connect(e, x, y, 1000), BudgetExhausted);
          REQUIRE_FALSE(adjacent(e, x, y).adjacent);
        }
      }
    }
  }
}

TEST_CASE("certificates") {
  const auto e = mod_k_ceer(2);
  const auto w = witness_equivalent(e, 0, 4, 10);
  REQUIRE(w);
  CHECK(w->chain == std::vector<Provenance>{{0, 2}});
  CHECK(replay(e, *w));
  CHECK_FALSE(witness_equivalent(e, 0, 1, 10000));
  const auto self = witness_equivalent(e, 7, 7, 1);
  REQUIRE(self);
  CHECK(self->chain == std::vector<Provenance>{{7, 0}});

  // 4 -> 0 -> 6 by walking column 0 backwards then forwards.
  const EquivalenceCertificate to_zero{4, 0, {{0, 2}}};
  const EquivalenceCertificate to_six{0, 6, {{0, 3}}};
  CHECK(replay(e, to_zero));
  const auto composed = compose(to_zero, to_six);
  CHECK(composed.x == 4);
  CHECK(composed.y == 6);
  CHECK(replay(e, composed));
  CHECK_FALSE(replay(e, EquivalenceCertificate{4, 6, {{0, 3}}}));
  CHECK_THROWS_AS(compose(to_six, to_six), PreconditionViolation);
}

TEST_CASE("merge-schedule ceers") {
  const auto plain = merge_schedule_ceer({});
  // Empty schedule: column pair(0,0) = 0 lists pair(0, t) in order.
  CHECK(plain.column(0, 4) ==
        std::vector<Natural>{CantorPairing::pair(0, 0), CantorPairing::pair(0, 1), CantorPairing::pair(0, 2),
                             CantorPairing::pair(0, 3)});

  const auto merged = merge_schedule_ceer({{3, 0, 1}});
  const Natural a = CantorPairing::pair(0, 0);
  const Natural b = CantorPairing::pair(1, 0);
  CHECK(witness_equivalent(merged, a, b, 1000));
  CHECK_FALSE(witness_equivalent(plain, a, b, 1000));
  CHECK_FALSE(find_duplicate(merged, 30, 100));
  CHECK_THROWS_AS(merge_schedule_ceer({{5, 0, 1}, {2, 1, 2}}), std::invalid_argument);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto schedule = random_merge_schedule(seed);
    const auto e = merge_schedule_ceer(schedule);
    CHECK_FALSE(find_duplicate(e, 30, 100));
    for (Natural x = 0; x < 30; ++x) {
      REQUIRE(e.enumerate(x, 0) == x);
      for (Natural v : e.column(x, 60)) {
        REQUIRE(final_column_class(schedule, CantorPairing::unpair(v).first) ==
                final_column_class(schedule, CantorPairing::unpair(x).first));
      }
    }
  }
}

TEST_CASE("diameter two on sampled pairs of merge-schedule ceers") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto e = merge_schedule_ceer(random_merge_schedule(seed));
    const auto pairs = sample_certified_pairs(e, 60, 1000, 30, seed);
    REQUIRE_FALSE(pairs.empty());
    for (const auto& [x, y] : pairs) {
      const Connection c = connect(e, x, y, 1000);
      REQUIRE(c.x_side.adjacent);
      REQUIRE(c.y_side.adjacent);
    }
  }
}

TEST_CASE("descriptors and DOT export") {
  const auto e = make_ceer({"mod-k", 0, nlohmann::json{{"k", 2}}});
  CHECK(e.enumerate(1, 3) == 7);
  const auto m = make_ceer({"merge-schedule", 0, nlohmann::json{{"schedule", {{3, 0, 1}}}}});
  CHECK(witness_equivalent(m, 0, 1, 1000));
  CHECK_THROWS_AS(make_ceer({"nope", 0, {}}), std::invalid_argument);

  const std::string dot = to_dot(adjacent(mod_k_ceer(2), 0, 2).graph, 0, 2);
  CHECK(dot.find("graph witness {") == 0);
  CHECK(dot.find("0 -- 2 [label=\"f(0,1)\"]") != std::string::npos);
}
