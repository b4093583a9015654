#include "effgraph/core/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace effgraph {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t hash_pair(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL));
}

namespace streams {

BitStream random(std::uint64_t seed) {
  return BitStream([seed](Natural n) { return (hash_pair(seed, n) >> 17) & 1U; });
}

BitStream periodic(const std::string& prefix, const std::string& cycle) {
  if (cycle.empty()) throw std::invalid_argument("periodic stream needs a non-empty cycle");
  for (char ch : prefix + cycle) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("periodic stream: bits must be '0' or '1'");
  }
  return BitStream([prefix, cycle](Natural n) {
    if (n < prefix.size()) return prefix[n] == '1';
    return cycle[(n - prefix.size()) % cycle.size()] == '1';
  });
}

BitStream squares() {
  return BitStream([](Natural n) {
    auto r = static_cast<Natural>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r * r == n;
  });
}

BitStream primes() {
  return BitStream([](Natural n) {
    if (n < 2) return false;
    for (Natural d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  });
}

}  // namespace streams

namespace orders {

LinearOrderOracle omega() {
  return LinearOrderOracle([](Natural m, Natural n) { return m <= n; });
}

LinearOrderOracle reverse_omega_blocks(Natural block) {
  if (block == 0) throw std::invalid_argument("block size must be positive");
  return LinearOrderOracle([block](Natural m, Natural n) {
    const Natural bm = m / block, bn = n / block;
    if (bm != bn) return bm < bn;
    return m >= n;
  });
}

LinearOrderOracle parity_then_magnitude() {
  return LinearOrderOracle([](Natural m, Natural n) {
    if (m % 2 != n % 2) return m % 2 == 0;
    return m <= n;
  });
}

LinearOrderOracle reverse_parity() {
  return LinearOrderOracle([](Natural m, Natural n) {
    if (m % 2 != n % 2) return m % 2 == 1;
    return m <= n;
  });
}

LinearOrderOracle zeta() {
  auto to_int = [](Natural n) -> std::int64_t {
    const auto k = static_cast<std::int64_t>(n / 2);
    return n % 2 == 0 ? k : -(k + 1);
  };
  return LinearOrderOracle([to_int](Natural m, Natural n) { return to_int(m) <= to_int(n); });
}

LinearOrderOracle block_shuffle(std::uint64_t seed, Natural block) {
  if (block == 0) throw std::invalid_argument("block size must be positive");
  // Rank of n inside its block under a seeded Fisher-Yates permutation.
  auto rank = [seed, block](Natural n) {
    const Natural b = n / block;
    std::vector<Natural> perm(block);
    std::iota(perm.begin(), perm.end(), Natural{0});
    for (Natural i = block; i > 1; --i) {
      const Natural j = hash_pair(hash_pair(seed, b), i) % i;
      std::swap(perm[i - 1], perm[j]);
    }
    return static_cast<Natural>(std::find(perm.begin(), perm.end(), n % block) - perm.begin());
  };
  return LinearOrderOracle([rank, block](Natural m, Natural n) {
    const Natural bm = m / block, bn = n / block;
    if (bm != bn) return bm < bn;
    return rank(m) <= rank(n);
  });
}

}  // namespace orders

namespace structures {

namespace {
Signature binary_edge() { return Signature({{"E", 2}}); }
Signature unary_p() { return Signature({{"P", 1}}); }
}  // namespace

StructureOracle path_graph() {
  return StructureOracle(binary_edge(), [](std::size_t, std::span<const Natural> a) {
    return a[0] + 1 == a[1] || a[1] + 1 == a[0];
  });
}

StructureOracle grid_graph() {
  return StructureOracle(binary_edge(), [](std::size_t, std::span<const Natural> a) {
    const auto [x0, y0] = CantorPairing::unpair(a[0]);
    const auto [x1, y1] = CantorPairing::unpair(a[1]);
    const Natural dx = x0 > x1 ? x0 - x1 : x1 - x0;
    const Natural dy = y0 > y1 ? y0 - y1 : y1 - y0;
    return dx + dy == 1;
  });
}

StructureOracle even_predicate() {
  return StructureOracle(unary_p(), [](std::size_t, std::span<const Natural> a) { return a[0] % 2 == 0; });
}

StructureOracle odd_predicate() {
  return StructureOracle(unary_p(), [](std::size_t, std::span<const Natural> a) { return a[0] % 2 == 1; });
}

StructureOracle empty_signature() {
  return StructureOracle(Signature{}, [](std::size_t, std::span<const Natural>) -> bool {
    throw std::logic_error("empty signature has no relations");
  });
}

StructureOracle random_relation(std::uint64_t seed) {
  return StructureOracle(Signature({{"R", 2}}), [seed](std::size_t, std::span<const Natural> a) {
    return (hash_pair(seed, CantorPairing::pair(a[0], a[1])) >> 23) & 1U;
  });
}

StructureOracle complete_graph() {
  return StructureOracle(binary_edge(), [](std::size_t, std::span<const Natural> a) { return a[0] != a[1]; });
}

StructureOracle marked_set(std::set<Natural> marked) {
  return StructureOracle(Signature({{"P", 1}, {"E", 2}}),
                         [marked = std::move(marked)](std::size_t r, std::span<const Natural> a) {
                           if (r == 0) return marked.count(a[0]) > 0;
                           return a[0] != a[1] && (marked.count(a[0]) > 0 || marked.count(a[1]) > 0);
                         });
}

}  // namespace structures

GeneratorDescriptor parse_descriptor(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("generator descriptor must be a JSON object");
  GeneratorDescriptor d;
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw std::invalid_argument("generator descriptor needs a string \"kind\"");
  }
  d.kind = j.at("kind").get<std::string>();
  if (j.contains("seed")) d.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("params")) d.params = j.at("params");
  // Structure descriptors may carry their signature at top level.
  if (j.contains("signature")) d.params["signature"] = j.at("signature");
  return d;
}

nlohmann::json to_json(const GeneratorDescriptor& d) {
  return nlohmann::json{{"kind", d.kind}, {"seed", d.seed}, {"params", d.params}};
}

namespace {

template <typename T>
T param_or(const GeneratorDescriptor& d, const char* key, T fallback) {
  if (d.params.contains(key)) return d.params.at(key).get<T>();
  return fallback;
}

}  // namespace

BitStream make_bit_stream(const GeneratorDescriptor& d) {
  if (d.kind == "constant") return BitStream::constant(param_or<int>(d, "value", 0) != 0);
  if (d.kind == "random") return streams::random(d.seed);
  if (d.kind == "periodic") {
    return streams::periodic(param_or<std::string>(d, "prefix", ""), param_or<std::string>(d, "cycle", "0"));
  }
  if (d.kind == "literal") {
    return BitStream::from_string(param_or<std::string>(d, "bits", ""), param_or<int>(d, "tail", 0) != 0);
  }
  if (d.kind == "squares") return streams::squares();
  if (d.kind == "primes") return streams::primes();
  throw std::invalid_argument("unknown bit-stream generator '" + d.kind + "'");
}

std::vector<std::string> order_kinds() {
  return {"omega", "reverse-blocks", "parity-magnitude", "reverse-parity", "zeta", "block-shuffle"};
}

LinearOrderOracle make_order(const GeneratorDescriptor& d) {
  if (d.kind == "omega") return orders::omega();
  if (d.kind == "reverse-blocks") return orders::reverse_omega_blocks(param_or<Natural>(d, "block", 3));
  if (d.kind == "parity-magnitude") return orders::parity_then_magnitude();
  if (d.kind == "reverse-parity") return orders::reverse_parity();
  if (d.kind == "zeta") return orders::zeta();
  if (d.kind == "block-shuffle") return orders::block_shuffle(d.seed, param_or<Natural>(d, "block", 5));
  throw std::invalid_argument("unknown order generator '" + d.kind + "'");
}

std::vector<std::string> structure_kinds() {
  return {"path-graph", "grid-graph", "even-predicate", "odd-predicate", "empty",
          "random-bits", "complete-graph", "marked-set"};
}

StructureOracle make_structure(const GeneratorDescriptor& d) {
  auto build = [&]() -> StructureOracle {
    if (d.kind == "path-graph") return structures::path_graph();
    if (d.kind == "grid-graph") return structures::grid_graph();
    if (d.kind == "even-predicate") return structures::even_predicate();
    if (d.kind == "odd-predicate") return structures::odd_predicate();
    if (d.kind == "empty") return structures::empty_signature();
    if (d.kind == "random-bits") return structures::random_relation(d.seed);
    if (d.kind == "complete-graph") return structures::complete_graph();
    if (d.kind == "marked-set") {
      std::set<Natural> marked;
      if (d.params.contains("marked")) {
        for (const auto& v : d.params.at("marked")) marked.insert(v.get<Natural>());
      } else {
        const Natural size = param_or<Natural>(d, "size", 3);
        for (Natural i = 0; marked.size() < size; ++i) marked.insert(hash_pair(d.seed, i) % (4 * size + 4));
      }
      return structures::marked_set(std::move(marked));
    }
    throw std::invalid_argument("unknown structure generator '" + d.kind + "'");
  };
  StructureOracle s = build();
  if (d.params.contains("signature")) {
    std::vector<RelationSymbol> rels;
    for (const auto& r : d.params.at("signature")) {
      rels.push_back({r.at("name").get<std::string>(), r.at("arity").get<std::size_t>()});
    }
    if (!(Signature(std::move(rels)) == s.signature())) {
      throw std::invalid_argument("declared signature does not match generator '" + d.kind + "'");
    }
  }
  return s;
}

}  // namespace effgraph
