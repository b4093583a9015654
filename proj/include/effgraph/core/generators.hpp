#ifndef EFFGRAPH_CORE_GENERATORS_HPP
#define EFFGRAPH_CORE_GENERATORS_HPP

// Named, seeded generator families. Every experiment is reproducible from
// a (kind, seed, params) descriptor.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "effgraph/core/oracles.hpp"

namespace effgraph {

struct GeneratorDescriptor {
  std::string kind;
  std::uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

// Stateless 64-bit mixer (splitmix64 finaliser). Random-access streams are
// built from it so that concurrent queries need no shared state.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t hash_pair(std::uint64_t seed, std::uint64_t index);

namespace streams {
BitStream random(std::uint64_t seed);
BitStream periodic(const std::string& prefix, const std::string& cycle);
BitStream squares();  // 1 exactly at perfect squares
BitStream primes();   // 1 exactly at primes
}  // namespace streams

namespace orders {
LinearOrderOracle omega();
LinearOrderOracle reverse_omega_blocks(Natural block);  // each block of `block` consecutive naturals reversed
LinearOrderOracle parity_then_magnitude();               // evens (ascending) before odds (ascending)
LinearOrderOracle reverse_parity();                      // odds (ascending) before evens (ascending)
LinearOrderOracle zeta();                                // 2k -> k, 2k+1 -> -(k+1), compared as integers
LinearOrderOracle block_shuffle(std::uint64_t seed, Natural block);
}  // namespace orders

namespace structures {
StructureOracle path_graph();                  // E(m, n) iff |m - n| = 1
StructureOracle grid_graph();                  // points unpair(n); E iff grid neighbours
StructureOracle even_predicate();              // P(n) iff n even
StructureOracle odd_predicate();               // P(n) iff n odd
StructureOracle empty_signature();
StructureOracle random_relation(std::uint64_t seed);  // R(m, n) from a seeded hash
StructureOracle complete_graph();              // E(m, n) iff m != n
// Trivial: P marks `marked`; E(m, n) iff m != n and one endpoint is marked.
StructureOracle marked_set(std::set<Natural> marked);
}  // namespace structures

GeneratorDescriptor parse_descriptor(const nlohmann::json& j);
nlohmann::json to_json(const GeneratorDescriptor& d);

// Throw std::invalid_argument on an unknown kind or bad params.
BitStream make_bit_stream(const GeneratorDescriptor& d);
LinearOrderOracle make_order(const GeneratorDescriptor& d);
StructureOracle make_structure(const GeneratorDescriptor& d);

std::vector<std::string> order_kinds();
std::vector<std::string> structure_kinds();

}  // namespace effgraph

#endif  // EFFGRAPH_CORE_GENERATORS_HPP
