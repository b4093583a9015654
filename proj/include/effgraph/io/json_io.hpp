#ifndef EFFGRAPH_IO_JSON_IO_HPP
#define EFFGRAPH_IO_JSON_IO_HPP

// JSON forms of the finite artifacts. Parsers throw std::invalid_argument on
// malformed input.

#include <string>
#include <vector>

#include <json.hpp>

#include "effgraph/ceer/ceer.hpp"
#include "effgraph/core/oracles.hpp"
#include "effgraph/ks/kumabe_slaman.hpp"
#include "effgraph/structure/structure_coding.hpp"

namespace effgraph::io {

using nlohmann::json;

std::string bits_to_string(const std::vector<bool>& bits);
std::vector<bool> bits_from_string(const std::string& text);

json signature_to_json(const Signature& sig);
Signature signature_from_json(const json& j);

// {"signature": [...], "bound": n, "relations": {"R": "0110..."}}, tuples lexicographic.
json table_to_json(const StructureTable& table);
StructureTable structure_table_from_json(const json& j);

// Rows of '0'/'1': row m, column n is leq(m, n).
json table_to_json(const OrderTable& table);
OrderTable order_table_from_json(const json& j);

// Export is sparse ("bot_fill": true, only 0/1 labels listed). Import accepts
// either a full labelling or a sparse one flagged with "bot_fill". Paths
// without a generator descriptor are exported as a 64-bit literal prefix.
json condition_to_json(const ks::KsCondition& c);
ks::KsCondition condition_from_json(const json& j);

json certificate_to_json(const ceer::EquivalenceCertificate& c);
json graph_to_json(const ceer::FiniteWitnessGraph& g);
json adjacency_to_json(const ceer::Adjacency& a);

json distinguisher_to_json(const structure::Distinguisher& d, const Signature& sig);
json certificate_to_json(const structure::EncodingCertificate& c);

}  // namespace effgraph::io

#endif  // EFFGRAPH_IO_JSON_IO_HPP
