#ifndef EFFGRAPH_LO_LINEAR_ORDER_CODING_HPP
#define EFFGRAPH_LO_LINEAR_ORDER_CODING_HPP

// Coding a bit stream into an isomorphic copy of a linear order on N.
//
// Bit n of c = a (+) code(L1) is written into the relative order of 2n and
// 2n + 1: the copy L2 is the pullback of L1 along an involution that keeps
// or swaps each pair {2n, 2n + 1}. Reading the pairs of L2 back gives c,
// whose odd part is the code of L1, and comparing L1 with L2 pair by pair
// gives the isomorphism.

#include <utility>

#include "effgraph/core/oracles.hpp"

namespace effgraph::lo {

// Keeps or swaps each pair {2n, 2n + 1}; an involution of N.
class SwapIsomorphism {
 public:
  SwapIsomorphism(BitStream payload, LinearOrderOracle base);

  Natural apply(Natural n) const;
  Natural operator()(Natural n) const { return apply(n); }
  bool swaps_pair(Natural n) const;

 private:
  BitStream payload_;
  LinearOrderOracle base_;
};

// (c(n) = 0 and 2n <_L 2n+1) or (c(n) = 1 and 2n+1 <_L 2n).
bool agrees_at(const BitStream& c, const LinearOrderOracle& order, Natural n);

struct EncodedOrder {
  LinearOrderOracle order;  // L2, with n <=_2 m iff f(n) <=_1 f(m)
  SwapIsomorphism iso;      // f: an isomorphism from L2 onto L1
  BitStream payload;        // c = a (+) order_code(L1)
};

EncodedOrder encode_order(const LinearOrderOracle& base, const BitStream& a);

// 0 iff 2n <_2 2n + 1.
bool decode_payload(const LinearOrderOracle& coded, Natural n);
BitStream decode_payload_stream(const LinearOrderOracle& coded);

// Order decoded from the odd part of the payload. Meaningful only when
// `coded` came from encode_order.
LinearOrderOracle recover_base_order(const LinearOrderOracle& coded);

// (f(2n), f(2n + 1)).
std::pair<Natural, Natural> recover_isomorphism(const LinearOrderOracle& base, const LinearOrderOracle& coded,
                                                Natural n);

}  // namespace effgraph::lo

#endif  // EFFGRAPH_LO_LINEAR_ORDER_CODING_HPP
