#include "effgraph/lo/linear_order_coding.hpp"

namespace effgraph::lo {

bool agrees_at(const BitStream& c, const LinearOrderOracle& order, Natural n) {
  const bool even_first = order.less(2 * n, 2 * n + 1);
  return c(n) ? !even_first : even_first;
}

SwapIsomorphism::SwapIsomorphism(BitStream payload, LinearOrderOracle base)
    : payload_(std::move(payload)), base_(std::move(base)) {}

bool SwapIsomorphism::swaps_pair(Natural n) const { return !agrees_at(payload_, base_, n); }

Natural SwapIsomorphism::apply(Natural n) const { return swaps_pair(n / 2) ? (n ^ 1U) : n; }

EncodedOrder encode_order(const LinearOrderOracle& base, const BitStream& a) {
  BitStream c = join(a, order_code(base));
  SwapIsomorphism f(c, base);
  LinearOrderOracle coded([f, base](Natural n, Natural m) { return base.leq(f(n), f(m)); });
  return EncodedOrder{std::move(coded), std::move(f), std::move(c)};
}

bool decode_payload(const LinearOrderOracle& coded, Natural n) { return !coded.less(2 * n, 2 * n + 1); }

BitStream decode_payload_stream(const LinearOrderOracle& coded) {
  return BitStream([coded](Natural n) { return decode_payload(coded, n); });
}

LinearOrderOracle recover_base_order(const LinearOrderOracle& coded) {
  return decode_order(odd_part(decode_payload_stream(coded)));
}

std::pair<Natural, Natural> recover_isomorphism(const LinearOrderOracle& base, const LinearOrderOracle& coded,
                                                Natural n) {
  const bool same = base.less(2 * n, 2 * n + 1) == coded.less(2 * n, 2 * n + 1);
  return same ? std::pair{2 * n, 2 * n + 1} : std::pair{2 * n + 1, 2 * n};
}

}  // namespace effgraph::lo
