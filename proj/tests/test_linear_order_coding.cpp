#include <doctest.h>

#include "effgraph/core/generators.hpp"
#include "effgraph/lo/linear_order_coding.hpp"

using namespace effgraph;
using namespace effgraph::lo;

namespace {

// c(n) computed from the definitions, without join or order_code.
bool payload_bit(const BitStream& a, const LinearOrderOracle& l1, Natural n) {
  if (n % 2 == 0) return a(n / 2);
  const auto [m, k] = CantorPairing::unpair(n / 2);
  return l1.leq(m, k);
}

// f as an explicit table over [0, 2 * pairs).
std::vector<Natural> swap_table(const BitStream& a, const LinearOrderOracle& l1, Natural pairs) {
  std::vector<Natural> f(2 * pairs);
  for (Natural n = 0; n < pairs; ++n) {
    const bool smaller_first = l1.less(2 * n, 2 * n + 1);
    const bool keep = payload_bit(a, l1, n) ? !smaller_first : smaller_first;
    f[2 * n] = keep ? 2 * n : 2 * n + 1;
    f[2 * n + 1] = keep ? 2 * n + 1 : 2 * n;
  }
  return f;
}

std::vector<LinearOrderOracle> sample_orders() {
  return {orders::omega(), orders::parity_then_magnitude(), orders::reverse_parity(), orders::zeta(),
          orders::reverse_omega_blocks(4), orders::block_shuffle(3, 6)};
}

}  // namespace

TEST_CASE("agreement") {
  const auto omega = orders::omega();
  CHECK(agrees_at(BitStream::constant(false), omega, 17));
  CHECK_FALSE(agrees_at(BitStream::constant(true), omega, 0));
  CHECK_FALSE(agrees_at(BitStream::from_string("01"), omega, 1));
}

TEST_CASE("a traced encoding of the standard order") {
  const auto omega = orders::omega();
  const EncodedOrder enc = encode_order(omega, BitStream::constant(false));
  CHECK(enc.iso(0) == 0);
  CHECK(enc.iso(1) == 1);
  CHECK(enc.iso(2) == 3);
  CHECK(enc.iso(3) == 2);
  CHECK_FALSE(enc.order.leq(2, 3));
  CHECK(decode_payload(enc.order, 1));
  CHECK(recover_isomorphism(omega, enc.order, 0) == std::pair<Natural, Natural>{0, 1});
  CHECK(recover_isomorphism(omega, enc.order, 1) == std::pair<Natural, Natural>{3, 2});
  CHECK(recover_base_order(enc.order).leq(0, 1));
}

TEST_CASE("the standard order decodes to zeros") {
  CHECK(to_bit_string(decode_payload_stream(orders::omega()), 32) == std::string(32, '0'));
}

TEST_CASE("encoding matches a table built from the definitions") {
  std::uint64_t seed = 0;
  for (const auto& l1 : sample_orders()) {
    const BitStream a = streams::random(++seed);
    const EncodedOrder enc = encode_order(l1, a);
    const auto f = swap_table(a, l1, 100);
    for (Natural n = 0; n < 200; ++n) {
      REQUIRE(enc.iso(n) == f[n]);
      REQUIRE(enc.iso(enc.iso(n)) == n);
    }
    for (Natural m = 0; m < 200; ++m) {
      for (Natural n = 0; n < 200; ++n) REQUIRE(enc.order.leq(m, n) == l1.leq(f[m], f[n]));
    }
    for (Natural n = 0; n < 128; ++n) {
      REQUIRE(decode_payload(enc.order, n) == payload_bit(a, l1, n));
      REQUIRE(enc.payload(n) == payload_bit(a, l1, n));
    }
  }
}

TEST_CASE("round trips over seeded orders and payloads") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto l1 = orders::block_shuffle(seed, 2 + seed % 7);
    const BitStream a = streams::random(1000 + seed);
    const EncodedOrder enc = encode_order(l1, a);

    CHECK(check_linear_order(enc.order, 30).empty());
    const auto back = recover_base_order(enc.order);
    for (Natural m = 0; m < 100; ++m) {
      for (Natural n = 0; n < 100; ++n) REQUIRE(back.leq(m, n) == l1.leq(m, n));
    }
    const BitStream c = decode_payload_stream(enc.order);
    for (Natural k = 0; k < 64; ++k) REQUIRE(even_part(c)(k) == a(k));
    for (Natural n = 0; n < 100; ++n) {
      REQUIRE(recover_isomorphism(l1, enc.order, n) == std::pair{enc.iso(2 * n), enc.iso(2 * n + 1)});
    }
  }
}
