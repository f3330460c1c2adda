#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "mpcctrl/threeparty.hpp"
#include "support.hpp"

using namespace mpcctrl;
using mpcctrl::test::QueueRandomness;

namespace {
const ModRing kRing1000{1000, 10};
const ModRing kRing11{11, 10};
const ModRing kRingBig{1'000'000'000'000ull, 10};

Sharing make_sharing(std::vector<std::uint64_t> values, std::uint32_t scale = 0) {
  Sharing s;
  for (auto v : values) s.components.push_back({v, scale});
  return s;
}
}  // namespace

TEST_CASE("party 2 computes the worked two-factor expansion") {
  // With factor components v1 = (a,b,c) and v2 = (d,e,f), the component
  // produced at party index 2 must be a*d + a*e + b*d.
  const Sharing v1 = make_sharing({2, 3, 5});
  const Sharing v2 = make_sharing({7, 4, 9});
  const ScaledResidue z2 = three_party_round(
      view_for(v1, 2).component(0), view_for(v1, 2).component(1), view_for(v2, 2), 2,
      kRing1000);
  CHECK(z2.value == (2 * 7 + 2 * 4 + 3 * 7) % 1000);

  // And the three party outputs together cover the full product.
  std::uint64_t sum = 0;
  for (std::uint32_t j = 0; j < 3; ++j) {
    const ShareView view1 = view_for(v1, j);
    const ScaledResidue zj =
        three_party_round(view1.component(cyclic_succ(j, 3)),
                          view1.component(cyclic_pred(j, 3)), view_for(v2, j), j, kRing1000);
    sum = add_mod(sum, zj.value, 1000);
  }
  CHECK(sum == (2 + 3 + 5) * (7 + 4 + 9) % 1000);
}

TEST_CASE("two-factor product needs no hand-off rounds") {
  QueueRandomness rng{{7, 11, 3, 14}};  // two draws per factor sharing
  const std::array<ScaledResidue, 2> factors{{{2, 0}, {3, 0}}};
  ThreePartyServer server(0, 2, kRing1000);
  CHECK(server.rounds() == 0);
  CHECK(three_party_product(factors, kRing1000, rng).value == 6);
}

TEST_CASE("three-factor product collects 2*3*4") {
  SeededRandomness rng(99);
  const std::array<ScaledResidue, 3> factors{{{2, 0}, {3, 0}, {4, 0}}};
  CHECK(three_party_product(factors, kRing1000, rng).value == 24);
}

TEST_CASE("result share scale is the factor scale sum") {
  SeededRandomness rng(12);
  const std::array<ScaledResidue, 3> factors{{{170, 2}, {200, 2}, {50, 1}}};
  const ScaledResidue z = three_party_product(factors, kRingBig, rng);
  CHECK(z.scale == 5);
  CHECK(z.value == mpcctrl::test::oracle_product_mod(factors, kRingBig.modulus));
}

TEST_CASE("a zero factor annihilates the product") {
  SeededRandomness rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ScaledResidue> factors(2 + rng.uniform(3), ScaledResidue{0, 0});
    for (auto& f : factors) f.value = rng.uniform(kRingBig.modulus);
    factors[rng.uniform(factors.size())].value = 0;
    CHECK(three_party_product(factors, kRingBig, rng).value == 0);
  }
}

TEST_CASE("products match the arbitrary-precision oracle exactly") {
  for (const auto& ring : {kRing11, kRingBig}) {
    SeededRandomness rng(42 + ring.modulus % 97);
    for (std::uint32_t n = 2; n <= 4; ++n) {
      for (int trial = 0; trial < 300; ++trial) {
        std::vector<ScaledResidue> factors(n);
        for (auto& f : factors) f = {rng.uniform(ring.modulus), 0};
        const auto mode = trial % 2 == 0 ? ZeroSharingMode::communication
                                         : ZeroSharingMode::correlated_randomness;
        CHECK(three_party_product(factors, ring, rng, mode).value ==
              mpcctrl::test::oracle_product_mod(factors, ring.modulus));
      }
    }
  }
}

TEST_CASE("fixed-seed regression: shares recompute from the logged seed") {
  // The distributor's sharing of each factor must follow the documented
  // generator: n-1 uniform draws, last component balances the sum.
  const std::uint64_t seed = 2024;
  const ModRing ring = kRingBig;
  SeededRandomness rng(seed);
  const ScaledResidue secret{123'456'789, 2};
  const Sharing sharing = share(secret, 3, ring, rng);

  SeededRandomness replay(seed);
  const std::uint64_t s0 = replay.uniform(ring.modulus);
  const std::uint64_t s1 = replay.uniform(ring.modulus);
  CHECK(sharing.components[0].value == s0);
  CHECK(sharing.components[1].value == s1);
  CHECK(sharing.components[2].value ==
        sub_mod(secret.value, add_mod(s0, s1, ring.modulus), ring.modulus));
}

TEST_CASE("server state machine rejects out-of-order material") {
  QueueRandomness rng{{1, 2, 3, 4, 5, 6}};
  std::vector<Sharing> sharings;
  for (std::uint64_t v : {4ull, 5ull, 6ull}) {
    sharings.push_back(share({v, 0}, 3, kRing1000, rng));
  }

  ThreePartyServer server(1, 3, kRing1000);
  CHECK_THROWS_AS(server.start_round(1, 0), std::runtime_error);  // bundle not loaded

  std::vector<ShareView> views;
  for (const auto& s : sharings) views.push_back(view_for(s, 1));
  server.load_bundle(views);
  CHECK_THROWS_AS(server.load_bundle(views), std::runtime_error);
  CHECK_THROWS_AS(server.result_share(), std::runtime_error);   // round 1 pending
  CHECK_THROWS_AS(server.start_round(2, 0), std::runtime_error);  // wrong round

  const ScaledResidue y = server.start_round(1, 7);
  CHECK_THROWS_AS(server.finish_round(1, 1, y), std::runtime_error);  // self is not predecessor
  CHECK_THROWS_AS(server.finish_round(1, 2, y), std::runtime_error);  // successor is not predecessor
  CHECK_NOTHROW(server.finish_round(1, 0, y));
  CHECK_NOTHROW(server.result_share());
}

TEST_CASE("bundle must belong to the server") {
  QueueRandomness rng{{1, 2}};
  const Sharing s = share({4, 0}, 3, kRing1000, rng);
  ThreePartyServer server(0, 1 + 1, kRing1000);
  std::vector<ShareView> wrong{view_for(s, 2), view_for(s, 2)};
  CHECK_THROWS_AS(server.load_bundle(wrong), std::invalid_argument);
}

TEST_CASE("operation counts per product are deterministic") {
  const std::array<ScaledResidue, 4> factors{{{2, 0}, {3, 0}, {4, 0}, {5, 0}}};
  OpCounter first, second;
  SeededRandomness rng_a(1), rng_b(2);
  three_party_product(factors, kRing1000, rng_a, ZeroSharingMode::communication, &first);
  three_party_product(factors, kRing1000, rng_b, ZeroSharingMode::communication, &second);
  CHECK(first.adds == second.adds);
  CHECK(first.muls == second.muls);
  // 3 muls per server per round, rounds = n-1 local products across 3 servers.
  CHECK(first.muls == 3ull * 3 * (4 - 1));
}
