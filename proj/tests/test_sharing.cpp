#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "mpcctrl/sharing.hpp"
#include "support.hpp"

using namespace mpcctrl;
using mpcctrl::test::QueueRandomness;

namespace {
const ModRing kRing11{11, 10};
const ModRing kRing7{7, 10};
const ModRing kRingBig{1'000'000'000'000ull, 10};

// Enumerates every randomness assignment of an n-party sharing (the n-1
// free draws) and calls fn with the resulting sharing.
template <typename Fn>
void for_all_sharings(std::uint64_t secret, std::uint32_t parties, const ModRing& ring, Fn fn) {
  std::vector<std::uint64_t> draws(parties - 1, 0);
  while (true) {
    QueueRandomness rng{std::vector<std::uint64_t>(draws.begin(), draws.end())};
    fn(share({secret, 0}, parties, ring, rng));
    std::size_t pos = 0;
    for (; pos < draws.size(); ++pos) {
      if (++draws[pos] < ring.modulus) break;
      draws[pos] = 0;
    }
    if (pos == draws.size()) break;
  }
}

}  // namespace

TEST_CASE("share then reconstruct, exhaustively at Q=11, n=3") {
  for (std::uint64_t secret = 0; secret < 11; ++secret) {
    std::size_t count = 0;
    for_all_sharings(secret, 3, kRing11, [&](const Sharing& sharing) {
      ++count;
      CHECK(reconstruct(sharing, kRing11) == ScaledResidue{secret, 0});
      // Any two views union to the full component set.
      const auto views = views_of(sharing);
      for (std::uint32_t a = 0; a < 3; ++a)
        for (std::uint32_t b = a + 1; b < 3; ++b) {
          std::vector<ScaledResidue> comps(3);
          for (std::uint32_t idx = 0; idx < 3; ++idx)
            comps[idx] = idx == views[a].owner() ? views[b].component(idx)
                                                 : views[a].component(idx);
          CHECK(reconstruct(std::span<const ScaledResidue>(comps), kRing11).value == secret);
        }
    });
    CHECK(count == 121);
  }
}

TEST_CASE("forced randomness pins the last component") {
  QueueRandomness rng{{3, 6}};
  const Sharing sharing = share({5, 0}, 3, kRing7, rng);
  CHECK(sharing.components[0] == ScaledResidue{3, 0});
  CHECK(sharing.components[1] == ScaledResidue{6, 0});
  CHECK(sharing.components[2] == ScaledResidue{3, 0});  // 5 - 9 mod 7
}

TEST_CASE("sharing zero still randomizes the components") {
  SeededRandomness rng(17);
  std::size_t all_zero = 0;
  for (int i = 0; i < 200; ++i) {
    const Sharing sharing = share({0, 0}, 3, kRingBig, rng);
    bool zero = true;
    for (const auto& c : sharing.components) zero = zero && c.value == 0;
    all_zero += zero;
    CHECK(reconstruct(sharing, kRingBig).value == 0);
  }
  CHECK(all_zero == 0);
}

TEST_CASE("share view ordering and lookup") {
  Sharing sharing;
  sharing.components = {{10, 0}, {20, 0}, {30, 0}};
  const ShareView v1 = view_for(sharing, 1);
  CHECK(v1.entries().size() == 2);
  CHECK(v1.entries()[0].value == 10);  // ascending component index
  CHECK(v1.entries()[1].value == 30);
  CHECK(v1.component(0).value == 10);
  CHECK(v1.component(2).value == 30);
  CHECK_THROWS_AS(v1.component(1), std::invalid_argument);
  CHECK_THROWS_AS(v1.component(3), std::invalid_argument);
}

TEST_CASE("add_constant") {
  QueueRandomness rng{{4, 1}};
  Sharing sharing = share({2, 0}, 3, kRing7, rng);
  CHECK(reconstruct(add_constant(sharing, {3, 0}, kRing7), kRing7).value == 5);
  CHECK(reconstruct(add_constant(sharing, {0, 0}, kRing7), kRing7).value == 2);
  // Wraps mod Q.
  QueueRandomness rng2{{4, 1}};
  Sharing top = share({6, 0}, 3, kRing7, rng2);
  CHECK(reconstruct(add_constant(top, {1, 0}, kRing7), kRing7).value == 0);
  CHECK_THROWS_AS(add_constant(sharing, {1, 3}, kRing7), std::invalid_argument);
}

TEST_CASE("add_sharings") {
  SeededRandomness rng(5);
  const Sharing zero = share({0, 0}, 4, kRingBig, rng);
  const Sharing a = share({123'456, 0}, 4, kRingBig, rng);
  CHECK(reconstruct(add_sharings(a, zero, kRingBig), kRingBig).value == 123'456);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = rng.uniform(kRingBig.modulus);
    const std::uint64_t y = rng.uniform(kRingBig.modulus);
    const Sharing sx = share({x, 0}, 3, kRingBig, rng);
    const Sharing sy = share({y, 0}, 3, kRingBig, rng);
    CHECK(reconstruct(add_sharings(sx, sy, kRingBig), kRingBig).value ==
          mpcctrl::test::oracle_add_mod(x, y, kRingBig.modulus));
  }
  // Wraparound witness.
  const Sharing hi = share({kRingBig.modulus - 1, 0}, 3, kRingBig, rng);
  const Sharing one = share({1, 0}, 3, kRingBig, rng);
  CHECK(reconstruct(add_sharings(hi, one, kRingBig), kRingBig).value == 0);
  CHECK_THROWS_AS(add_sharings(hi, zero, kRingBig), std::invalid_argument);
}

TEST_CASE("mul_constant") {
  SeededRandomness rng(6);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = rng.uniform(kRingBig.modulus);
    const Sharing sx = share({x, 1}, 3, kRingBig, rng);
    CHECK(reconstruct(mul_constant(sx, {1, 0}, kRingBig), kRingBig).value == x);
    CHECK(reconstruct(mul_constant(sx, {0, 0}, kRingBig), kRingBig).value == 0);
    const std::uint64_t c = rng.uniform(kRingBig.modulus);
    const Sharing scaled = mul_constant(sx, {c, 2}, kRingBig);
    CHECK(scaled.scale() == 3);  // scales add
    CHECK(reconstruct(scaled, kRingBig).value ==
          mpcctrl::test::oracle_mul_mod(x, c, kRingBig.modulus));
  }
}

TEST_CASE("single view distribution is identical for every secret (perfect secrecy)") {
  for (const std::uint32_t parties : {2u, 3u}) {
    // histogram[party][view tuple] per secret; all secrets must agree.
    std::vector<std::map<std::vector<std::uint64_t>, std::size_t>> reference(parties);
    for (std::uint64_t secret = 0; secret < 11; ++secret) {
      std::vector<std::map<std::vector<std::uint64_t>, std::size_t>> histogram(parties);
      for_all_sharings(secret, parties, kRing11, [&](const Sharing& sharing) {
        for (std::uint32_t j = 0; j < parties; ++j) {
          const ShareView view = view_for(sharing, j);
          std::vector<std::uint64_t> key;
          for (const auto& e : view.entries()) key.push_back(e.value);
          ++histogram[j][key];
        }
      });
      if (secret == 0) {
        reference = histogram;
      } else {
        for (std::uint32_t j = 0; j < parties; ++j) CHECK(histogram[j] == reference[j]);
      }
    }
  }
}

TEST_CASE("linearity holds exhaustively at Q=11") {
  // reconstruct(share(a) + share(b)) == a + b for every pair, one sharing each.
  for (std::uint64_t a = 0; a < 11; ++a)
    for (std::uint64_t b = 0; b < 11; ++b) {
      SeededRandomness rng(1000 * a + b);
      const Sharing sa = share({a, 0}, 3, kRing11, rng);
      const Sharing sb = share({b, 0}, 3, kRing11, rng);
      CHECK(reconstruct(add_sharings(sa, sb, kRing11), kRing11).value == (a + b) % 11);
    }
}

TEST_CASE("zero sharing sums to zero in both modes") {
  SeededRandomness rng(3);
  for (int i = 0; i < 10'000; ++i) {
    const auto components = zero_sharing(3, kRingBig, rng);
    std::uint64_t sum = 0;
    for (const auto& c : components) sum = add_mod(sum, c.value, kRingBig.modulus);
    CHECK(sum == 0);
  }
  std::array<std::uint8_t, 32> key{};
  key[0] = 42;
  CorrelatedZeroShares a(0, 3, kRingBig, key);
  CorrelatedZeroShares b(1, 3, kRingBig, key);
  CorrelatedZeroShares c(2, 3, kRingBig, key);
  for (std::uint64_t counter = 1; counter <= 10'000; ++counter) {
    const std::uint64_t sum = add_mod(
        add_mod(a.component(counter), b.component(counter), kRingBig.modulus),
        c.component(counter), kRingBig.modulus);
    CHECK(sum == 0);
  }
}

TEST_CASE("zero sharing marginals are uniform (exhaustive round randomness)") {
  // Enumerate the three round randoms; each a_j must be uniform and any
  // two of them jointly uniform.
  std::array<std::map<std::uint64_t, std::size_t>, 3> marginal;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> joint01;
  for (std::uint64_t r0 = 0; r0 < 11; ++r0)
    for (std::uint64_t r1 = 0; r1 < 11; ++r1)
      for (std::uint64_t r2 = 0; r2 < 11; ++r2) {
        QueueRandomness rng{{r0, r1, r2}};
        const auto a = zero_sharing(3, kRing11, rng);
        for (int j = 0; j < 3; ++j) ++marginal[j][a[j].value];
        ++joint01[{a[0].value, a[1].value}];
      }
  for (int j = 0; j < 3; ++j) {
    CHECK(marginal[j].size() == 11);
    for (const auto& [value, count] : marginal[j]) CHECK(count == 121);
  }
  CHECK(joint01.size() == 121);
  for (const auto& [pair, count] : joint01) CHECK(count == 11);
}

TEST_CASE("correlated zero shares reject counter reuse") {
  std::array<std::uint8_t, 32> key{};
  CorrelatedZeroShares shares(0, 3, kRing11, key);
  CHECK_NOTHROW(shares.component(5));
  CHECK_THROWS_AS(shares.component(5), std::runtime_error);
  CHECK_THROWS_AS(shares.component(4), std::runtime_error);
  CHECK_NOTHROW(shares.component(6));
}

TEST_CASE("reconstruct rejects mixed scales") {
  std::vector<ScaledResidue> comps{{1, 0}, {2, 1}};
  CHECK_THROWS_AS(reconstruct(std::span<const ScaledResidue>(comps), kRing11),
                  std::invalid_argument);
}
