#include "mpcctrl/threeparty.hpp"

#include <array>
#include <stdexcept>

namespace mpcctrl {

ScaledResidue three_party_round(const ScaledResidue& succ, const ScaledResidue& pred,
                                const ShareView& factor, std::uint32_t party,
                                const ModRing& ring, OpCounter* ops) {
  if (factor.party_count() != 3)
    throw std::invalid_argument("three_party_round: factor must be (2,3)-shared");
  const ScaledResidue& f_succ = factor.component(cyclic_succ(party, 3));
  const ScaledResidue& f_pred = factor.component(cyclic_pred(party, 3));
  ScaledResidue acc = mod_mul(succ, f_succ, ring);
  acc = mod_add(acc, mod_mul(succ, f_pred, ring), ring);
  acc = mod_add(acc, mod_mul(pred, f_succ, ring), ring);
  if (ops) {
    ops->muls += 3;
    ops->adds += 2;
  }
  return acc;
}

ThreePartyServer::ThreePartyServer(std::uint32_t party, std::uint32_t factor_count,
                                   const ModRing& ring)
    : party_(party), factor_count_(factor_count), ring_(ring) {
  if (party_ >= 3) throw std::invalid_argument("ThreePartyServer: party must be 0..2");
  if (factor_count_ < 2)
    throw std::invalid_argument("ThreePartyServer: need at least 2 factors");
}

void ThreePartyServer::load_bundle(std::vector<ShareView> factor_views) {
  if (phase_ != Phase::awaiting_bundle)
    throw std::runtime_error("ThreePartyServer: bundle already loaded");
  if (factor_views.size() != factor_count_)
    throw std::invalid_argument("ThreePartyServer: bundle factor count mismatch");
  for (const auto& v : factor_views)
    if (v.party_count() != 3 || v.owner() != party_)
      throw std::invalid_argument("ThreePartyServer: view does not belong to this server");
  factors_ = std::move(factor_views);
  succ_ = factors_[0].component(cyclic_succ(party_, 3));
  pred_ = factors_[0].component(cyclic_pred(party_, 3));
  phase_ = rounds() == 0 ? Phase::final_ready : Phase::round_start;
}

ScaledResidue ThreePartyServer::start_round(std::uint32_t round, std::uint64_t zero_share,
                                            OpCounter* ops) {
  if (phase_ != Phase::round_start || round != next_round_)
    throw std::runtime_error("ThreePartyServer: round out of order");
  ScaledResidue y = three_party_round(succ_, pred_, factors_[round], party_, ring_, ops);
  y = mod_add(y, ScaledResidue{zero_share, y.scale}, ring_);
  if (ops) ops->adds += 1;
  // Own masked component: held by this party and, after the hand-off, by
  // the successor — so it carries the predecessor label locally.
  pred_ = y;
  phase_ = Phase::round_finish;
  return y;
}

void ThreePartyServer::finish_round(std::uint32_t round, std::uint32_t from_party,
                                    const ScaledResidue& value) {
  if (phase_ != Phase::round_finish || round != next_round_)
    throw std::runtime_error("ThreePartyServer: round out of order");
  if (from_party != cyclic_pred(party_, 3))
    throw std::runtime_error("ThreePartyServer: message from wrong predecessor");
  if (value.scale != pred_.scale)
    throw std::runtime_error("ThreePartyServer: hand-off scale mismatch");
  succ_ = value;
  ++next_round_;
  phase_ = next_round_ <= rounds() ? Phase::round_start : Phase::final_ready;
}

ScaledResidue ThreePartyServer::result_share(OpCounter* ops) {
  if (phase_ != Phase::final_ready)
    throw std::runtime_error("ThreePartyServer: rounds incomplete");
  ScaledResidue z =
      three_party_round(succ_, pred_, factors_[factor_count_ - 1], party_, ring_, ops);
  phase_ = Phase::done;
  return z;
}

ScaledResidue three_party_product(std::span<const ScaledResidue> factors, const ModRing& ring,
                                  Randomness& rng, ZeroSharingMode mode, OpCounter* ops) {
  const auto n = static_cast<std::uint32_t>(factors.size());
  if (n < 2) throw std::invalid_argument("three_party_product: need at least 2 factors");

  std::vector<std::vector<ShareView>> bundles(3);
  for (const auto& factor : factors) {
    Sharing sharing = share(factor, 3, ring, rng, ops);
    for (std::uint32_t j = 0; j < 3; ++j) bundles[j].push_back(view_for(sharing, j));
  }

  std::vector<ThreePartyServer> servers;
  servers.reserve(3);
  for (std::uint32_t j = 0; j < 3; ++j) {
    servers.emplace_back(j, n, ring);
    servers[j].load_bundle(std::move(bundles[j]));
  }

  std::array<std::uint8_t, 32> setup_key{};
  std::vector<CorrelatedZeroShares> prf_shares;
  if (mode == ZeroSharingMode::correlated_randomness) {
    for (std::uint32_t i = 0; i < 4; ++i) {
      const std::uint64_t w = rng.next_u64();
      for (std::uint32_t b = 0; b < 8; ++b)
        setup_key[i * 8 + b] = static_cast<std::uint8_t>(w >> (8 * b));
    }
    for (std::uint32_t j = 0; j < 3; ++j) prf_shares.emplace_back(j, 3, ring, setup_key);
  }

  for (std::uint32_t round = 1; round + 1 < n; ++round) {
    std::array<std::uint64_t, 3> masks{};
    if (mode == ZeroSharingMode::communication) {
      std::array<std::uint64_t, 3> r{};
      for (auto& v : r) v = rng.uniform(ring.modulus);
      for (std::uint32_t j = 0; j < 3; ++j)
        masks[j] = zero_component(r[j], r[cyclic_pred(j, 3)], ring.modulus);
    } else {
      for (std::uint32_t j = 0; j < 3; ++j) masks[j] = prf_shares[j].component(round);
    }
    std::array<ScaledResidue, 3> sent;
    for (std::uint32_t j = 0; j < 3; ++j) sent[j] = servers[j].start_round(round, masks[j], ops);
    for (std::uint32_t j = 0; j < 3; ++j)
      servers[j].finish_round(round, cyclic_pred(j, 3), sent[cyclic_pred(j, 3)]);
  }

  std::array<ScaledResidue, 3> result_shares;
  for (std::uint32_t j = 0; j < 3; ++j) result_shares[j] = servers[j].result_share(ops);
  return reconstruct(std::span<const ScaledResidue>(result_shares), ring, ops);
}

}  // namespace mpcctrl
