#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpcctrl/modring.hpp"
#include "mpcctrl/rng.hpp"
#include "mpcctrl/sharing.hpp"

namespace mpcctrl {

inline std::uint32_t cyclic_succ(std::uint32_t j, std::uint32_t n) { return (j + 1) % n; }
inline std::uint32_t cyclic_pred(std::uint32_t j, std::uint32_t n) { return (j + n - 1) % n; }

// One local multiplication round at party j of the three-server product.
// (succ, pred) are the party's two components of the running product
// sharing, labeled by the component indices j+1 and j-1; the result is the
// party's component of the sharing extended by the next factor:
//
//   succ * f[j+1] + succ * f[j-1] + pred * f[j+1]
//
// Summed over the three parties this covers each component pair exactly
// once, so the three outputs again share the product.
ScaledResidue three_party_round(const ScaledResidue& succ, const ScaledResidue& pred,
                                const ShareView& factor, std::uint32_t party,
                                const ModRing& ring, OpCounter* ops = nullptr);

// Per-server state machine for one product instance. Rounds are lock-step:
// material arriving out of order or from the wrong neighbour throws.
//
// Hand-off convention: the masked component received from the predecessor
// becomes the successor-labeled half of the pair and the component this
// server produced itself the predecessor-labeled half. (The component
// produced by party j is held by parties j and j+1, hence missing at
// party j-1; relabeling the producer index to its predecessor restores
// the view-of-everything-but-own-index form the round formula needs. The
// worked two-factor expansion in the tests pins this.)
class ThreePartyServer {
 public:
  ThreePartyServer(std::uint32_t party, std::uint32_t factor_count, const ModRing& ring);

  std::uint32_t party() const { return party_; }
  std::uint32_t factor_count() const { return factor_count_; }
  std::uint32_t rounds() const { return factor_count_ - 2; }

  // Distribution: one view per factor, protocol order.
  void load_bundle(std::vector<ShareView> factor_views);

  // Round k in [1, rounds()]: fold in factor k, mask with the fresh
  // zero-share component, return the value to hand to the successor.
  ScaledResidue start_round(std::uint32_t round, std::uint64_t zero_share,
                            OpCounter* ops = nullptr);

  // Accept the masked component arriving from the predecessor for round k.
  void finish_round(std::uint32_t round, std::uint32_t from_party, const ScaledResidue& value);

  // After the last hand-off: fold in the final factor, producing this
  // server's component of the (3,3) result sharing.
  ScaledResidue result_share(OpCounter* ops = nullptr);

 private:
  enum class Phase { awaiting_bundle, round_start, round_finish, final_ready, done };

  std::uint32_t party_;
  std::uint32_t factor_count_;
  ModRing ring_;
  std::vector<ShareView> factors_;
  ScaledResidue succ_{};
  ScaledResidue pred_{};
  std::uint32_t next_round_ = 1;
  Phase phase_ = Phase::awaiting_bundle;
};

// Offline single-call product over injected randomness: share the factors,
// drive the three servers lock-step, collect. The zero-sharing mode only
// decides where the masks come from; outputs are exact either way.
ScaledResidue three_party_product(std::span<const ScaledResidue> factors, const ModRing& ring,
                                  Randomness& rng,
                                  ZeroSharingMode mode = ZeroSharingMode::communication,
                                  OpCounter* ops = nullptr);

}  // namespace mpcctrl
