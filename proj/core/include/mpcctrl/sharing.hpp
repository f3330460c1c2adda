#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mpcctrl/modring.hpp"
#include "mpcctrl/rng.hpp"

namespace mpcctrl {

// Additive (2,n) sharing: n components summing to the secret mod Q. Party
// j's share is every component except the one carrying its own index, so
// any two parties jointly hold a complete set while a single share is
// uniform noise.
struct Sharing {
  std::vector<ScaledResidue> components;

  std::uint32_t party_count() const { return static_cast<std::uint32_t>(components.size()); }
  std::uint32_t scale() const;  // common scale; throws if components disagree
};

// The share handed to one party: components ascending by index with the
// party's own index withheld.
class ShareView {
 public:
  ShareView(std::uint32_t owner, std::uint32_t party_count, std::vector<ScaledResidue> entries);

  std::uint32_t owner() const { return owner_; }
  std::uint32_t party_count() const { return party_count_; }
  const std::vector<ScaledResidue>& entries() const { return entries_; }

  // Lookup by absolute component index. Asking for the withheld component
  // throws: the protocol logic must never need it.
  const ScaledResidue& component(std::uint32_t index) const;

 private:
  std::uint32_t owner_;
  std::uint32_t party_count_;
  std::vector<ScaledResidue> entries_;
};

// Draws parties-1 components uniformly, fixes the last so the sum hits the
// secret.
Sharing share(const ScaledResidue& secret, std::uint32_t parties, const ModRing& ring,
              Randomness& rng, OpCounter* ops = nullptr);

ShareView view_for(const Sharing& sharing, std::uint32_t party);
std::vector<ShareView> views_of(const Sharing& sharing);

// Sums a complete component set. Mixed scales throw.
ScaledResidue reconstruct(std::span<const ScaledResidue> components, const ModRing& ring,
                          OpCounter* ops = nullptr);
ScaledResidue reconstruct(const Sharing& sharing, const ModRing& ring);

// Local homomorphic primitives.
Sharing add_constant(Sharing sharing, const ScaledResidue& c, const ModRing& ring);
Sharing add_sharings(const Sharing& a, const Sharing& b, const ModRing& ring);
Sharing mul_constant(const Sharing& a, const ScaledResidue& c, const ModRing& ring);

enum class ZeroSharingMode : std::uint8_t { communication, correlated_randomness };
const char* to_string(ZeroSharingMode mode);

// Zero-sharing from fresh round randomness r_0..r_{n-1}: a_j = r_j - r_{j-1}
// telescopes to zero around the ring. This is the construction the
// communication mode realizes by exchanging the r values between
// neighbours; every component is marginally uniform and any n-1 of them
// are jointly uniform.
std::vector<ScaledResidue> zero_sharing(std::uint32_t parties, const ModRing& ring,
                                        Randomness& rng, std::uint32_t scale = 0);
std::uint64_t zero_component(std::uint64_t r_own, std::uint64_t r_prev, std::uint64_t q);

// Communication-free zero shares: party j evaluates a keyed PRF under its
// own key and its successor's key, a_j = F(k_j, c) - F(k_{j+1}, c), on a
// counter all parties agree on. Keys circulate once at setup. Counters
// must strictly increase; reusing one throws, a fresh mask per protocol
// round is a hard precondition.
class CorrelatedZeroShares {
 public:
  CorrelatedZeroShares(std::uint32_t party, std::uint32_t parties, const ModRing& ring,
                       const std::array<std::uint8_t, 32>& setup_key);

  std::uint32_t party() const { return party_; }
  std::uint64_t component(std::uint64_t counter);

 private:
  std::uint32_t party_;
  ModRing ring_;
  std::array<std::uint8_t, 32> key_own_;
  std::array<std::uint8_t, 32> key_succ_;
  std::optional<std::uint64_t> last_counter_;
};

// Per-party PRF key for the correlated zero-sharing key ring.
std::array<std::uint8_t, 32> derive_party_key(const std::array<std::uint8_t, 32>& setup_key,
                                              std::uint32_t party);

}  // namespace mpcctrl
