#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpcctrl/modring.hpp"
#include "mpcctrl/rng.hpp"
#include "mpcctrl/sharing.hpp"

namespace mpcctrl {

// Work split for the single-round n-factor product on n+1 servers. Every
// component-index tuple (j_1..j_n) of the expanded product is assigned to
// exactly one party that holds all the referenced components, i.e. one
// whose own index never appears in the tuple.
//
// Construction: fix the last index to 0, hand each base tuple to its
// highest-indexed eligible party, then close under cyclic rotation
// (tuple+l goes to party+l). Rotation spreads each base over all parties,
// so every party ends up with exactly (n+1)^(n-1) tuples.
class SummandAssignment {
 public:
  static SummandAssignment build(std::uint32_t factor_count);

  std::uint32_t factor_count() const { return factor_count_; }
  std::uint32_t party_count() const { return factor_count_ + 1; }

  // Tuples for one party, lexicographically sorted (accumulation order is
  // pinned for reproducible runs).
  const std::vector<std::vector<std::uint8_t>>& tuples_for(std::uint32_t party) const;

  std::size_t total_tuples() const;

  // Structural checks: exact partition of {0..n}^n, per-tuple party
  // exclusion, rotation closure. Throws on any violation.
  void validate() const;

 private:
  std::uint32_t factor_count_ = 0;
  std::vector<std::vector<std::vector<std::uint8_t>>> sets_;
};

// Party j's local share of the product: the sum over its assigned tuples
// of the per-factor component products. No interaction with any other
// server. The result scale is the sum of the factor scales.
ScaledResidue n_party_share(const SummandAssignment& assignment, std::uint32_t party,
                            std::span<const ShareView> factor_views, const ModRing& ring,
                            OpCounter* ops = nullptr);

// Offline single-call product: share every factor, run all n+1 parties,
// collect. Used by tests and the desk-scale secrecy enumerations.
ScaledResidue n_party_product(std::span<const ScaledResidue> factors, const ModRing& ring,
                              Randomness& rng, OpCounter* ops = nullptr);

}  // namespace mpcctrl
