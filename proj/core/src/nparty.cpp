#include "mpcctrl/nparty.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mpcctrl {

SummandAssignment SummandAssignment::build(std::uint32_t factor_count) {
  if (factor_count < 2)
    throw std::invalid_argument("SummandAssignment: need at least 2 factors");
  if (factor_count > 7)  // (n+1)^n tuples get enumerated and stored
    throw std::invalid_argument("SummandAssignment: factor count too large to enumerate");
  const std::uint32_t parties = factor_count + 1;

  SummandAssignment a;
  a.factor_count_ = factor_count;
  a.sets_.resize(parties);

  // Enumerate base tuples (j_1..j_{n-1}, 0) via an odometer.
  std::vector<std::uint8_t> base(factor_count, 0);
  while (true) {
    std::uint32_t eligible = parties;  // sentinel
    for (std::uint32_t j = parties; j-- > 0;) {
      if (std::find(base.begin(), base.end(), static_cast<std::uint8_t>(j)) == base.end()) {
        eligible = j;
        break;
      }
    }
    // n+1 parties and n indices in the tuple: some party is always free.
    for (std::uint32_t shift = 0; shift < parties; ++shift) {
      std::vector<std::uint8_t> rotated(factor_count);
      for (std::uint32_t k = 0; k < factor_count; ++k)
        rotated[k] = static_cast<std::uint8_t>((base[k] + shift) % parties);
      a.sets_[(eligible + shift) % parties].push_back(std::move(rotated));
    }
    // Advance the first n-1 positions; the last stays fixed at 0.
    std::uint32_t pos = 0;
    for (; pos + 1 < factor_count; ++pos) {
      if (++base[pos] < parties) break;
      base[pos] = 0;
    }
    if (pos + 1 >= factor_count) break;
  }

  for (auto& set : a.sets_) std::sort(set.begin(), set.end());
  a.validate();
  return a;
}

const std::vector<std::vector<std::uint8_t>>& SummandAssignment::tuples_for(
    std::uint32_t party) const {
  if (party >= sets_.size()) throw std::invalid_argument("SummandAssignment: bad party");
  return sets_[party];
}

std::size_t SummandAssignment::total_tuples() const {
  std::size_t total = 0;
  for (const auto& s : sets_) total += s.size();
  return total;
}

void SummandAssignment::validate() const {
  const std::uint32_t parties = factor_count_ + 1;
  std::size_t expected = 1;
  for (std::uint32_t k = 0; k < factor_count_; ++k) expected *= parties;

  std::set<std::vector<std::uint8_t>> seen;
  for (std::uint32_t j = 0; j < parties; ++j) {
    for (const auto& t : sets_[j]) {
      if (t.size() != factor_count_)
        throw std::logic_error("SummandAssignment: tuple arity mismatch");
      for (auto idx : t) {
        if (idx >= parties) throw std::logic_error("SummandAssignment: index out of range");
        if (idx == j) throw std::logic_error("SummandAssignment: party lacks its own component");
      }
      if (!seen.insert(t).second)
        throw std::logic_error("SummandAssignment: tuple assigned twice");
      // Rotation closure: the shifted tuple must belong to the shifted party.
      std::vector<std::uint8_t> shifted(factor_count_);
      for (std::uint32_t k = 0; k < factor_count_; ++k)
        shifted[k] = static_cast<std::uint8_t>((t[k] + 1) % parties);
      const auto& next = sets_[(j + 1) % parties];
      if (!std::binary_search(next.begin(), next.end(), shifted))
        throw std::logic_error("SummandAssignment: rotation closure violated");
    }
  }
  if (seen.size() != expected)
    throw std::logic_error("SummandAssignment: tuples do not partition the index space");
}

ScaledResidue n_party_share(const SummandAssignment& assignment, std::uint32_t party,
                            std::span<const ShareView> factor_views, const ModRing& ring,
                            OpCounter* ops) {
  const std::uint32_t n = assignment.factor_count();
  if (factor_views.size() != n)
    throw std::invalid_argument("n_party_share: factor view count mismatch");
  for (const auto& v : factor_views) {
    if (v.party_count() != assignment.party_count() || v.owner() != party)
      throw std::invalid_argument("n_party_share: view does not match assignment");
  }

  std::uint32_t result_scale = 0;
  for (const auto& v : factor_views) result_scale += v.entries().front().scale;

  ScaledResidue acc{0, result_scale};
  for (const auto& tuple : assignment.tuples_for(party)) {
    ScaledResidue prod = factor_views[0].component(tuple[0]);
    for (std::uint32_t k = 1; k < n; ++k)
      prod = mod_mul(prod, factor_views[k].component(tuple[k]), ring);
    acc = mod_add(acc, prod, ring);
    if (ops) {
      ops->muls += n - 1;
      ops->adds += 1;
    }
  }
  return acc;
}

ScaledResidue n_party_product(std::span<const ScaledResidue> factors, const ModRing& ring,
                              Randomness& rng, OpCounter* ops) {
  const auto n = static_cast<std::uint32_t>(factors.size());
  const SummandAssignment assignment = SummandAssignment::build(n);
  const std::uint32_t parties = assignment.party_count();

  std::vector<std::vector<ShareView>> views_per_party(parties);
  for (const auto& factor : factors) {
    Sharing sharing = share(factor, parties, ring, rng, ops);
    for (std::uint32_t j = 0; j < parties; ++j)
      views_per_party[j].push_back(view_for(sharing, j));
  }

  std::vector<ScaledResidue> result_shares;
  result_shares.reserve(parties);
  for (std::uint32_t j = 0; j < parties; ++j)
    result_shares.push_back(n_party_share(assignment, j, views_per_party[j], ring, ops));

  return reconstruct(std::span<const ScaledResidue>(result_shares), ring, ops);
}

}  // namespace mpcctrl
