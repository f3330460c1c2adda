#include "mpcctrl/sharing.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

namespace mpcctrl {

std::uint32_t Sharing::scale() const {
  if (components.empty()) throw std::invalid_argument("Sharing: empty");
  const std::uint32_t s = components.front().scale;
  for (const auto& c : components)
    if (c.scale != s) throw std::invalid_argument("Sharing: mixed scales");
  return s;
}

ShareView::ShareView(std::uint32_t owner, std::uint32_t party_count,
                     std::vector<ScaledResidue> entries)
    : owner_(owner), party_count_(party_count), entries_(std::move(entries)) {
  if (party_count_ < 2 || owner_ >= party_count_ ||
      entries_.size() != party_count_ - 1)
    throw std::invalid_argument("ShareView: malformed view");
}

const ScaledResidue& ShareView::component(std::uint32_t index) const {
  if (index >= party_count_) throw std::invalid_argument("ShareView: index out of range");
  if (index == owner_)
    throw std::invalid_argument("ShareView: component withheld from this party");
  return index < owner_ ? entries_[index] : entries_[index - 1];
}

Sharing share(const ScaledResidue& secret, std::uint32_t parties, const ModRing& ring,
              Randomness& rng, OpCounter* ops) {
  if (parties < 2) throw std::invalid_argument("share: need at least 2 parties");
  if (secret.value >= ring.modulus) throw std::invalid_argument("share: secret out of range");
  Sharing sharing;
  sharing.components.resize(parties);
  std::uint64_t sum = 0;
  for (std::uint32_t j = 0; j + 1 < parties; ++j) {
    const std::uint64_t draw = rng.uniform(ring.modulus);
    sharing.components[j] = {draw, secret.scale};
    sum = add_mod(sum, draw, ring.modulus);
  }
  sharing.components[parties - 1] = {sub_mod(secret.value, sum, ring.modulus), secret.scale};
  if (ops) ops->adds += parties - 1;  // parties-2 accumulations + final subtraction
  return sharing;
}

ShareView view_for(const Sharing& sharing, std::uint32_t party) {
  const std::uint32_t n = sharing.party_count();
  if (party >= n) throw std::invalid_argument("view_for: party out of range");
  std::vector<ScaledResidue> entries;
  entries.reserve(n - 1);
  for (std::uint32_t i = 0; i < n; ++i)
    if (i != party) entries.push_back(sharing.components[i]);
  return ShareView(party, n, std::move(entries));
}

std::vector<ShareView> views_of(const Sharing& sharing) {
  std::vector<ShareView> views;
  const std::uint32_t n = sharing.party_count();
  views.reserve(n);
  for (std::uint32_t j = 0; j < n; ++j) views.push_back(view_for(sharing, j));
  return views;
}

ScaledResidue reconstruct(std::span<const ScaledResidue> components, const ModRing& ring,
                          OpCounter* ops) {
  if (components.empty()) throw std::invalid_argument("reconstruct: no components");
  ScaledResidue acc = components.front();
  for (std::size_t i = 1; i < components.size(); ++i)
    acc = mod_add(acc, components[i], ring);
  if (ops) ops->adds += components.size() - 1;
  return acc;
}

ScaledResidue reconstruct(const Sharing& sharing, const ModRing& ring) {
  return reconstruct(std::span<const ScaledResidue>(sharing.components), ring);
}

Sharing add_constant(Sharing sharing, const ScaledResidue& c, const ModRing& ring) {
  if (sharing.components.empty()) throw std::invalid_argument("add_constant: empty sharing");
  sharing.components[0] = mod_add(sharing.components[0], c, ring);
  return sharing;
}

Sharing add_sharings(const Sharing& a, const Sharing& b, const ModRing& ring) {
  if (a.party_count() != b.party_count())
    throw std::invalid_argument("add_sharings: party count mismatch");
  Sharing out;
  out.components.reserve(a.party_count());
  for (std::uint32_t i = 0; i < a.party_count(); ++i)
    out.components.push_back(mod_add(a.components[i], b.components[i], ring));
  return out;
}

Sharing mul_constant(const Sharing& a, const ScaledResidue& c, const ModRing& ring) {
  Sharing out;
  out.components.reserve(a.party_count());
  for (const auto& comp : a.components) out.components.push_back(mod_mul(comp, c, ring));
  return out;
}

const char* to_string(ZeroSharingMode mode) {
  switch (mode) {
    case ZeroSharingMode::communication: return "communication";
    case ZeroSharingMode::correlated_randomness: return "correlated-randomness";
  }
  return "?";
}

std::uint64_t zero_component(std::uint64_t r_own, std::uint64_t r_prev, std::uint64_t q) {
  return sub_mod(r_own, r_prev, q);
}

std::vector<ScaledResidue> zero_sharing(std::uint32_t parties, const ModRing& ring,
                                        Randomness& rng, std::uint32_t scale) {
  if (parties < 2) throw std::invalid_argument("zero_sharing: need at least 2 parties");
  std::vector<std::uint64_t> r(parties);
  for (auto& v : r) v = rng.uniform(ring.modulus);
  std::vector<ScaledResidue> out(parties);
  for (std::uint32_t j = 0; j < parties; ++j)
    out[j] = {zero_component(r[j], r[(j + parties - 1) % parties], ring.modulus), scale};
  return out;
}

namespace {

void ensure_sodium() {
  if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
}

// F(key, counter) reduced to [0, q) by rejection over the keystream words.
std::uint64_t prf_uniform(const std::array<std::uint8_t, 32>& key, std::uint64_t counter,
                          std::uint64_t q) {
  ensure_sodium();
  std::uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {};
  for (int i = 0; i < 8; ++i) nonce[i] = static_cast<std::uint8_t>(counter >> (8 * i));
  std::uint8_t stream[512] = {};
  crypto_stream_chacha20(stream, sizeof stream, nonce, key.data());
  const std::uint64_t rem = (UINT64_MAX % q + 1) % q;
  const std::uint64_t zone = UINT64_MAX - rem;
  for (std::size_t off = 0; off + 8 <= sizeof stream; off += 8) {
    std::uint64_t w = 0;
    std::memcpy(&w, stream + off, 8);
    if (w <= zone) return w % q;
  }
  throw std::runtime_error("prf_uniform: rejection sampling exhausted");
}

}  // namespace

std::array<std::uint8_t, 32> derive_party_key(const std::array<std::uint8_t, 32>& setup_key,
                                              std::uint32_t party) {
  ensure_sodium();
  std::array<std::uint8_t, 32> out{};
  std::uint8_t tag[8] = {'z', 's', 'k', 0,
                         static_cast<std::uint8_t>(party >> 24), static_cast<std::uint8_t>(party >> 16),
                         static_cast<std::uint8_t>(party >> 8), static_cast<std::uint8_t>(party)};
  crypto_generichash(out.data(), out.size(), tag, sizeof tag, setup_key.data(), setup_key.size());
  return out;
}

CorrelatedZeroShares::CorrelatedZeroShares(std::uint32_t party, std::uint32_t parties,
                                           const ModRing& ring,
                                           const std::array<std::uint8_t, 32>& setup_key)
    : party_(party), ring_(ring) {
  if (parties < 2 || party >= parties)
    throw std::invalid_argument("CorrelatedZeroShares: bad party index");
  key_own_ = derive_party_key(setup_key, party);
  key_succ_ = derive_party_key(setup_key, (party + 1) % parties);
}

std::uint64_t CorrelatedZeroShares::component(std::uint64_t counter) {
  if (last_counter_ && counter <= *last_counter_)
    throw std::runtime_error("CorrelatedZeroShares: stale counter (mask reuse)");
  last_counter_ = counter;
  const std::uint64_t own = prf_uniform(key_own_, counter, ring_.modulus);
  const std::uint64_t succ = prf_uniform(key_succ_, counter, ring_.modulus);
  return sub_mod(own, succ, ring_.modulus);
}

}  // namespace mpcctrl
