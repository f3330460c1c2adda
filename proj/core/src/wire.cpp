#include "mpcctrl/wire.hpp"

#include <sodium.h>

#include <stdexcept>

namespace mpcctrl {

const char* role_name(Role role) {
  switch (role) {
    case Role::distributor: return "distributor";
    case Role::server: return "server";
    case Role::collector: return "collector";
  }
  return "?";
}

PartyId PartyId::server(std::uint8_t index) {
  if (index == 0 || index == 0xFF) throw std::invalid_argument("PartyId: bad server index");
  return {Role::server, index};
}

std::uint8_t PartyId::wire_byte() const {
  switch (role) {
    case Role::distributor: return 0x00;
    case Role::server: return index;
    case Role::collector: return 0xFF;
  }
  return 0x00;
}

PartyId PartyId::from_wire_byte(std::uint8_t b) {
  if (b == 0x00) return distributor();
  if (b == 0xFF) return collector();
  return server(b);
}

OpCounts& OpCounts::operator+=(const OpCounts& other) {
  mod_adds += other.mod_adds;
  mod_muls += other.mod_muls;
  rng_draws += other.rng_draws;
  messages += other.messages;
  bytes += other.bytes;
  return *this;
}

OpCounts RunMetrics::total() const {
  OpCounts t;
  for (const auto& c : by_role) t += c;
  return t;
}

RunMetrics& RunMetrics::operator+=(const RunMetrics& other) {
  for (std::size_t i = 0; i < by_role.size(); ++i) by_role[i] += other.by_role[i];
  return *this;
}

namespace wire {

namespace {

void put_be(std::vector<std::uint8_t>& out, std::uint64_t v, std::size_t bytes) {
  for (std::size_t i = bytes; i-- > 0;) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_be(std::span<const std::uint8_t> in, std::size_t offset, std::size_t bytes) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bytes; ++i) v = (v << 8) | in[offset + i];
  return v;
}

void ensure_sodium() {
  if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
}

}  // namespace

std::size_t encoded_size(const Message& m) {
  return kHeaderSize + m.payload.size() * kPayloadEntrySize;
}

std::vector<std::uint8_t> encode_frame(const Message& m) {
  if (m.payload.size() > 0xFFFF) throw std::invalid_argument("wire: payload too long");
  for (const auto& r : m.payload)
    if (r.scale > 0xFF) throw std::invalid_argument("wire: scale exceeds one byte");
  std::vector<std::uint8_t> out;
  out.reserve(encoded_size(m));
  put_be(out, m.session, 8);
  put_be(out, m.step, 4);
  put_be(out, m.summand, 2);
  put_be(out, m.round, 2);
  out.push_back(m.sender.wire_byte());
  out.push_back(m.receiver.wire_byte());
  put_be(out, m.payload.size(), 2);
  for (const auto& r : m.payload) {
    put_be(out, r.value, 8);
    out.push_back(static_cast<std::uint8_t>(r.scale));
  }
  return out;
}

Message decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) throw std::runtime_error("wire: truncated frame");
  Message m;
  m.session = get_be(bytes, 0, 8);
  m.step = static_cast<std::uint32_t>(get_be(bytes, 8, 4));
  m.summand = static_cast<std::uint16_t>(get_be(bytes, 12, 2));
  m.round = static_cast<std::uint16_t>(get_be(bytes, 14, 2));
  m.sender = PartyId::from_wire_byte(bytes[16]);
  m.receiver = PartyId::from_wire_byte(bytes[17]);
  const std::size_t count = get_be(bytes, 18, 2);
  if (bytes.size() != kHeaderSize + count * kPayloadEntrySize)
    throw std::runtime_error("wire: frame length mismatch");
  m.payload.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t off = kHeaderSize + i * kPayloadEntrySize;
    m.payload.push_back(
        {get_be(bytes, off, 8), static_cast<std::uint32_t>(bytes[off + 8])});
  }
  return m;
}

std::vector<std::uint8_t> seal(std::span<const std::uint8_t> plain,
                               const std::array<std::uint8_t, 32>& key, std::uint64_t counter) {
  ensure_sodium();
  std::uint8_t nonce[crypto_aead_chacha20poly1305_ietf_NPUBBYTES] = {};
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<std::uint8_t>(counter >> (8 * i));
  std::vector<std::uint8_t> out(plain.size() + kSealOverhead);
  unsigned long long out_len = 0;
  crypto_aead_chacha20poly1305_ietf_encrypt(out.data(), &out_len, plain.data(), plain.size(),
                                            nullptr, 0, nullptr, nonce, key.data());
  out.resize(out_len);
  return out;
}

std::vector<std::uint8_t> open(std::span<const std::uint8_t> sealed,
                               const std::array<std::uint8_t, 32>& key, std::uint64_t counter) {
  ensure_sodium();
  if (sealed.size() < kSealOverhead) throw std::runtime_error("wire: sealed frame too short");
  std::uint8_t nonce[crypto_aead_chacha20poly1305_ietf_NPUBBYTES] = {};
  for (int i = 0; i < 8; ++i) nonce[4 + i] = static_cast<std::uint8_t>(counter >> (8 * i));
  std::vector<std::uint8_t> out(sealed.size() - kSealOverhead);
  unsigned long long out_len = 0;
  if (crypto_aead_chacha20poly1305_ietf_decrypt(out.data(), &out_len, nullptr, sealed.data(),
                                                sealed.size(), nullptr, 0, nonce,
                                                key.data()) != 0)
    throw std::runtime_error("wire: frame authentication failed");
  out.resize(out_len);
  return out;
}

}  // namespace wire
}  // namespace mpcctrl
